#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace anglelab::detail {

inline int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hw, 1u, 8u));
}

/// Fork/join helper: runs fn(worker_index, worker_count) on `count` workers.
/// Workers conventionally take outer-loop indices round-robin by worker index
/// and reduce into worker-local state; the caller merges after the join with
/// an order-independent (or tie-broken) reduction so results do not depend on
/// the worker count.
template <class Fn>
void run_workers(int count, Fn&& fn) {
    if (count <= 1) {
        fn(0, 1);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(count) - 1);
    for (int t = 1; t < count; ++t) {
        pool.emplace_back([&fn, t, count] { fn(t, count); });
    }
    fn(0, count);
    for (auto& th : pool) th.join();
}

}  // namespace anglelab::detail

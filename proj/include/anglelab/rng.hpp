#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace anglelab {

/// Counter-based 64-bit-state generator (splitmix64). All randomness in the
/// library flows through instances of this type seeded from a single value,
/// so every run is reproducible from the seed alone.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double next_unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; consumes exactly two raw draws.
    double next_gaussian() {
        double u1 = 1.0 - next_unit();  // (0, 1]
        double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    /// Approximately uniform integer in [0, bound); bound > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    /// m distinct values sampled from {1, ..., n}, sorted ascending.
    std::vector<long> sample_subset(long n, long m) {
        std::vector<long> pool(static_cast<std::size_t>(n));
        for (long i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
        for (long i = 0; i < m; ++i) {
            const auto j = i + static_cast<long>(next_below(static_cast<std::uint64_t>(n - i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
        }
        std::vector<long> out(pool.begin(), pool.begin() + m);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::uint64_t state_;
};

}  // namespace anglelab

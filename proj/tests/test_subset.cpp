#include "anglelab/subset.hpp"

#include "anglelab/errors.hpp"
#include "anglelab/rng.hpp"

#include <doctest.h>

#include <vector>

using namespace anglelab;

TEST_CASE("equivalent triples in a full interval") {
    const auto pair = find_equivalent_triples({1, 2, 3, 4, 5}, 5);
    REQUIRE(pair.has_value());
    CHECK(pair->s == std::array<long, 3>{2, 3, 4});
    CHECK(pair->t == std::array<long, 3>{1, 2, 3});
    CHECK(pair->shift == 1);
}

TEST_CASE("difference-unique sets have no equivalent triples") {
    CHECK_FALSE(find_equivalent_triples({1, 2, 4}, 8).has_value());
    CHECK_FALSE(find_equivalent_triples({1, 2, 3}, 3).has_value());
    CHECK_FALSE(find_equivalent_triples({1, 2, 5, 11}, 11).has_value());
}

TEST_CASE("equivalent triple pairs satisfy their structural invariants") {
    SplitMix64 rng(51);
    for (int trial = 0; trial < 300; ++trial) {
        const long n = 5 + static_cast<long>(rng.next_below(20));
        const long m = 3 + static_cast<long>(rng.next_below(static_cast<std::uint64_t>(n - 2)));
        const auto subset = rng.sample_subset(n, m);
        const auto pair = find_equivalent_triples(subset, n);
        if (!pair) continue;
        CHECK(pair->shift != 0);
        CHECK(pair->s[0] < pair->s[1]);
        CHECK(pair->s[1] < pair->s[2]);
        CHECK(pair->t[0] < pair->t[1]);
        CHECK(pair->t[1] < pair->t[2]);
        for (int i = 0; i < 3; ++i) {
            CHECK(pair->s[static_cast<std::size_t>(i)] - pair->t[static_cast<std::size_t>(i)] ==
                  pair->shift);
        }
    }
}

TEST_CASE("the pigeonhole bound is complete for small n") {
    // Every subset with C(|Q|,2) >= 2n-1 must contain an equivalent pair.
    for (long n = 3; n <= 10; ++n) {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<long> subset;
            for (long i = 0; i < n; ++i) {
                if (mask & (1u << i)) subset.push_back(i + 1);
            }
            const auto m = static_cast<std::uint64_t>(subset.size());
            if (binomial2(m) < 2 * static_cast<std::uint64_t>(n) - 1) continue;
            CHECK(find_equivalent_triples(subset, n).has_value());
        }
    }
}

TEST_CASE("out-of-range subset elements are rejected") {
    CHECK_THROWS_AS(find_equivalent_triples({0, 1, 2}, 5), InvalidInput);
    CHECK_THROWS_AS(find_equivalent_triples({1, 2, 9}, 5), InvalidInput);
}

TEST_CASE("witness on the first five spiral points") {
    const auto config = spiral_config(5, make_real("0.1", 128), 128);
    const auto witness = repeated_angle_witness(config, {1, 2, 3, 4, 5}, 1e-9);
    REQUIRE(witness.has_value());
    CHECK(witness->pair.s == std::array<long, 3>{2, 3, 4});
    CHECK(witness->pair.t == std::array<long, 3>{1, 2, 3});
    CHECK(witness->discrepancy < Real(1e-9));
}

TEST_CASE("witness search reports NotFound on a Sidon subset") {
    const auto config = spiral_config(11, make_real("0.1", 128), 128);
    CHECK_FALSE(repeated_angle_witness(config, {1, 2, 5, 11}, 1e-9).has_value());
}

TEST_CASE("all three vertex angles match for equivalent triples") {
    const unsigned bits = 128;
    const auto config = spiral_config(24, make_real("0.1", bits), bits);
    PrecisionGuard guard(bits);
    const Real tol(1e-9);
    SplitMix64 rng(61);
    int found = 0;
    while (found < 30) {
        const auto subset = rng.sample_subset(24, 9);
        const auto pair = find_equivalent_triples(subset, 24);
        if (!pair) continue;
        ++found;
        const auto point = [&](long j) { return config.points[static_cast<std::size_t>(j - 1)]; };
        for (int pos = 0; pos < 3; ++pos) {
            const int a = (pos + 1) % 3, b = (pos + 2) % 3;
            const Real angle_s = angle_value(point(pair->s[static_cast<std::size_t>(pos)]),
                                             point(pair->s[static_cast<std::size_t>(a)]),
                                             point(pair->s[static_cast<std::size_t>(b)]), bits)
                                     .radians;
            const Real angle_t = angle_value(point(pair->t[static_cast<std::size_t>(pos)]),
                                             point(pair->t[static_cast<std::size_t>(a)]),
                                             point(pair->t[static_cast<std::size_t>(b)]), bits)
                                     .radians;
            CHECK(abs(angle_s - angle_t) < tol);
        }
    }
}

TEST_CASE("threshold values") {
    CHECK(rgen_threshold(1) == 2);
    CHECK(rgen_threshold(5) == 5);
    CHECK(rgen_threshold(12) == 8);
    CHECK(rgen_threshold(100) == 21);
    CHECK(rgen_threshold_bound(100) == 21);
}

TEST_CASE("threshold stays within its closed-form bound for every n up to a million") {
    // Incremental oracles: both the smallest m with C(m,2) >= 2n-1 and the
    // smallest k with (2k-1)^2 >= 16n are nondecreasing in n, so one sweep
    // computes them for every n.
    long m = 0, k = 1;
    std::size_t violations = 0;
    for (long n = 1; n <= 1'000'000; ++n) {
        const auto target = 2 * static_cast<unsigned long long>(n) - 1;
        while (binomial2(static_cast<std::uint64_t>(m)) < target) ++m;
        while (static_cast<unsigned long long>(2 * k - 1) * static_cast<unsigned long long>(2 * k - 1) <
               16 * static_cast<unsigned long long>(n)) {
            ++k;
        }
        if (m > k) ++violations;
    }
    CHECK(violations == 0);

    for (const long n : {1L, 2L, 5L, 12L, 100L, 4096L, 999983L}) {
        CHECK(rgen_threshold(n) <= rgen_threshold_bound(n));
    }
}

TEST_CASE("three spread points form a distinct-angle subset") {
    const unsigned bits = 128;
    const std::vector<RealPoint2> pts = {
        RealPoint2{make_real(0.0, bits), make_real(0.0, bits), bits},
        RealPoint2{make_real(1.0, bits), make_real(0.0, bits), bits},
        RealPoint2{make_real(0.3, bits), make_real(0.8, bits), bits}};
    const auto result =
        search_distinct_angle_subset(pts, bits, SubsetSearchStrategy::exhaustive);
    CHECK(result.indices == std::vector<long>{1, 2, 3});
    CHECK(result.certificate.max_multiplicity == 1);
}

TEST_CASE("an equilateral triangle caps out at two points") {
    const unsigned bits = 128;
    PrecisionGuard guard(bits);
    const std::vector<RealPoint2> triangle = {
        RealPoint2{Real(0), Real(0), bits}, RealPoint2{Real(1), Real(0), bits},
        RealPoint2{Real(1) / 2, sqrt(Real(3)) / 2, bits}};
    for (const auto strategy : {SubsetSearchStrategy::greedy, SubsetSearchStrategy::exhaustive}) {
        const auto result = search_distinct_angle_subset(triangle, bits, strategy);
        CHECK(result.indices.size() == 2);
        CHECK(result.certificate.max_multiplicity <= 1);
    }
}

TEST_CASE("exhaustive subset search on a spiral stays below the forcing threshold") {
    const auto config = spiral_config(12, make_real("0.1", 128), 128);
    const auto result = search_distinct_angle_subset(config.points, config.precision_bits,
                                                     SubsetSearchStrategy::exhaustive);
    CHECK_FALSE(result.budget_exhausted);
    CHECK(result.indices.size() < static_cast<std::size_t>(rgen_threshold(12)));
    CHECK(result.certificate.max_multiplicity <= 1);

    const auto greedy = search_distinct_angle_subset(config.points, config.precision_bits,
                                                     SubsetSearchStrategy::greedy);
    CHECK(greedy.indices.size() <= result.indices.size());
}

TEST_CASE("exhaustive search is limited to 15 points") {
    const auto config = spiral_config(16, make_real("0.1", 128), 128);
    CHECK_THROWS_AS(search_distinct_angle_subset(config.points, config.precision_bits,
                                                 SubsetSearchStrategy::exhaustive),
                    InvalidParameter);
}

TEST_CASE("budget exhaustion returns the best-so-far subset with a flag") {
    const auto config = spiral_config(12, make_real("0.1", 128), 128);
    const auto result = search_distinct_angle_subset(config.points, config.precision_bits,
                                                     SubsetSearchStrategy::exhaustive, 10);
    CHECK(result.budget_exhausted);
    CHECK(result.candidates_tested == 10);
    CHECK(result.certificate.max_multiplicity <= 1);
}

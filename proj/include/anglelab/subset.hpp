#pragma once

#include "anglelab/census.hpp"
#include "anglelab/configurations.hpp"

#include <array>
#include <optional>
#include <vector>

namespace anglelab {

/// Two distinct strictly-increasing index triples with a common shift:
/// s_i - t_i = shift for all i, shift != 0.
struct IndexTriplePair {
    std::array<long, 3> s{};
    std::array<long, 3> t{};
    long shift = 0;
};

/// Buckets the ordered pairs (x, y), x > y, of Q by difference x - y and
/// returns the triple pair of the smallest difference that has at least three
/// pairs (taking the three pairs with smallest first elements). Succeeds
/// whenever C(|Q|, 2) >= 2n - 1. Elements of Q must lie in [1, n].
std::optional<IndexTriplePair> find_equivalent_triples(const std::vector<long>& q, long n);

struct RepeatedAngleWitness {
    IndexTriplePair pair;
    Real angle_s;
    Real angle_t;
    Real discrepancy;     // |angle_s - angle_t|, below the tolerance
    int vertex_position;  // 0..2, the best-matching vertex slot
};

/// Finds equivalent index triples in the subset and evaluates both point
/// triples' vertex angles, paired position by position. Returns the
/// best-matching vertex pair. Throws WitnessDiscrepancyTooLarge when even the
/// best pair differs by more than the tolerance (a precision failure; the
/// rotate-and-dilate map makes the true values equal).
std::optional<RepeatedAngleWitness> repeated_angle_witness(const SpiralConfig& config,
                                                           const std::vector<long>& subset,
                                                           double tolerance);

/// Smallest m with C(m, 2) >= 2n - 1. Always at most ceil(2 sqrt(n) + 1/2).
long rgen_threshold(long n);

/// ceil(2 sqrt(n) + 1/2), computed exactly (smallest k with (2k-1)^2 >= 16n).
long rgen_threshold_bound(long n);

enum class SubsetSearchStrategy { greedy, exhaustive };

struct SubsetSearchResult {
    std::vector<long> indices;  // 1-based, ascending
    CensusReport certificate;   // census of the subset; max multiplicity <= 1
    bool budget_exhausted = false;
    std::size_t candidates_tested = 0;
};

/// Largest found subset whose census has every angle-class multiplicity 1.
/// Greedy adds points in input order, rejecting any point that repeats an
/// angle; exhaustive (n <= 15) scans subsets by decreasing size and returns
/// the lexicographically smallest maximum one.
SubsetSearchResult search_distinct_angle_subset(const std::vector<RealPoint2>& points,
                                                unsigned bits, SubsetSearchStrategy strategy,
                                                std::size_t budget = 1'000'000,
                                                double tolerance = 1e-9);

}  // namespace anglelab

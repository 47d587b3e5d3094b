#pragma once

#include "anglelab/configurations.hpp"
#include "anglelab/geometry.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace anglelab {

/// One distinct-angle class of a census, ascending by representative value.
struct AngleClass {
    Real representative;  // smallest member value
    Real lo, hi;          // run extremes (identical in exact mode)
    std::size_t multiplicity = 0;
    std::optional<AngleKey> key;  // exact mode only
};

struct CensusReport {
    std::size_t n_points = 0;
    std::string mode;  // "exact" or "numeric"
    std::optional<double> tolerance;  // numeric only
    std::size_t distinct_count = 0;
    std::map<std::size_t, std::size_t> multiplicity_histogram;  // multiplicity -> classes
    std::size_t max_multiplicity = 0;
    std::size_t triples_enumerated = 0;
    std::size_t degenerate_skipped = 0;  // lenient mode
    std::optional<double> min_interclass_gap;
    unsigned precision_bits = kDefaultPrecisionBits;
    bool pinned = false;  // triples restricted to those containing the anchor
    std::vector<AngleClass> classes;
};

struct CensusOptions {
    double tolerance = 1e-9;  // numeric merge gap threshold, radians
    bool lenient = false;     // skip and count collinear triples instead of failing
    std::size_t triple_cap = kDefaultTripleCap;
    int threads = 0;  // 0 = auto
};

/// Enumerates all C(n,3) unordered triples and groups their 3 vertex angles
/// into distinct classes: by exact canonical key, or by sorting values and
/// merging runs with adjacent gaps below the tolerance.
CensusReport census_bruteforce(const std::vector<RationalPoint2>& points,
                               const CensusOptions& options = {});
CensusReport census_bruteforce(const std::vector<RealPoint2>& points, unsigned bits,
                               const CensusOptions& options = {});

/// Census restricted to the C(n-1,2) triples containing the anchor point
/// (index 1 of the spiral). Its distinct count is bounded by 3*C(n-1,2).
CensusReport census_pinned(const std::vector<RealPoint2>& points, unsigned bits,
                           const CensusOptions& options = {});
CensusReport census_pinned_spiral(const SpiralConfig& config, const CensusOptions& options = {});

/// Triple of d-dimensional vectors with per-coordinate minimum 0.
struct ReducedTriple {
    std::array<LatticePoint, 3> points;

    friend bool operator==(const ReducedTriple&, const ReducedTriple&) = default;
    friend auto operator<=>(const ReducedTriple&, const ReducedTriple&) = default;
};

/// Canonical representative of the triple's translation class: subtracts the
/// per-coordinate minimum. Idempotent; translation-equivalent triples map to
/// the same output.
ReducedTriple reduce_triple(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c);

/// Number of distinct reduced triples over all ordered triples (repetition
/// allowed) of the configuration's points. Equals ((r+1)^3 - r^3)^d on the
/// full grid {0..r}^d.
std::size_t count_translation_classes(const std::vector<LatticePoint>& points,
                                      std::size_t ordered_triple_cap = kDefaultTripleCap);

/// ((r+1)^3 - r^3)^d, exactly.
BigInt n_r_d(std::int64_t r, int d);

struct ProjectionPropertyReport {
    std::size_t trials = 0;
    double max_relative_error = 0.0;
    std::array<std::size_t, 4> worst_quadruple{};  // indices (p1, p2, p3, p4)
};

/// Samples difference-equal quadruples p1 - p2 = p3 - p4 from the source and
/// compares the projected distances |T p1 - T p2| and |T p3 - T p4|.
/// Throws NoQuadruplesFound when the source admits no nontrivial quadruple.
ProjectionPropertyReport verify_projection_property(const std::vector<LatticePoint>& source,
                                                    const ProjectionFrame& frame,
                                                    std::size_t trials, std::uint64_t seed);

}  // namespace anglelab

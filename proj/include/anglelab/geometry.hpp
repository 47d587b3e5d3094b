#pragma once

#include "anglelab/numeric.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace anglelab {

/// Planar point with exact rational coordinates.
struct RationalPoint2 {
    Rational x;
    Rational y;

    friend bool operator==(const RationalPoint2&, const RationalPoint2&) = default;
};

/// Planar point in extended-precision floating arithmetic. Coordinates are
/// finite; derived quantities are computed at `precision_bits`.
struct RealPoint2 {
    Real x;
    Real y;
    unsigned precision_bits = kDefaultPrecisionBits;
};

/// Canonical exact identity of an undirected angle between rational points:
/// the sign of the dot product plus the reduced fraction cos^2 = d^2/(|u|^2 |v|^2).
/// Invariant under translation of all three points and under positive rational
/// scaling of either ray about the vertex.
struct AngleKey {
    int dot_sign = 0;     // -1, 0, +1
    Rational cos_sq = 0;  // reduced, in [0, 1]; zero iff dot_sign == 0

    BigInt cos_sq_num() const { return numerator(cos_sq); }
    BigInt cos_sq_den() const { return denominator(cos_sq); }

    friend bool operator==(const AngleKey&, const AngleKey&) = default;
};

/// Orders keys by the angle they denote, ascending in (0, pi).
bool angle_key_less(const AngleKey& a, const AngleKey& b);

/// Undirected angle value strictly inside (0, pi).
struct AngleValue {
    Real radians;
    unsigned precision_bits = kDefaultPrecisionBits;
};

/// Sign of the 2x2 determinant of (q-p, r-p), computed exactly.
/// 0 iff the three points are collinear.
int orientation(const RationalPoint2& p, const RationalPoint2& q, const RationalPoint2& r);

/// True iff the in-circle determinant of the four points vanishes exactly,
/// i.e. the points lie on a common circle (or line).
bool concyclic(const RationalPoint2& p, const RationalPoint2& q, const RationalPoint2& r,
               const RationalPoint2& s);

/// Exact canonical key of the angle at `vertex` spanned by rays to a and b.
/// Throws DegenerateAngle when a or b coincides with the vertex or the triple
/// is collinear.
AngleKey angle_key_exact(const RationalPoint2& vertex, const RationalPoint2& a,
                         const RationalPoint2& b);

/// Numeric value in (0, pi) of the angle a key denotes.
Real angle_from_key(const AngleKey& key, unsigned bits);

/// arccos of the clamped normalized dot product at `bits` precision.
/// Throws DegenerateAngle when the value comes within `margin` of 0 or pi
/// (default margin 2^(8-bits)).
AngleValue angle_value(const RealPoint2& vertex, const RealPoint2& a, const RealPoint2& b,
                       unsigned bits);
AngleValue angle_value(const RealPoint2& vertex, const RealPoint2& a, const RealPoint2& b,
                       unsigned bits, const Real& margin);

/// Vertex angles at p, q, r, in that order. Values sum to pi.
std::array<AngleKey, 3> angle_keys_of_triple(const RationalPoint2& p, const RationalPoint2& q,
                                             const RationalPoint2& r);
std::array<AngleValue, 3> angle_values_of_triple(const RealPoint2& p, const RealPoint2& q,
                                                 const RealPoint2& r, unsigned bits);

/// General-position verdict for a planar point set.
///
/// Margins are scale-free normalized determinants in [0, 1]. Collinearity of
/// (p, q, r): |cross(q-p, r-p)| / (|q-p| |r-p|), the determinant over the
/// product of its row norms. Concyclicity of (a, b, c, l): the collinearity
/// margin of a, b, c inverted about l (the quadruple lies on a circle exactly
/// when the inverted triple lies on a line). Witnesses are the tuples
/// attaining the minima.
struct GeneralPositionReport {
    bool ok = false;
    bool collinearity_ok = false;
    bool concyclicity_ok = false;
    double min_collinearity_margin = 0.0;
    double min_concyclicity_margin = 0.0;
    std::optional<std::array<std::size_t, 3>> collinearity_witness;
    std::optional<std::array<std::size_t, 4>> concyclicity_witness;
    std::size_t triples_checked = 0;
    std::size_t quadruples_checked = 0;
    std::string mode;  // "exact" or "numeric"
    double margin = 0.0;
};

/// Exact verdict: ok iff no orientation determinant and no in-circle
/// determinant vanishes. Margins are still reported numerically.
GeneralPositionReport general_position_exact(const std::vector<RationalPoint2>& points,
                                             int threads = 0);

/// Numeric verdict: ok iff every normalized margin strictly exceeds `margin`.
/// A certificate of margin, not a proof.
GeneralPositionReport general_position_numeric(const std::vector<RealPoint2>& points,
                                               unsigned bits, double margin, int threads = 0);

/// Point of {0,...,r}^d with integer coordinates.
using LatticePoint = std::vector<std::int64_t>;

/// True iff b-a and c-a are linearly dependent (all 2x2 minors vanish).
bool lattice_collinear(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c);

/// True iff the four points are coplanar and their in-plane in-circle
/// determinant vanishes (common circle or line), evaluated exactly.
bool lattice_concyclic(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c,
                       const LatticePoint& d);

struct LatticePositionReport {
    bool collinear_free = false;
    bool concyclic_free = false;
    std::size_t collinear_triples = 0;
    std::size_t concyclic_quadruples = 0;
    std::optional<std::array<std::size_t, 3>> collinear_witness;
    std::optional<std::array<std::size_t, 4>> concyclic_witness;
    std::size_t triples_checked = 0;
    std::size_t quadruples_checked = 0;
};

/// Exhaustive exact check over all triples and quadruples.
/// Throws TooLarge when the enumeration exceeds the caps.
LatticePositionReport lattice_general_position(const std::vector<LatticePoint>& points,
                                               std::size_t triple_cap = 50'000'000,
                                               std::size_t quad_cap = 50'000'000);

/// Early-exit collinearity scan; returns the first collinear triple found.
std::optional<std::array<std::size_t, 3>> find_collinear_triple(
    const std::vector<LatticePoint>& points, std::size_t triple_cap = 50'000'000);

}  // namespace anglelab

#include "anglelab/geometry.hpp"

#include "anglelab/detail/parallel.hpp"
#include "anglelab/errors.hpp"

#include <algorithm>
#include <limits>

namespace anglelab {

namespace {

using detail::resolve_threads;
using detail::run_workers;

const Rational& rzero() {
    static const Rational z(0);
    return z;
}

}  // namespace

bool angle_key_less(const AngleKey& a, const AngleKey& b) {
    // Angle ascending in (0, pi) means cosine descending; cos = sign * sqrt(cos_sq).
    if (a.dot_sign != b.dot_sign) return a.dot_sign > b.dot_sign;
    if (a.dot_sign > 0) return a.cos_sq > b.cos_sq;
    if (a.dot_sign < 0) return a.cos_sq < b.cos_sq;
    return false;  // both right angles
}

int orientation(const RationalPoint2& p, const RationalPoint2& q, const RationalPoint2& r) {
    const Rational det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    return det.sign();
}

bool concyclic(const RationalPoint2& p, const RationalPoint2& q, const RationalPoint2& r,
               const RationalPoint2& s) {
    // Translated form of the 4x4 in-circle determinant with rows (x, y, x^2+y^2, 1):
    // 3x3 with rows (u, |u|^2), u = point - s. Vanishing is equivalent.
    const Rational ax = p.x - s.x, ay = p.y - s.y;
    const Rational bx = q.x - s.x, by = q.y - s.y;
    const Rational cx = r.x - s.x, cy = r.y - s.y;
    const Rational aw = ax * ax + ay * ay;
    const Rational bw = bx * bx + by * by;
    const Rational cw = cx * cx + cy * cy;
    const Rational det =
        ax * (by * cw - bw * cy) - ay * (bx * cw - bw * cx) + aw * (bx * cy - by * cx);
    return det == rzero();
}

AngleKey angle_key_exact(const RationalPoint2& vertex, const RationalPoint2& a,
                         const RationalPoint2& b) {
    const Rational ux = a.x - vertex.x, uy = a.y - vertex.y;
    const Rational vx = b.x - vertex.x, vy = b.y - vertex.y;
    if ((ux == 0 && uy == 0) || (vx == 0 && vy == 0)) {
        throw DegenerateAngle("angle ray endpoint coincides with the vertex");
    }
    const Rational cross = ux * vy - uy * vx;
    if (cross == 0) {
        throw DegenerateAngle("collinear triple yields a degenerate angle");
    }
    const Rational dot = ux * vx + uy * vy;
    AngleKey key;
    key.dot_sign = dot.sign();
    key.cos_sq = (dot * dot) / ((ux * ux + uy * uy) * (vx * vx + vy * vy));
    return key;
}

Real angle_from_key(const AngleKey& key, unsigned bits) {
    PrecisionGuard guard(bits);
    Real c = sqrt(rational_to_real(key.cos_sq, bits));
    if (key.dot_sign < 0) c = -c;
    if (c > 1) c = Real(1);
    if (c < -1) c = Real(-1);
    return acos(c);
}

AngleValue angle_value(const RealPoint2& vertex, const RealPoint2& a, const RealPoint2& b,
                       unsigned bits) {
    return angle_value(vertex, a, b, bits, pow2(8 - static_cast<long>(bits), bits));
}

AngleValue angle_value(const RealPoint2& vertex, const RealPoint2& a, const RealPoint2& b,
                       unsigned bits, const Real& margin) {
    PrecisionGuard guard(bits);
    const Real ux = a.x - vertex.x, uy = a.y - vertex.y;
    const Real vx = b.x - vertex.x, vy = b.y - vertex.y;
    const Real nu2 = ux * ux + uy * uy;
    const Real nv2 = vx * vx + vy * vy;
    if (nu2 == 0 || nv2 == 0) {
        throw DegenerateAngle("angle ray endpoint coincides with the vertex");
    }
    Real c = (ux * vx + uy * vy) / sqrt(nu2 * nv2);
    if (c > 1) c = Real(1);
    if (c < -1) c = Real(-1);
    Real theta = acos(c);
    if (theta < margin || theta > real_pi(bits) - margin) {
        throw DegenerateAngle("angle within degeneracy margin of 0 or pi");
    }
    return AngleValue{std::move(theta), bits};
}

std::array<AngleKey, 3> angle_keys_of_triple(const RationalPoint2& p, const RationalPoint2& q,
                                             const RationalPoint2& r) {
    return {angle_key_exact(p, q, r), angle_key_exact(q, p, r), angle_key_exact(r, p, q)};
}

std::array<AngleValue, 3> angle_values_of_triple(const RealPoint2& p, const RealPoint2& q,
                                                 const RealPoint2& r, unsigned bits) {
    return {angle_value(p, q, r, bits), angle_value(q, p, r, bits), angle_value(r, p, q, bits)};
}

namespace {

struct MarginState {
    bool seeded = false;
    Real min_ratio2;  // squared normalized margin
    std::vector<std::size_t> witness;

    void offer(const Real& ratio2, std::initializer_list<std::size_t> tuple) {
        if (!seeded || ratio2 < min_ratio2 ||
            (ratio2 == min_ratio2 && std::lexicographical_compare(
                                         tuple.begin(), tuple.end(), witness.begin(), witness.end()))) {
            seeded = true;
            min_ratio2 = ratio2;
            witness.assign(tuple);
        }
    }

    void merge(const MarginState& other) {
        if (!other.seeded) return;
        if (!seeded || other.min_ratio2 < min_ratio2 ||
            (other.min_ratio2 == min_ratio2 &&
             std::lexicographical_compare(other.witness.begin(), other.witness.end(),
                                          witness.begin(), witness.end()))) {
            *this = other;
        }
    }
};

struct ZeroState {
    std::optional<std::vector<std::size_t>> witness;

    void offer(std::initializer_list<std::size_t> tuple) {
        std::vector<std::size_t> t(tuple);
        if (!witness || std::lexicographical_compare(t.begin(), t.end(), witness->begin(),
                                                     witness->end())) {
            witness = std::move(t);
        }
    }

    void merge(const ZeroState& other) {
        if (other.witness) {
            if (!witness || std::lexicographical_compare(other.witness->begin(),
                                                         other.witness->end(), witness->begin(),
                                                         witness->end())) {
                witness = other.witness;
            }
        }
    }
};

// Normalized squared collinearity margin of the triple with diffs u, v from
// the first point: cross^2 / (|u|^2 |v|^2). Zero norms give margin 0.
Real collinearity_ratio2(const Real& ux, const Real& uy, const Real& vx, const Real& vy) {
    const Real nu2 = ux * ux + uy * uy;
    const Real nv2 = vx * vx + vy * vy;
    const Real den = nu2 * nv2;
    if (den == 0) return Real(0);
    const Real cross = ux * vy - uy * vx;
    return (cross * cross) / den;
}

// Image of a point under inversion about the quadruple's base point. The
// quadruple is concyclic exactly when the three inverted points are
// collinear, so its margin is the collinearity margin of the inverted
// triple. That quantity is similarity-invariant and bounded by 1, unlike a
// raw determinant-over-row-norms ratio, which shrinks quadratically with the
// spread of scales even for quadruples nowhere near a common circle.
struct InvertedPoint {
    Real x, y;
    bool degenerate = false;  // coincides with the inversion center
};

Real concyclicity_ratio2(const InvertedPoint& a, const InvertedPoint& b, const InvertedPoint& c) {
    if (a.degenerate || b.degenerate || c.degenerate) return Real(0);
    return collinearity_ratio2(b.x - a.x, b.y - a.y, c.x - a.x, c.y - a.y);
}

struct PositionScan {
    MarginState col_margin, conc_margin;
    ZeroState col_zero, conc_zero;  // exact mode only
    std::size_t triples = 0, quadruples = 0;
};

template <class PointAt, class ExactCollinear, class ExactConcyclic>
PositionScan scan_position(std::size_t n, int threads, bool exact, PointAt point_at,
                           ExactCollinear exact_collinear, ExactConcyclic exact_concyclic) {
    const int nthreads = resolve_threads(threads);
    std::vector<PositionScan> locals(static_cast<std::size_t>(nthreads));

    // Triples, keyed by first index.
    run_workers(nthreads, [&](int t, int count) {
        auto& local = locals[static_cast<std::size_t>(t)];
        for (std::size_t i = static_cast<std::size_t>(t); i + 2 < n;
             i += static_cast<std::size_t>(count)) {
            std::vector<std::array<Real, 2>> diffs(n);
            const RealPoint2 base = point_at(i);
            for (std::size_t j = i + 1; j < n; ++j) {
                const RealPoint2 pj = point_at(j);
                diffs[j] = {pj.x - base.x, pj.y - base.y};
            }
            for (std::size_t j = i + 1; j + 1 < n; ++j) {
                for (std::size_t k = j + 1; k < n; ++k) {
                    ++local.triples;
                    local.col_margin.offer(
                        collinearity_ratio2(diffs[j][0], diffs[j][1], diffs[k][0], diffs[k][1]),
                        {i, j, k});
                    if (exact && exact_collinear(i, j, k)) {
                        local.col_zero.offer({i, j, k});
                    }
                }
            }
        }
    });

    // Quadruples, keyed by last index (rows translated against it).
    if (n >= 4) {
        run_workers(nthreads, [&](int t, int count) {
            auto& local = locals[static_cast<std::size_t>(t)];
            for (std::size_t l = 3 + static_cast<std::size_t>(t); l < n;
                 l += static_cast<std::size_t>(count)) {
                const RealPoint2 base = point_at(l);
                std::vector<InvertedPoint> rows(l);
                for (std::size_t m = 0; m < l; ++m) {
                    const RealPoint2 pm = point_at(m);
                    const Real ux = pm.x - base.x;
                    const Real uy = pm.y - base.y;
                    const Real w = ux * ux + uy * uy;
                    InvertedPoint row;
                    if (w == 0) {
                        row.degenerate = true;
                        row.x = Real(0);
                        row.y = Real(0);
                    } else {
                        row.x = ux / w;
                        row.y = uy / w;
                    }
                    rows[m] = std::move(row);
                }
                for (std::size_t i = 0; i + 2 < l; ++i) {
                    for (std::size_t j = i + 1; j + 1 < l; ++j) {
                        for (std::size_t k = j + 1; k < l; ++k) {
                            ++local.quadruples;
                            local.conc_margin.offer(
                                concyclicity_ratio2(rows[i], rows[j], rows[k]), {i, j, k, l});
                            if (exact && exact_concyclic(i, j, k, l)) {
                                local.conc_zero.offer({i, j, k, l});
                            }
                        }
                    }
                }
            }
        });
    }

    PositionScan merged;
    for (auto& local : locals) {
        merged.col_margin.merge(local.col_margin);
        merged.conc_margin.merge(local.conc_margin);
        merged.col_zero.merge(local.col_zero);
        merged.conc_zero.merge(local.conc_zero);
        merged.triples += local.triples;
        merged.quadruples += local.quadruples;
    }
    return merged;
}

double margin_from_ratio2(const MarginState& state) {
    if (!state.seeded) return std::numeric_limits<double>::infinity();
    return to_double(sqrt(state.min_ratio2));
}

template <std::size_t N>
std::optional<std::array<std::size_t, N>> to_witness(const std::vector<std::size_t>& v) {
    if (v.size() != N) return std::nullopt;
    std::array<std::size_t, N> out;
    std::copy(v.begin(), v.end(), out.begin());
    return out;
}

}  // namespace

GeneralPositionReport general_position_exact(const std::vector<RationalPoint2>& points,
                                             int threads) {
    if (points.size() < 3) throw InvalidParameter("general position needs at least 3 points");
    PrecisionGuard guard(kDefaultPrecisionBits);

    std::vector<RealPoint2> numeric(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        numeric[i] = RealPoint2{rational_to_real(points[i].x, kDefaultPrecisionBits),
                                rational_to_real(points[i].y, kDefaultPrecisionBits),
                                kDefaultPrecisionBits};
    }

    const auto scan = scan_position(
        points.size(), threads, /*exact=*/true,
        [&](std::size_t i) { return numeric[i]; },
        [&](std::size_t i, std::size_t j, std::size_t k) {
            return orientation(points[i], points[j], points[k]) == 0;
        },
        [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
            return concyclic(points[i], points[j], points[k], points[l]);
        });

    GeneralPositionReport report;
    report.mode = "exact";
    report.margin = 0.0;
    report.collinearity_ok = !scan.col_zero.witness.has_value();
    report.concyclicity_ok = !scan.conc_zero.witness.has_value();
    report.ok = report.collinearity_ok && report.concyclicity_ok;
    report.min_collinearity_margin = margin_from_ratio2(scan.col_margin);
    report.min_concyclicity_margin = margin_from_ratio2(scan.conc_margin);
    report.collinearity_witness =
        scan.col_zero.witness ? to_witness<3>(*scan.col_zero.witness)
                              : to_witness<3>(scan.col_margin.witness);
    report.concyclicity_witness =
        scan.conc_zero.witness ? to_witness<4>(*scan.conc_zero.witness)
                               : to_witness<4>(scan.conc_margin.witness);
    report.triples_checked = scan.triples;
    report.quadruples_checked = scan.quadruples;
    return report;
}

GeneralPositionReport general_position_numeric(const std::vector<RealPoint2>& points,
                                               unsigned bits, double margin, int threads) {
    if (points.size() < 3) throw InvalidParameter("general position needs at least 3 points");
    if (margin < 0) throw InvalidParameter("margin must be nonnegative");
    PrecisionGuard guard(bits);

    const auto scan = scan_position(
        points.size(), threads, /*exact=*/false, [&](std::size_t i) { return points[i]; },
        [](std::size_t, std::size_t, std::size_t) { return false; },
        [](std::size_t, std::size_t, std::size_t, std::size_t) { return false; });

    const Real margin2 = Real(margin) * Real(margin);
    GeneralPositionReport report;
    report.mode = "numeric";
    report.margin = margin;
    report.collinearity_ok = scan.col_margin.seeded && scan.col_margin.min_ratio2 > margin2;
    report.concyclicity_ok = !scan.conc_margin.seeded || scan.conc_margin.min_ratio2 > margin2;
    report.ok = report.collinearity_ok && report.concyclicity_ok;
    report.min_collinearity_margin = margin_from_ratio2(scan.col_margin);
    report.min_concyclicity_margin = margin_from_ratio2(scan.conc_margin);
    report.collinearity_witness = to_witness<3>(scan.col_margin.witness);
    report.concyclicity_witness = to_witness<4>(scan.conc_margin.witness);
    report.triples_checked = scan.triples;
    report.quadruples_checked = scan.quadruples;
    return report;
}

namespace {

using Wide = __int128;

void require_same_dim(const LatticePoint& a, const LatticePoint& b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("lattice points have mismatched dimensions");
    }
}

// Rank of the 3 x d integer matrix, by fraction-free elimination on a
// rational copy.
int rank3(const std::array<const LatticePoint*, 3>& rows, std::size_t d) {
    std::vector<std::vector<Rational>> m(3, std::vector<Rational>(d));
    for (int r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < d; ++c) m[static_cast<std::size_t>(r)][c] = (*rows[static_cast<std::size_t>(r)])[c];
    }
    int rank = 0;
    std::size_t col = 0;
    while (rank < 3 && col < d) {
        int pivot = -1;
        for (int r = rank; r < 3; ++r) {
            if (m[static_cast<std::size_t>(r)][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) {
            ++col;
            continue;
        }
        std::swap(m[static_cast<std::size_t>(rank)], m[static_cast<std::size_t>(pivot)]);
        for (int r = rank + 1; r < 3; ++r) {
            if (m[static_cast<std::size_t>(r)][col] == 0) continue;
            const Rational f = m[static_cast<std::size_t>(r)][col] / m[static_cast<std::size_t>(rank)][col];
            for (std::size_t c = col; c < d; ++c) {
                m[static_cast<std::size_t>(r)][c] -= f * m[static_cast<std::size_t>(rank)][c];
            }
        }
        ++rank;
        ++col;
    }
    return rank;
}

LatticePoint diff(const LatticePoint& p, const LatticePoint& q) {
    LatticePoint out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] - q[i];
    return out;
}

bool is_zero(const LatticePoint& p) {
    return std::all_of(p.begin(), p.end(), [](std::int64_t v) { return v == 0; });
}

BigInt dot_big(const LatticePoint& a, const LatticePoint& b) {
    BigInt acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += BigInt(a[i]) * b[i];
    return acc;
}

}  // namespace

bool lattice_collinear(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c) {
    require_same_dim(a, b);
    require_same_dim(a, c);
    const std::size_t d = a.size();
    if (d < 2) return true;
    for (std::size_t i = 0; i + 1 < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            const Wide ui = b[i] - a[i], uj = b[j] - a[j];
            const Wide vi = c[i] - a[i], vj = c[j] - a[j];
            if (ui * vj - uj * vi != 0) return false;
        }
    }
    return true;
}

bool lattice_concyclic(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c,
                       const LatticePoint& d) {
    require_same_dim(a, b);
    require_same_dim(a, c);
    require_same_dim(a, d);
    const std::size_t dim = a.size();

    const LatticePoint q1 = diff(b, a), q2 = diff(c, a), q3 = diff(d, a);
    const int rank = rank3({&q1, &q2, &q3}, dim);
    if (rank >= 3) return false;   // not coplanar
    if (rank <= 1) return true;    // all four on one line: determinant form vanishes

    // Pick two independent difference vectors as a plane basis; rank == 2
    // guarantees one of the three pairs qualifies.
    const LatticePoint origin(dim, 0);
    const auto independent = [&](const LatticePoint& u, const LatticePoint& v) {
        return !is_zero(u) && !is_zero(v) && !lattice_collinear(origin, u, v);
    };
    const LatticePoint* basis1;
    const LatticePoint* basis2;
    if (independent(q1, q2)) {
        basis1 = &q1;
        basis2 = &q2;
    } else if (independent(q1, q3)) {
        basis1 = &q1;
        basis2 = &q3;
    } else {
        basis1 = &q2;
        basis2 = &q3;
    }

    const BigInt g11 = dot_big(*basis1, *basis1);
    const BigInt g12 = dot_big(*basis1, *basis2);
    const BigInt g22 = dot_big(*basis2, *basis2);
    const BigInt det_g = g11 * g22 - g12 * g12;

    // Plane coordinates of each difference vector, exactly. Any basis works:
    // a basis change multiplies the in-circle determinant by a nonzero factor.
    std::array<std::array<Rational, 3>, 3> rows;
    const std::array<const LatticePoint*, 3> qs = {&q1, &q2, &q3};
    for (std::size_t r = 0; r < 3; ++r) {
        const BigInt r1 = dot_big(*qs[r], *basis1);
        const BigInt r2 = dot_big(*qs[r], *basis2);
        rows[r][0] = Rational(g22 * r1 - g12 * r2, det_g);
        rows[r][1] = Rational(g11 * r2 - g12 * r1, det_g);
        rows[r][2] = Rational(dot_big(*qs[r], *qs[r]));
    }

    const Rational det = rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1]) -
                         rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0]) +
                         rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0]);
    return det == rzero();
}

LatticePositionReport lattice_general_position(const std::vector<LatticePoint>& points,
                                               std::size_t triple_cap, std::size_t quad_cap) {
    const std::size_t n = points.size();
    if (n < 3) throw InvalidParameter("general position needs at least 3 points");
    if (binomial3(n) > triple_cap) {
        throw TooLarge("triple enumeration exceeds cap");
    }
    const std::uint64_t quads = n < 4 ? 0 : binomial3(n) * (n - 3) / 4;
    if (quads > quad_cap) {
        throw TooLarge("quadruple enumeration exceeds cap");
    }

    LatticePositionReport report;
    for (std::size_t i = 0; i + 2 < n; ++i) {
        for (std::size_t j = i + 1; j + 1 < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                ++report.triples_checked;
                if (lattice_collinear(points[i], points[j], points[k])) {
                    ++report.collinear_triples;
                    if (!report.collinear_witness) report.collinear_witness = {{i, j, k}};
                }
            }
        }
    }
    for (std::size_t i = 0; i + 3 < n; ++i) {
        for (std::size_t j = i + 1; j + 2 < n; ++j) {
            for (std::size_t k = j + 1; k + 1 < n; ++k) {
                for (std::size_t l = k + 1; l < n; ++l) {
                    ++report.quadruples_checked;
                    if (lattice_concyclic(points[i], points[j], points[k], points[l])) {
                        ++report.concyclic_quadruples;
                        if (!report.concyclic_witness) report.concyclic_witness = {{i, j, k, l}};
                    }
                }
            }
        }
    }
    report.collinear_free = report.collinear_triples == 0;
    report.concyclic_free = report.concyclic_quadruples == 0;
    return report;
}

std::optional<std::array<std::size_t, 3>> find_collinear_triple(
    const std::vector<LatticePoint>& points, std::size_t triple_cap) {
    const std::size_t n = points.size();
    if (n < 3) return std::nullopt;
    if (binomial3(n) > triple_cap) {
        throw TooLarge("triple enumeration exceeds cap");
    }
    for (std::size_t i = 0; i + 2 < n; ++i) {
        for (std::size_t j = i + 1; j + 1 < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                if (lattice_collinear(points[i], points[j], points[k])) {
                    return std::array<std::size_t, 3>{i, j, k};
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace anglelab

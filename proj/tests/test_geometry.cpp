#include "anglelab/geometry.hpp"

#include "anglelab/errors.hpp"
#include "anglelab/rng.hpp"

#include <doctest.h>

#include <algorithm>

using namespace anglelab;

namespace {

RationalPoint2 rp(long x, long y) {
    return RationalPoint2{Rational(x), Rational(y)};
}

RationalPoint2 random_rational_point(SplitMix64& rng) {
    const auto num = [&] { return static_cast<long>(rng.next_below(41)) - 20; };
    const auto den = [&] { return static_cast<long>(rng.next_below(9)) + 1; };
    return RationalPoint2{Rational(num(), den()), Rational(num(), den())};
}

RealPoint2 rpt(double x, double y, unsigned bits = kDefaultPrecisionBits) {
    return RealPoint2{make_real(x, bits), make_real(y, bits), bits};
}

// Independent route: cofactor expansion of the raw 4x4 determinant with rows
// (x, y, x^2 + y^2, 1).
Rational incircle_det4(const RationalPoint2& a, const RationalPoint2& b, const RationalPoint2& c,
                       const RationalPoint2& d) {
    std::array<std::array<Rational, 4>, 4> m;
    const std::array<const RationalPoint2*, 4> pts = {&a, &b, &c, &d};
    for (std::size_t i = 0; i < 4; ++i) {
        m[i][0] = pts[i]->x;
        m[i][1] = pts[i]->y;
        m[i][2] = pts[i]->x * pts[i]->x + pts[i]->y * pts[i]->y;
        m[i][3] = 1;
    }
    const auto det3 = [](const std::array<std::array<Rational, 3>, 3>& t) -> Rational {
        return t[0][0] * (t[1][1] * t[2][2] - t[1][2] * t[2][1]) -
               t[0][1] * (t[1][0] * t[2][2] - t[1][2] * t[2][0]) +
               t[0][2] * (t[1][0] * t[2][1] - t[1][1] * t[2][0]);
    };
    Rational det = 0;
    for (std::size_t row = 0; row < 4; ++row) {
        std::array<std::array<Rational, 3>, 3> minor;
        std::size_t rr = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            if (i == row) continue;
            for (std::size_t c2 = 1; c2 < 4; ++c2) minor[rr][c2 - 1] = m[i][c2];
            ++rr;
        }
        const Rational term = m[row][0] * det3(minor);
        det += (row % 2 == 0) ? term : -term;
    }
    return det;
}

}  // namespace

TEST_CASE("orientation on the axis examples") {
    CHECK(orientation(rp(0, 0), rp(1, 1), rp(2, 2)) == 0);
    CHECK(orientation(rp(0, 0), rp(1, 0), rp(0, 1)) == 1);
    CHECK(orientation(rp(0, 0), rp(0, 1), rp(1, 0)) == -1);
}

TEST_CASE("orientation is antisymmetric under swaps") {
    SplitMix64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const auto p = random_rational_point(rng);
        const auto q = random_rational_point(rng);
        const auto r = random_rational_point(rng);
        const int base = orientation(p, q, r);
        CHECK(orientation(q, p, r) == -base);
        CHECK(orientation(p, r, q) == -base);
        CHECK(orientation(r, q, p) == -base);
    }
}

TEST_CASE("concyclic on the unit circle and the square") {
    CHECK(concyclic(rp(1, 0), rp(0, 1), rp(-1, 0), rp(0, -1)));
    CHECK(concyclic(rp(0, 0), rp(2, 0), rp(0, 2), rp(2, 2)));
    CHECK_FALSE(concyclic(rp(0, 0), rp(1, 0), rp(0, 1), rp(5, 5)));
}

TEST_CASE("concyclic agrees with the raw 4x4 determinant") {
    SplitMix64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const auto a = random_rational_point(rng);
        const auto b = random_rational_point(rng);
        const auto c = random_rational_point(rng);
        const auto d = random_rational_point(rng);
        CHECK(concyclic(a, b, c, d) == (incircle_det4(a, b, c, d) == 0));
    }
}

TEST_CASE("concyclic is invariant under permutations") {
    SplitMix64 rng(9);
    for (int i = 0; i < 20; ++i) {
        std::array<RationalPoint2, 4> pts = {random_rational_point(rng), random_rational_point(rng),
                                             random_rational_point(rng), random_rational_point(rng)};
        const bool base = concyclic(pts[0], pts[1], pts[2], pts[3]);
        std::array<std::size_t, 4> idx = {0, 1, 2, 3};
        do {
            CHECK(concyclic(pts[idx[0]], pts[idx[1]], pts[idx[2]], pts[idx[3]]) == base);
        } while (std::next_permutation(idx.begin(), idx.end()));
    }
}

TEST_CASE("angle keys of the canonical angles") {
    const auto right = angle_key_exact(rp(0, 0), rp(1, 0), rp(0, 1));
    CHECK(right.dot_sign == 0);
    CHECK(right.cos_sq == 0);
    CHECK(right.cos_sq_den() == 1);

    const auto acute = angle_key_exact(rp(0, 0), rp(1, 0), rp(1, 1));
    CHECK(acute.dot_sign == 1);
    CHECK(acute.cos_sq == Rational(1, 2));

    const auto obtuse = angle_key_exact(rp(0, 0), rp(1, 0), rp(-1, 1));
    CHECK(obtuse.dot_sign == -1);
    CHECK(obtuse.cos_sq == Rational(1, 2));
}

TEST_CASE("angle keys reject degenerate input") {
    CHECK_THROWS_AS(angle_key_exact(rp(0, 0), rp(0, 0), rp(1, 1)), DegenerateAngle);
    CHECK_THROWS_AS(angle_key_exact(rp(0, 0), rp(1, 1), rp(2, 2)), DegenerateAngle);
    CHECK_THROWS_AS(angle_key_exact(rp(0, 0), rp(1, 1), rp(-2, -2)), DegenerateAngle);
}

TEST_CASE("angle keys are symmetric and invariant under translation and scaling") {
    SplitMix64 rng(13);
    int checked = 0;
    while (checked < 100) {
        const auto v = random_rational_point(rng);
        const auto a = random_rational_point(rng);
        const auto b = random_rational_point(rng);
        AngleKey key;
        try {
            key = angle_key_exact(v, a, b);
        } catch (const DegenerateAngle&) {
            continue;
        }
        ++checked;
        CHECK(angle_key_exact(v, b, a) == key);

        const auto t = random_rational_point(rng);
        const auto shift = [&](const RationalPoint2& p) {
            return RationalPoint2{p.x + t.x, p.y + t.y};
        };
        CHECK(angle_key_exact(shift(v), shift(a), shift(b)) == key);

        const Rational scale(static_cast<long>(rng.next_below(30)) + 1,
                             static_cast<long>(rng.next_below(9)) + 1);
        const RationalPoint2 stretched{v.x + scale * (a.x - v.x), v.y + scale * (a.y - v.y)};
        CHECK(angle_key_exact(v, stretched, b) == key);
    }
}

TEST_CASE("angle_value hits the canonical angles") {
    const unsigned bits = 128;
    const Real tol = pow2(8 - static_cast<long>(bits), bits);
    const Real pi = real_pi(bits);

    const auto right = angle_value(rpt(0, 0), rpt(1, 0), rpt(0, 1), bits);
    CHECK(abs(right.radians - pi / 2) < tol);

    const auto eighth = angle_value(rpt(0, 0), rpt(1, 0), rpt(1, 1), bits);
    CHECK(abs(eighth.radians - pi / 4) < tol);

    PrecisionGuard guard(bits);
    const RealPoint2 apex{Real(1) / 2, sqrt(Real(3)) / 2, bits};
    for (const auto& angle : angle_values_of_triple(rpt(0, 0), rpt(1, 0), apex, bits)) {
        CHECK(abs(angle.radians - pi / 3) < tol);
    }
}

TEST_CASE("angle_value rejects near-degenerate rays") {
    CHECK_THROWS_AS(angle_value(rpt(0, 0), rpt(1, 1), rpt(2, 2), 128), DegenerateAngle);
    CHECK_THROWS_AS(angle_value(rpt(0, 0), rpt(1, 1), rpt(-1, -1), 128), DegenerateAngle);
    CHECK_THROWS_AS(angle_value(rpt(0, 0), rpt(0, 0), rpt(1, 0), 128), DegenerateAngle);
}

TEST_CASE("triple angles follow the vertex order and sum to pi") {
    const unsigned bits = 128;
    const Real tol = pow2(8 - static_cast<long>(bits), bits);
    const Real pi = real_pi(bits);

    const auto right_iso = angle_values_of_triple(rpt(0, 0), rpt(1, 0), rpt(0, 1), bits);
    CHECK(abs(right_iso[0].radians - pi / 2) < tol);
    CHECK(abs(right_iso[1].radians - pi / 4) < tol);
    CHECK(abs(right_iso[2].radians - pi / 4) < tol);

    const auto shifted = angle_values_of_triple(rpt(0, 0), rpt(1, 0), rpt(1, 1), bits);
    CHECK(abs(shifted[0].radians - pi / 4) < tol);
    CHECK(abs(shifted[1].radians - pi / 2) < tol);
    CHECK(abs(shifted[2].radians - pi / 4) < tol);

    SplitMix64 rng(17);
    for (int i = 0; i < 50; ++i) {
        const auto p = rpt(rng.next_gaussian(), rng.next_gaussian());
        const auto q = rpt(rng.next_gaussian(), rng.next_gaussian());
        const auto r = rpt(rng.next_gaussian(), rng.next_gaussian());
        try {
            const auto angles = angle_values_of_triple(p, q, r, bits);
            const Real sum = angles[0].radians + angles[1].radians + angles[2].radians;
            CHECK(abs(sum - pi) < 3 * tol);
        } catch (const DegenerateAngle&) {
            continue;
        }
    }
}

TEST_CASE("exact keys reproduce numeric angle values") {
    SplitMix64 rng(19);
    const unsigned bits = 128;
    const Real tol = pow2(8 - static_cast<long>(bits), bits);
    int checked = 0;
    while (checked < 100) {
        const auto v = random_rational_point(rng);
        const auto a = random_rational_point(rng);
        const auto b = random_rational_point(rng);
        try {
            const auto key = angle_key_exact(v, a, b);
            const Real from_key = angle_from_key(key, bits);
            const auto to_real = [&](const RationalPoint2& p) {
                return RealPoint2{rational_to_real(p.x, bits), rational_to_real(p.y, bits), bits};
            };
            const auto value = angle_value(to_real(v), to_real(a), to_real(b), bits);
            CHECK(abs(from_key - value.radians) < tol);
            ++checked;
        } catch (const DegenerateAngle&) {
            continue;
        }
    }
}

TEST_CASE("angle key ordering matches numeric ordering") {
    SplitMix64 rng(23);
    std::vector<AngleKey> keys;
    while (keys.size() < 60) {
        const auto v = random_rational_point(rng);
        const auto a = random_rational_point(rng);
        const auto b = random_rational_point(rng);
        try {
            keys.push_back(angle_key_exact(v, a, b));
        } catch (const DegenerateAngle&) {
        }
    }
    std::sort(keys.begin(), keys.end(), angle_key_less);
    for (std::size_t i = 1; i < keys.size(); ++i) {
        CHECK(angle_from_key(keys[i - 1], 128) <= angle_from_key(keys[i], 128));
    }
}

TEST_CASE("exact general position flags the square's circumcircle") {
    const std::vector<RationalPoint2> square = {rp(0, 0), rp(1, 0), rp(0, 1), rp(1, 1)};
    const auto report = general_position_exact(square);
    CHECK_FALSE(report.ok);
    CHECK(report.collinearity_ok);
    CHECK_FALSE(report.concyclicity_ok);
    REQUIRE(report.concyclicity_witness.has_value());
    CHECK(*report.concyclicity_witness == std::array<std::size_t, 4>{0, 1, 2, 3});
    CHECK(report.triples_checked == 4);
    CHECK(report.quadruples_checked == 1);
}

TEST_CASE("exact general position flags a collinear triple") {
    const std::vector<RationalPoint2> pts = {rp(0, 0), rp(1, 1), rp(2, 2), rp(0, 1)};
    const auto report = general_position_exact(pts);
    CHECK_FALSE(report.ok);
    CHECK_FALSE(report.collinearity_ok);
    REQUIRE(report.collinearity_witness.has_value());
    CHECK(*report.collinearity_witness == std::array<std::size_t, 3>{0, 1, 2});
    CHECK(report.min_collinearity_margin == 0.0);
}

TEST_CASE("numeric general position certifies an honest triangle") {
    const std::vector<RealPoint2> pts = {rpt(0, 0), rpt(1, 0), rpt(0.5, 0.9), rpt(2.3, 1.7)};
    const auto report = general_position_numeric(pts, 128, 1e-12);
    CHECK(report.ok);
    CHECK(report.min_collinearity_margin > 1e-3);
    CHECK(report.triples_checked == 4);
}

TEST_CASE("numeric general position report is thread-count independent") {
    SplitMix64 rng(29);
    std::vector<RealPoint2> pts;
    for (int i = 0; i < 12; ++i) pts.push_back(rpt(rng.next_gaussian(), rng.next_gaussian()));
    const auto one = general_position_numeric(pts, 128, 1e-12, 1);
    const auto four = general_position_numeric(pts, 128, 1e-12, 4);
    CHECK(one.ok == four.ok);
    CHECK(one.min_collinearity_margin == four.min_collinearity_margin);
    CHECK(one.min_concyclicity_margin == four.min_concyclicity_margin);
    CHECK(one.collinearity_witness == four.collinearity_witness);
    CHECK(one.concyclicity_witness == four.concyclicity_witness);
}

TEST_CASE("lattice collinearity in several dimensions") {
    CHECK(lattice_collinear({0, 0, 0}, {1, 1, 1}, {2, 2, 2}));
    CHECK(lattice_collinear({1, 2, 3}, {2, 4, 6}, {3, 6, 9}));
    CHECK_FALSE(lattice_collinear({0, 0, 0}, {1, 0, 0}, {0, 1, 0}));
    CHECK(lattice_collinear({0}, {3}, {7}));  // 1-d points always align
    CHECK(lattice_collinear({0, 0, 0, 0}, {1, 2, 0, 1}, {2, 4, 0, 2}));
}

TEST_CASE("lattice concyclicity matches the planar predicate in dimension 2") {
    SplitMix64 rng(31);
    for (int i = 0; i < 100; ++i) {
        std::array<LatticePoint, 4> pts;
        for (auto& p : pts) {
            p = {static_cast<std::int64_t>(rng.next_below(7)),
                 static_cast<std::int64_t>(rng.next_below(7))};
        }
        const auto planar = [&](std::size_t i2) {
            return RationalPoint2{Rational(pts[i2][0]), Rational(pts[i2][1])};
        };
        CHECK(lattice_concyclic(pts[0], pts[1], pts[2], pts[3]) ==
              concyclic(planar(0), planar(1), planar(2), planar(3)));
    }
}

TEST_CASE("lattice concyclicity in a tilted plane") {
    // Four vertices of the regular hexagon on x+y+z = 3 with circumradius^2 = 2.
    CHECK(lattice_concyclic({2, 1, 0}, {2, 0, 1}, {1, 2, 0}, {0, 2, 1}));
    // A regular tetrahedron is not even coplanar.
    CHECK_FALSE(lattice_concyclic({0, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}));
    // Coplanar but off the circle.
    CHECK_FALSE(lattice_concyclic({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {5, 5, 0}));
}

TEST_CASE("lattice general position over a small shell") {
    const std::vector<LatticePoint> shell = {{2, 1, 0}, {2, 0, 1}, {1, 2, 0}, {0, 2, 1},
                                             {1, 0, 2}, {0, 1, 2}};
    const auto report = lattice_general_position(shell);
    CHECK(report.collinear_free);
    CHECK_FALSE(report.concyclic_free);  // the hexagon has concyclic quadruples
    CHECK(report.collinear_triples == 0);
    CHECK(report.concyclic_quadruples > 0);
}

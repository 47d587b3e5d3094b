#include "anglelab/numeric.hpp"

#include "anglelab/errors.hpp"
#include "anglelab/rng.hpp"

#include <doctest.h>

#include <limits>

using namespace anglelab;

TEST_CASE("requested precision is a lower bound on the mantissa") {
    for (unsigned bits : {64u, 128u, 192u, 256u, 512u}) {
        const Real x = make_real("0.1", bits);
        CHECK(precision_bits_of(x) >= bits);
    }
    CHECK_THROWS_AS(make_real("0.1", 32), InvalidParameter);
}

TEST_CASE("decimal round trip is exact at the value's precision") {
    SplitMix64 rng(11);
    for (int i = 0; i < 50; ++i) {
        const unsigned bits = 64 + 16 * static_cast<unsigned>(rng.next_below(12));
        PrecisionGuard guard(bits);
        const Real x = exp(Real(rng.next_gaussian()));
        const Real back = make_real(real_str(x), bits);
        CHECK(back == x);
    }
}

TEST_CASE("make_real rejects garbage and non-finite values") {
    CHECK_THROWS_AS(make_real("0.1.2", 128), InvalidParameter);
    CHECK_THROWS_AS(make_real("abc", 128), InvalidParameter);
    CHECK_THROWS_AS(make_real("inf", 128), InvalidParameter);
    CHECK_THROWS_AS(make_real("nan", 128), InvalidParameter);
    CHECK_THROWS_AS(make_real(std::numeric_limits<double>::infinity(), 128), InvalidParameter);
}

TEST_CASE("rational parsing canonicalizes") {
    CHECK(parse_rational("2/4") == Rational(1, 2));
    CHECK(parse_rational("-1/2") == parse_rational("1/-2"));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(rational_str(parse_rational("2/4")) == "1/2");
    CHECK(rational_str(parse_rational("3/-6")) == "-1/2");
    CHECK(denominator(parse_rational("5/-10")) > 0);
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidParameter);
    CHECK_THROWS_AS(parse_rational("x/2"), InvalidParameter);
}

TEST_CASE("pi and powers of two") {
    const Real pi = real_pi(128);
    CHECK(to_double(pi) == doctest::Approx(3.14159265358979));
    CHECK(pow2(-3, 128) == Real(0.125));
    CHECK(pow2(10, 64) == Real(1024));
}

TEST_CASE("at_precision rounds to the requested width") {
    const Real x = make_real("0.1", 256);
    const Real y = at_precision(x, 128);
    CHECK(precision_bits_of(y) >= 128);
    CHECK(precision_bits_of(y) < 256);
    CHECK(to_double(abs(x - y)) < 1e-35);
}

TEST_CASE("precision guard restores the previous default") {
    const unsigned before = Real::default_precision();
    {
        PrecisionGuard outer(256);
        const unsigned outer_digits = Real::default_precision();
        {
            PrecisionGuard inner(64);
            CHECK(Real::default_precision() < outer_digits);
        }
        CHECK(Real::default_precision() == outer_digits);
    }
    CHECK(Real::default_precision() == before);
}

TEST_CASE("small binomials") {
    CHECK(binomial2(0) == 0);
    CHECK(binomial2(2) == 1);
    CHECK(binomial2(5) == 10);
    CHECK(binomial3(2) == 0);
    CHECK(binomial3(3) == 1);
    CHECK(binomial3(80) == 82160);
}

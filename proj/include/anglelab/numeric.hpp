#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace anglelab {

// Extended-precision real with runtime-selectable precision (MPFR backed).
using Real = boost::multiprecision::mpfr_float;
// Exact arbitrary-precision rational, always stored canonically reduced.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline constexpr unsigned kMinPrecisionBits = 64;
inline constexpr unsigned kDefaultPrecisionBits = 128;

/// Decimal digits that guarantee at least `bits` bits of mantissa.
unsigned digits10_for_bits(unsigned bits);

/// Scoped default precision for Real temporaries and expression results.
/// Every public operation that does extended-precision arithmetic opens one.
/// Guards are process-wide; concurrent use is limited to fork/join sections
/// that set the precision before spawning workers.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned bits);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_digits10_;
};

/// Parse a decimal string at the given precision.
Real make_real(const std::string& decimal, unsigned bits);
Real make_real(double value, unsigned bits);

/// Copy of x rounded to exactly `bits` bits of mantissa.
Real at_precision(const Real& x, unsigned bits);

unsigned precision_bits_of(const Real& x);

Real real_pi(unsigned bits);

/// 2^exponent, exact.
Real pow2(long exponent, unsigned bits);

/// Decimal string that round-trips exactly at the value's own precision.
std::string real_str(const Real& x);

double to_double(const Real& x);

/// Parse "num/den" or a plain integer string; result is canonical.
Rational parse_rational(const std::string& s);

/// "num/den" with positive denominator, fully reduced.
std::string rational_str(const Rational& q);

Real rational_to_real(const Rational& q, unsigned bits);

/// Exact n-choose-k for small k.
std::uint64_t binomial2(std::uint64_t n);
std::uint64_t binomial3(std::uint64_t n);

}  // namespace anglelab

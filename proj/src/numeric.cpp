#include "anglelab/numeric.hpp"

#include "anglelab/errors.hpp"

#include <cmath>
#include <sstream>

namespace anglelab {

unsigned digits10_for_bits(unsigned bits) {
    if (bits < kMinPrecisionBits) {
        throw InvalidParameter("precision_bits must be >= 64, got " + std::to_string(bits));
    }
    // ceil(bits * log10(2)); boost maps digits back to >= bits mantissa bits.
    return static_cast<unsigned>((static_cast<unsigned long long>(bits) * 30103ULL + 99999ULL) / 100000ULL);
}

PrecisionGuard::PrecisionGuard(unsigned bits) : saved_digits10_(Real::default_precision()) {
    Real::default_precision(digits10_for_bits(bits));
}

PrecisionGuard::~PrecisionGuard() {
    Real::default_precision(saved_digits10_);
}

Real make_real(const std::string& decimal, unsigned bits) {
    PrecisionGuard guard(bits);
    try {
        Real out(decimal);
        if (!mpfr_number_p(out.backend().data())) {
            throw InvalidParameter("coordinate is not finite: '" + decimal + "'");
        }
        return out;
    } catch (const InvalidParameter&) {
        throw;
    } catch (const std::exception&) {
        throw InvalidParameter("not a decimal number: '" + decimal + "'");
    }
}

Real make_real(double value, unsigned bits) {
    if (!std::isfinite(value)) {
        throw InvalidParameter("value is not finite");
    }
    PrecisionGuard guard(bits);
    return Real(value);
}

Real at_precision(const Real& x, unsigned bits) {
    PrecisionGuard guard(bits);
    Real out;
    mpfr_set(out.backend().data(), x.backend().data(), MPFR_RNDN);
    return out;
}

unsigned precision_bits_of(const Real& x) {
    return static_cast<unsigned>(mpfr_get_prec(x.backend().data()));
}

Real real_pi(unsigned bits) {
    PrecisionGuard guard(bits);
    Real out;
    mpfr_const_pi(out.backend().data(), MPFR_RNDN);
    return out;
}

Real pow2(long exponent, unsigned bits) {
    PrecisionGuard guard(bits);
    Real out;
    mpfr_set_ui_2exp(out.backend().data(), 1, exponent, MPFR_RNDN);
    return out;
}

std::string real_str(const Real& x) {
    return x.str(0, std::ios_base::scientific);
}

double to_double(const Real& x) {
    return static_cast<double>(x);
}

Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(BigInt(s));
        }
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) {
            throw InvalidParameter("zero denominator in '" + s + "'");
        }
        return Rational(num, den);
    } catch (const InvalidParameter&) {
        throw;
    } catch (const std::exception&) {
        throw InvalidParameter("not a rational number: '" + s + "'");
    }
}

std::string rational_str(const Rational& q) {
    std::ostringstream os;
    os << numerator(q) << '/' << denominator(q);
    return os.str();
}

Real rational_to_real(const Rational& q, unsigned bits) {
    PrecisionGuard guard(bits);
    Real num(numerator(q));
    Real den(denominator(q));
    return num / den;
}

std::uint64_t binomial2(std::uint64_t n) {
    return n < 2 ? 0 : n * (n - 1) / 2;
}

std::uint64_t binomial3(std::uint64_t n) {
    return n < 3 ? 0 : n * (n - 1) / 2 * (n - 2) / 3;
}

}  // namespace anglelab

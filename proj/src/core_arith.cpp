#include "psdist/core_arith.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include <gmpxx.h>
#include <mpfr.h>

#include "psdist/errors.hpp"

namespace psdist {

double frac(double t) {
    double r = t - std::floor(t);
    return r < 1.0 ? r : std::nextafter(1.0, 0.0);
}

double dist_nearest_int(double t) {
    double f = frac(t);
    return std::min(f, 1.0 - f);
}

std::complex<double> e_reduced(double t) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double a = std::fabs(t);
    const bool negative = std::signbit(t);
    bool flip_cos = false;
    if (a > 0.25) {
        a = 0.5 - a;
        flip_cos = true;
    }
    double c = 0.0;
    double s = 0.0;
    if (a > 0.125) {
        const double b = 0.25 - a;
        c = std::sin(two_pi * b);
        s = std::cos(two_pi * b);
    } else {
        c = std::cos(two_pi * a);
        s = std::sin(two_pi * a);
    }
    if (flip_cos) c = -c;
    if (negative) s = -s;
    return {c, s};
}

std::complex<double> e(double t) { return e_reduced(t - std::nearbyint(t)); }

Exponent Exponent::real(double value) {
    for (int k = 0; k <= 20; ++k) {
        const double scaled = std::ldexp(value, k);
        if (scaled == std::floor(scaled) && std::fabs(scaled) < 0x1p53) {
            return ratio(static_cast<std::int64_t>(scaled), std::int64_t{1} << k);
        }
    }
    Exponent out;
    out.value = value;
    return out;
}

Exponent Exponent::ratio(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("exponent with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    Exponent out;
    out.value = static_cast<double>(num) / static_cast<double>(den);
    out.rational = std::make_pair(num, den);
    return out;
}

Exponent Exponent::reciprocal() const {
    if (rational) return ratio(rational->second, rational->first);
    Exponent out;
    out.value = 1.0 / value;
    return out;
}

namespace {

struct Mpfr {
    explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(x, prec); }
    ~Mpfr() { mpfr_clear(x); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpfr_t x;
};

struct Bracket {
    mpz_class floor_lo;
    mpz_class floor_hi;
    bool exact_point = false;
    long double lo_value = 0.0L;
};

// Encloses n^theta in [lo, hi] with directed rounding at `prec` bits.
Bracket bracket_power(std::uint64_t n, const Exponent& theta, mpfr_prec_t prec) {
    Mpfr ln_lo(prec), ln_hi(prec), th_lo(prec), th_hi(prec), lo(prec), hi(prec);
    mpfr_set_ui(ln_lo.x, static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_set_ui(ln_hi.x, static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_log(ln_lo.x, ln_lo.x, MPFR_RNDD);
    mpfr_log(ln_hi.x, ln_hi.x, MPFR_RNDU);
    if (theta.rational) {
        mpfr_set_si(th_lo.x, static_cast<long>(theta.rational->first), MPFR_RNDN);
        mpfr_set_si(th_hi.x, static_cast<long>(theta.rational->first), MPFR_RNDN);
        mpfr_div_si(th_lo.x, th_lo.x, static_cast<long>(theta.rational->second), MPFR_RNDD);
        mpfr_div_si(th_hi.x, th_hi.x, static_cast<long>(theta.rational->second), MPFR_RNDU);
    } else {
        mpfr_set_d(th_lo.x, theta.value, MPFR_RNDN);
        mpfr_set_d(th_hi.x, theta.value, MPFR_RNDN);
    }
    // both factors are non-negative
    mpfr_mul(lo.x, ln_lo.x, th_lo.x, MPFR_RNDD);
    mpfr_mul(hi.x, ln_hi.x, th_hi.x, MPFR_RNDU);
    mpfr_exp(lo.x, lo.x, MPFR_RNDD);
    mpfr_exp(hi.x, hi.x, MPFR_RNDU);

    Bracket b;
    mpfr_get_z(b.floor_lo.get_mpz_t(), lo.x, MPFR_RNDD);
    mpfr_get_z(b.floor_hi.get_mpz_t(), hi.x, MPFR_RNDD);
    b.exact_point = mpfr_equal_p(lo.x, hi.x) != 0 && mpfr_integer_p(lo.x) != 0;
    b.lo_value = mpfr_get_ld(lo.x, MPFR_RNDN);
    return b;
}

long double below_one(long double x) {
    if (x < 0.0L) return 0.0L;
    return x < 1.0L ? x : std::nextafter(1.0L, 0.0L);
}

}  // namespace

CertifiedFloor pow_floor(std::uint64_t n, const Exponent& theta) {
    if (n == 0) throw std::domain_error("pow_floor requires n >= 1");
    if (!(theta.value > 0.0 && theta.value < 2.0)) {
        throw std::domain_error("pow_floor requires theta in (0, 2), got " + std::to_string(theta.value));
    }
    if (n == 1) return {1, true, 0.0, true, 0.0L, 64};

    long double lt = theta.rational
                         ? static_cast<long double>(theta.rational->first) / theta.rational->second
                         : static_cast<long double>(theta.value);
    const long double arg = lt * std::log(static_cast<long double>(n));
    const long double t = std::exp(arg);
    if (!(t < 9.2e18L)) throw std::overflow_error("n^theta does not fit a 64-bit integer");
    const long double k = std::floor(t);
    const long double margin = std::min(t - k, k + 1.0L - t);
    // log, multiply and exp each contribute a few ulps, amplified by |arg|
    const long double err = t * LDBL_EPSILON * (4.0L * std::fabs(arg) + 8.0L) * 8.0L;
    const long double guard = std::max(1e-12L, err);
    if (margin > guard) {
        return {static_cast<std::int64_t>(k), true, static_cast<double>(margin), false, t - k, 64};
    }

    auto from_bracket = [&](const Bracket& b, int prec) {
        CertifiedFloor out;
        out.value = b.floor_lo.get_si();
        out.certified = true;
        out.guard_margin = static_cast<double>(margin);
        out.exact_integer = b.exact_point;
        out.fractional = b.exact_point ? 0.0L : below_one(b.lo_value - static_cast<long double>(out.value));
        out.precision_bits = prec;
        return out;
    };

    const bool rational = theta.rational.has_value();
    const int max_prec = rational ? 128 : 1024;
    Bracket last;
    for (int prec = 128; prec <= max_prec; prec *= 2) {
        last = bracket_power(n, theta, prec);
        if (last.floor_lo == last.floor_hi) return from_bracket(last, prec);
    }

    if (rational) {
        // lo < K <= hi for K = floor(hi); decide K^den <= n^num exactly.
        const auto [num, den] = *theta.rational;
        const double bits = static_cast<double>(num) * std::log2(static_cast<double>(n));
        if (bits < 5e6) {
            mpz_class big_k = last.floor_hi;
            mpz_class lhs, rhs, base;
            mpz_pow_ui(lhs.get_mpz_t(), big_k.get_mpz_t(), static_cast<unsigned long>(den));
            mpz_set_ui(base.get_mpz_t(), static_cast<unsigned long>(n));
            mpz_pow_ui(rhs.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(num));
            CertifiedFloor out;
            out.certified = true;
            out.guard_margin = static_cast<double>(margin);
            out.precision_bits = 0;
            const int cmp = mpz_cmp(lhs.get_mpz_t(), rhs.get_mpz_t());
            if (cmp <= 0) {
                out.value = big_k.get_si();
                out.exact_integer = (cmp == 0);
                out.fractional = out.exact_integer ? 0.0L : below_one(last.lo_value - static_cast<long double>(out.value));
            } else {
                out.value = big_k.get_si() - 1;
                out.fractional = below_one(last.lo_value - static_cast<long double>(out.value));
            }
            return out;
        }
    }
    throw PrecisionExhausted("cannot certify floor of " + std::to_string(n) + "^" + std::to_string(theta.value) +
                             " at 1024 bits; supply the exponent as an exact rational");
}

}  // namespace psdist

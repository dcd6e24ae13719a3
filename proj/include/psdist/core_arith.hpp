#pragma once

#include <complex>
#include <cstdint>
#include <optional>

#include "psdist/fixed_point.hpp"

namespace psdist {

/// {t} in [0, 1).
double frac(double t);
/// ‖t‖ in [0, 1/2].
double dist_nearest_int(double t);

/// e(t) = exp(2 pi i t). Quarter and half periods come out exact.
std::complex<double> e(double t);
/// e(t) for t already reduced to [-1/2, 1/2]; conj(e(-t)) == e(t) bit for bit.
std::complex<double> e_reduced(double t);

/// Exponent theta of n^theta. When the exponent is a known rational the
/// floor can always be decided exactly.
struct Exponent {
    double value = 1.0;
    std::optional<std::pair<std::int64_t, std::int64_t>> rational;  // num/den, reduced, den > 0

    /// Dyadic values with small denominators (0.5, 1, 0.75, ...) are promoted to exact rationals.
    static Exponent real(double value);
    static Exponent ratio(std::int64_t num, std::int64_t den);
    Exponent reciprocal() const;
};

struct CertifiedFloor {
    std::int64_t value = 0;
    bool certified = false;
    /// distance from n^theta to the nearest integer, as evaluated
    double guard_margin = 0.0;
    /// n^theta is exactly the integer `value`
    bool exact_integer = false;
    /// n^theta - value, in [0, 1)
    long double fractional = 0.0L;
    /// 64 for the extended-precision fast path, MPFR bits otherwise, 0 for the exact rational check
    int precision_bits = 64;
};

/// Certified [n^theta] for n >= 1 and theta in (0, 2).
///
/// The extended-precision estimate is accepted only when it sits farther than
/// max(1e-12, rigorous error bound) from an integer. Otherwise the value is
/// bracketed with directed-rounding MPFR at 128..1024 bits, and for rational
/// exponents an exact integer comparison k^den <= n^num settles boundaries.
/// Throws PrecisionExhausted when a non-rational exponent cannot be decided.
CertifiedFloor pow_floor(std::uint64_t n, const Exponent& theta);

}  // namespace psdist

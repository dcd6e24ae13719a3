#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace psdist {

/// A point of the unit circle R/Z held as a 256-bit binary fraction.
///
/// value = limbs[3]*2^-64 + limbs[2]*2^-128 + limbs[1]*2^-192 + limbs[0]*2^-256.
/// All arithmetic wraps modulo one, so multiplying by an integer is exact.
class Frac256 {
public:
    static constexpr int kBits = 256;
    using Limbs = std::array<std::uint64_t, 4>;

    constexpr Frac256() = default;
    explicit constexpr Frac256(const Limbs& limbs) : limbs_(limbs) {}

    /// Exact conversion of the fractional part of a finite double.
    static Frac256 from_double(double x);
    static constexpr Frac256 half() { return Frac256(Limbs{0, 0, 0, std::uint64_t{1} << 63}); }

    const Limbs& limbs() const { return limbs_; }
    bool is_zero() const { return (limbs_[0] | limbs_[1] | limbs_[2] | limbs_[3]) == 0; }

    Frac256 operator+(const Frac256& rhs) const;
    Frac256 operator-(const Frac256& rhs) const;
    Frac256 operator-() const;
    /// (this * k) mod 1, exact. `carry` receives floor(this * k).
    Frac256 mul(std::uint64_t k, std::uint64_t* carry = nullptr) const;

    /// ‖x‖, the distance to the nearest integer, in [0, 1/2].
    Frac256 distance() const;

    /// Value in [0, 1), rounded to nearest.
    double to_double() const;
    long double to_long_double() const;
    /// Representative in [-1/2, 1/2).
    double to_signed_double() const;
    long double to_signed_long_double() const;

    std::strong_ordering operator<=>(const Frac256& rhs) const;
    bool operator==(const Frac256& rhs) const = default;

private:
    Limbs limbs_{};
};

/// Real number with a 64-bit integer part and a 256-bit fractional part.
///
/// The true value lies in [repr, repr + ulp_error * 2^-256]. Inputs produced
/// from exact rationals with a power-of-two denominator carry ulp_error == 0.
class FixedPointReal {
public:
    FixedPointReal() = default;
    FixedPointReal(std::int64_t integer_part, Frac256 frac, std::uint64_t ulp_error = 0)
        : integer_part_(integer_part), frac_(frac), ulp_error_(ulp_error) {}

    static FixedPointReal from_int(std::int64_t k) { return {k, Frac256{}, 0}; }
    /// Exact: every finite double is a dyadic rational.
    static FixedPointReal from_double(double x);
    /// num/den truncated towards -infinity; exact iff den divides 2^256.
    static FixedPointReal from_rational(const mpz_class& num, const mpz_class& den);
    static FixedPointReal from_rational(std::int64_t num, std::int64_t den);
    /// Generated at full precision: "sqrt:K", "golden", "pi", "e".
    static FixedPointReal named(const std::string& name);

    std::int64_t integer_part() const { return integer_part_; }
    const Frac256& frac() const { return frac_; }
    std::uint64_t ulp_error() const { return ulp_error_; }
    bool is_exact() const { return ulp_error_ == 0; }

    FixedPointReal operator+(const FixedPointReal& rhs) const;
    FixedPointReal operator-(const FixedPointReal& rhs) const;
    FixedPointReal operator-() const;
    /// Product with a machine integer. Fractional part exact; integer part wraps mod 2^64.
    FixedPointReal mul(std::int64_t k) const;

    /// {this * k + shift}: the hot-loop form of {alpha*p + beta}.
    Frac256 frac_affine(std::uint64_t k, const Frac256& shift) const { return frac_.mul(k) + shift; }

    /// integer_part * 2^256 + frac as an exact big integer.
    mpz_class scaled() const;
    long double to_long_double() const;
    double to_double() const { return static_cast<double>(to_long_double()); }

private:
    std::int64_t integer_part_ = 0;
    Frac256 frac_{};
    std::uint64_t ulp_error_ = 0;
};

/// A parsed real-number spec string, keeping the text for report provenance.
struct RealSpec {
    enum class Kind { Named, Decimal, Rational };

    std::string text;
    Kind kind = Kind::Decimal;
    FixedPointReal value;
    /// Set for decimals and "a/b" inputs: the exact rational the text denotes.
    std::optional<std::pair<mpz_class, mpz_class>> rational;

    bool is_rational() const { return rational.has_value(); }
};

/// Accepts "sqrt:K", "golden", "pi", "e", decimals like "-0.125" and ratios "a/b".
/// Throws InvalidConfig on anything else.
RealSpec parse_real_spec(const std::string& text);

}  // namespace psdist

#include "psdist/fixed_point.hpp"

#include <cmath>
#include <regex>

#include <mpfr.h>

#include "psdist/errors.hpp"

namespace psdist {

namespace {

using u128 = unsigned __int128;

const mpz_class& two_pow_256() {
    static const mpz_class value = [] {
        mpz_class v;
        mpz_ui_pow_ui(v.get_mpz_t(), 2, 256);
        return v;
    }();
    return value;
}

Frac256 frac_from_mpz(const mpz_class& r) {
    // r in [0, 2^256)
    Frac256::Limbs limbs{};
    std::size_t count = 0;
    mpz_export(limbs.data(), &count, -1, sizeof(std::uint64_t), 0, 0, r.get_mpz_t());
    return Frac256(limbs);
}

mpz_class mpz_from_frac(const Frac256& f) {
    mpz_class r;
    mpz_import(r.get_mpz_t(), 4, -1, sizeof(std::uint64_t), 0, 0, f.limbs().data());
    return r;
}

mpz_class mpz_from_i64(std::int64_t v) {
    mpz_class r;
    mpz_set_si(r.get_mpz_t(), static_cast<long>(v));
    return r;
}

FixedPointReal from_scaled(const mpz_class& scaled, std::uint64_t ulp_error) {
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_mpz_t(), two_pow_256().get_mpz_t());
    // integer part wraps modulo 2^64
    mpz_class low;
    mpz_fdiv_r_2exp(low.get_mpz_t(), q.get_mpz_t(), 64);
    std::uint64_t bits = 0;
    std::size_t count = 0;
    mpz_export(&bits, &count, -1, sizeof(bits), 0, 0, low.get_mpz_t());
    return FixedPointReal(static_cast<std::int64_t>(bits), frac_from_mpz(r), ulp_error);
}

struct Mpfr {
    explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(x, prec); }
    ~Mpfr() { mpfr_clear(x); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpfr_t x;
};

constexpr mpfr_prec_t kNamedPrecision = 512;

FixedPointReal from_mpfr_down(const Mpfr& value) {
    Mpfr scaled(kNamedPrecision + 16);
    mpfr_mul_2ui(scaled.x, value.x, 256, MPFR_RNDD);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), scaled.x, MPFR_RNDD);
    return from_scaled(z, 2);
}

}  // namespace

Frac256 Frac256::from_double(double x) { return FixedPointReal::from_double(x).frac(); }

Frac256 Frac256::operator+(const Frac256& rhs) const {
    Limbs out{};
    u128 carry = 0;
    for (int i = 0; i < 4; ++i) {
        u128 s = static_cast<u128>(limbs_[i]) + rhs.limbs_[i] + carry;
        out[i] = static_cast<std::uint64_t>(s);
        carry = s >> 64;
    }
    return Frac256(out);
}

Frac256 Frac256::operator-(const Frac256& rhs) const {
    Limbs out{};
    std::uint64_t borrow = 0;
    for (int i = 0; i < 4; ++i) {
        std::uint64_t a = limbs_[i];
        std::uint64_t b = rhs.limbs_[i];
        std::uint64_t d = a - b - borrow;
        borrow = (a < b || (a == b && borrow)) ? 1 : 0;
        out[i] = d;
    }
    return Frac256(out);
}

Frac256 Frac256::operator-() const { return Frac256{} - *this; }

Frac256 Frac256::mul(std::uint64_t k, std::uint64_t* carry) const {
    Limbs out{};
    u128 c = 0;
    for (int i = 0; i < 4; ++i) {
        u128 prod = static_cast<u128>(limbs_[i]) * k + c;
        out[i] = static_cast<std::uint64_t>(prod);
        c = prod >> 64;
    }
    if (carry != nullptr) *carry = static_cast<std::uint64_t>(c);
    return Frac256(out);
}

Frac256 Frac256::distance() const {
    if (limbs_[3] >> 63) return -*this;
    return *this;
}

long double Frac256::to_long_double() const {
    long double v = std::ldexp(static_cast<long double>(limbs_[3]), -64);
    v += std::ldexp(static_cast<long double>(limbs_[2]), -128);
    v += std::ldexp(static_cast<long double>(limbs_[1]), -192);
    return v;
}

double Frac256::to_double() const {
    double v = static_cast<double>(to_long_double());
    // rounding may land on 1.0 for values within 2^-54 of one
    return v < 1.0 ? v : std::nextafter(1.0, 0.0);
}

long double Frac256::to_signed_long_double() const {
    if (limbs_[3] >> 63) return -(-*this).to_long_double();
    return to_long_double();
}

double Frac256::to_signed_double() const { return static_cast<double>(to_signed_long_double()); }

std::strong_ordering Frac256::operator<=>(const Frac256& rhs) const {
    for (int i = 3; i >= 0; --i) {
        if (limbs_[i] != rhs.limbs_[i]) return limbs_[i] <=> rhs.limbs_[i];
    }
    return std::strong_ordering::equal;
}

FixedPointReal FixedPointReal::from_double(double x) {
    if (!std::isfinite(x)) throw InvalidConfig("non-finite value cannot be converted to fixed point");
    if (x == 0.0) return {};
    int exp = 0;
    double mant = std::frexp(x, &exp);
    auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
    int shift = exp - 53 + 256;
    mpz_class scaled = mpz_from_i64(m);
    std::uint64_t ulp = 0;
    if (shift >= 0) {
        mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
    } else {
        mpz_class r;
        mpz_fdiv_r_2exp(r.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
        mpz_fdiv_q_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
        ulp = (r != 0) ? 1 : 0;
    }
    return from_scaled(scaled, ulp);
}

FixedPointReal FixedPointReal::from_rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw InvalidConfig("zero denominator");
    mpz_class n = num;
    mpz_class d = den;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    mpz_class q, r;
    mpz_class shifted = n * two_pow_256();
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), shifted.get_mpz_t(), d.get_mpz_t());
    return from_scaled(q, r != 0 ? 1 : 0);
}

FixedPointReal FixedPointReal::from_rational(std::int64_t num, std::int64_t den) {
    return from_rational(mpz_from_i64(num), mpz_from_i64(den));
}

FixedPointReal FixedPointReal::named(const std::string& name) {
    Mpfr x(kNamedPrecision);
    if (name == "pi") {
        mpfr_const_pi(x.x, MPFR_RNDD);
    } else if (name == "e") {
        mpfr_set_ui(x.x, 1, MPFR_RNDN);
        mpfr_exp(x.x, x.x, MPFR_RNDD);
    } else if (name == "golden") {
        mpfr_set_ui(x.x, 5, MPFR_RNDN);
        mpfr_sqrt(x.x, x.x, MPFR_RNDD);
        mpfr_add_ui(x.x, x.x, 1, MPFR_RNDD);
        mpfr_div_2ui(x.x, x.x, 1, MPFR_RNDD);
    } else if (name.rfind("sqrt:", 0) == 0) {
        const std::string arg = name.substr(5);
        if (arg.empty() || arg.find_first_not_of("0123456789") != std::string::npos) {
            throw InvalidConfig("sqrt: expects a non-negative integer, got '" + arg + "'");
        }
        mpz_class k(arg);
        if (mpz_perfect_square_p(k.get_mpz_t())) {
            mpz_class root;
            mpz_sqrt(root.get_mpz_t(), k.get_mpz_t());
            return from_scaled(root * two_pow_256(), 0);
        }
        mpfr_set_z(x.x, k.get_mpz_t(), MPFR_RNDN);
        mpfr_sqrt(x.x, x.x, MPFR_RNDD);
    } else {
        throw InvalidConfig("unknown named constant '" + name + "'");
    }
    return from_mpfr_down(x);
}

FixedPointReal FixedPointReal::operator+(const FixedPointReal& rhs) const {
    return from_scaled(scaled() + rhs.scaled(), ulp_error_ + rhs.ulp_error_);
}

FixedPointReal FixedPointReal::operator-() const {
    // true value in [-repr - err, -repr]
    mpz_class s = -scaled();
    s -= static_cast<unsigned long>(ulp_error_);
    return from_scaled(s, ulp_error_);
}

FixedPointReal FixedPointReal::operator-(const FixedPointReal& rhs) const { return *this + (-rhs); }

FixedPointReal FixedPointReal::mul(std::int64_t k) const {
    mpz_class s = scaled() * mpz_from_i64(k);
    std::uint64_t mag = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
    if (k < 0) {
        mpz_class err;
        mpz_set_ui(err.get_mpz_t(), ulp_error_);
        s -= err * mag;
    }
    return from_scaled(s, ulp_error_ * mag);
}

mpz_class FixedPointReal::scaled() const { return mpz_from_i64(integer_part_) * two_pow_256() + mpz_from_frac(frac_); }

long double FixedPointReal::to_long_double() const {
    return static_cast<long double>(integer_part_) + frac_.to_long_double();
}

RealSpec parse_real_spec(const std::string& text) {
    RealSpec spec;
    spec.text = text;
    if (text == "pi" || text == "e" || text == "golden" || text.rfind("sqrt:", 0) == 0) {
        spec.kind = RealSpec::Kind::Named;
        spec.value = FixedPointReal::named(text);
        return spec;
    }
    static const std::regex ratio_re(R"(^([+-]?\d+)/(\d+)$)");
    static const std::regex decimal_re(R"(^([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?$)");
    std::smatch m;
    if (std::regex_match(text, m, ratio_re)) {
        mpz_class num(m[1].str().front() == '+' ? m[1].str().substr(1) : m[1].str(), 10);
        mpz_class den(m[2].str(), 10);
        if (den == 0) throw InvalidConfig("zero denominator in '" + text + "'");
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (g != 0) {
            num /= g;
            den /= g;
        }
        spec.kind = RealSpec::Kind::Rational;
        spec.value = FixedPointReal::from_rational(num, den);
        spec.rational = std::make_pair(num, den);
        return spec;
    }
    if (std::regex_match(text, m, decimal_re) && (m[2].length() > 0 || m[3].length() > 0)) {
        const std::string digits = m[2].str() + m[3].str();
        mpz_class num(digits.empty() ? std::string("0") : digits, 10);
        if (m[1].str() == "-") num = -num;
        long exponent = -static_cast<long>(m[3].length());
        if (m[4].matched) {
            if (m[4].length() > 6) throw InvalidConfig("exponent too large in '" + text + "'");
            exponent += std::stol(m[4].str());
        }
        mpz_class den = 1;
        mpz_class ten_pow;
        mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
        if (exponent >= 0) {
            num *= ten_pow;
        } else {
            den = ten_pow;
        }
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (g != 0) {
            num /= g;
            den /= g;
        }
        spec.kind = RealSpec::Kind::Decimal;
        spec.value = FixedPointReal::from_rational(num, den);
        spec.rational = std::make_pair(num, den);
        return spec;
    }
    throw InvalidConfig("cannot parse real number spec '" + text + "'");
}

}  // namespace psdist

#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "psdist/errors.hpp"
#include "psdist/fixed_point.hpp"

using namespace psdist;

namespace {

oracle::Big big(const Frac256& f) { return oracle::from_limbs(f.limbs().data()); }

oracle::Big big(const FixedPointReal& x) { return oracle::Big(x.integer_part()) + big(x.frac()); }

}  // namespace

TEST_CASE("Frac256 arithmetic wraps modulo one") {
    const Frac256 half = Frac256::half();
    CHECK((half + half).is_zero());
    CHECK(half.to_double() == 0.5);
    const Frac256 q = Frac256::from_double(0.75);
    CHECK((q + q).to_double() == 0.5);
    CHECK((-q).to_double() == 0.25);
    CHECK(q.distance().to_double() == 0.25);
    std::uint64_t carry = 0;
    CHECK(q.mul(5, &carry).to_double() == 0.75);
    CHECK(carry == 3);
    CHECK(Frac256::from_double(-0.25).to_double() == 0.75);
    CHECK(Frac256::from_double(0.875).to_signed_double() == -0.125);
}

TEST_CASE("from_double is exact") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1e9, 1e9);
    for (int i = 0; i < 1000; ++i) {
        const double x = u(rng);
        const auto fx = FixedPointReal::from_double(x);
        CHECK(fx.is_exact());
        CHECK(big(fx) == oracle::Big(x));
    }
}

TEST_CASE("named constants match the oracle to the stated enclosure") {
    for (const std::string name : {"sqrt:2", "sqrt:3", "sqrt:7", "golden", "pi", "e"}) {
        const auto x = FixedPointReal::named(name);
        const oracle::Big want = oracle::named(name);
        const oracle::Big lo = big(x);
        const oracle::Big hi = lo + boost::multiprecision::ldexp(oracle::Big(x.ulp_error()), -256);
        CHECK(lo <= want);
        CHECK(want <= hi);
    }
    CHECK(FixedPointReal::named("sqrt:49").is_exact());
    CHECK(FixedPointReal::named("sqrt:49").integer_part() == 7);
    CHECK_THROWS_AS(FixedPointReal::named("tau"), InvalidConfig);
}

TEST_CASE("alpha p mod 1 agrees with the oracle within 2^-100 for p <= 2^40") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::uint64_t> pd(1, std::uint64_t{1} << 40);
    const oracle::Big tol = boost::multiprecision::ldexp(oracle::Big(1), -100);
    for (const std::string name : {"sqrt:2", "golden", "pi", "e"}) {
        const auto alpha = FixedPointReal::named(name);
        const oracle::Big a = oracle::named(name);
        const auto beta = FixedPointReal::from_rational(1, 3);
        const oracle::Big b = oracle::Big(1) / 3;
        for (int i = 0; i < 5000; ++i) {
            const std::uint64_t p = i == 0 ? (std::uint64_t{1} << 40) : pd(rng);
            const oracle::Big got = big(alpha.frac_affine(p, beta.frac()));
            const oracle::Big want = oracle::frac(a * p + b);
            oracle::Big diff = boost::multiprecision::abs(got - want);
            diff = std::min(diff, 1 - diff);  // compare on the circle
            CHECK(diff < tol);
        }
    }
}

TEST_CASE("from_rational") {
    const auto third = FixedPointReal::from_rational(1, 3);
    CHECK_FALSE(third.is_exact());
    CHECK(std::abs(third.to_double() - 1.0 / 3.0) < 1e-16);
    const auto neg = FixedPointReal::from_rational(-7, 4);
    CHECK(neg.is_exact());
    CHECK(neg.integer_part() == -2);
    CHECK(neg.frac().to_double() == 0.25);
    CHECK((third.mul(3)).to_double() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("parse_real_spec") {
    auto s = parse_real_spec("0.95");
    CHECK(s.kind == RealSpec::Kind::Decimal);
    REQUIRE(s.is_rational());
    CHECK(s.rational->first == 19);
    CHECK(s.rational->second == 20);
    CHECK(s.text == "0.95");

    s = parse_real_spec("-1/4");
    CHECK(s.kind == RealSpec::Kind::Rational);
    CHECK(s.value.to_double() == -0.25);
    CHECK(s.value.is_exact());

    s = parse_real_spec("1e-3");
    CHECK(s.value.to_double() == doctest::Approx(0.001).epsilon(1e-15));
    s = parse_real_spec("007");
    CHECK(s.value.to_double() == 7.0);
    s = parse_real_spec("sqrt:2");
    CHECK(s.kind == RealSpec::Kind::Named);
    CHECK_FALSE(s.is_rational());

    for (const std::string bad : {"", "abc", "1/0", "1.2.3", "sqrt:", "--1", "."}) {
        CHECK_THROWS_AS(parse_real_spec(bad), InvalidConfig);
    }
}

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "psdist/core_arith.hpp"
#include "psdist/errors.hpp"

using namespace psdist;

TEST_CASE("frac") {
    CHECK(frac(2.25) == 0.25);
    CHECK(frac(-0.3) == doctest::Approx(0.7).epsilon(1e-15));
    const double x = 10.0 * std::sqrt(2.0);
    const auto want = oracle::frac(10 * oracle::named("sqrt:2"));
    CHECK(std::abs(frac(x) - static_cast<double>(want)) < 1e-14);
}

TEST_CASE("dist_nearest_int") {
    CHECK(dist_nearest_int(3.2) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(dist_nearest_int(-1.7) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(dist_nearest_int(0.5) == 0.5);
}

TEST_CASE("frac and distance symmetries") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 100000; ++i) {
        const double t = u(rng);
        if (t == std::floor(t)) continue;
        const double s = frac(t) + frac(-t);
        CHECK((s == 0.0 || s == 1.0));
        CHECK(dist_nearest_int(t) == dist_nearest_int(-t));
        CHECK(frac(t) >= 0.0);
        CHECK(frac(t) < 1.0);
    }
}

TEST_CASE("e at quarter points") {
    CHECK(e(0.0) == std::complex<double>(1.0, 0.0));
    CHECK(e(0.5) == std::complex<double>(-1.0, 0.0));
    CHECK(e(0.25) == std::complex<double>(0.0, 1.0));
}

TEST_CASE("e is unimodular and periodic") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int i = 0; i < 20000; ++i) {
        const double t = u(rng);
        CHECK(std::abs(std::abs(e(t)) - 1.0) < 1e-14);
        CHECK(std::abs(e(t + 1.0) - e(t)) < 1e-12);
        const double r = std::ldexp(std::floor(std::ldexp(u(rng) / 200.0, 50)), -50);
        CHECK(std::conj(e_reduced(-r)) == e_reduced(r));
    }
}

TEST_CASE("pow_floor examples") {
    const auto third = pow_floor(8, Exponent::ratio(1, 3));
    CHECK(third.value == 2);
    CHECK(third.certified);
    CHECK(third.exact_integer);

    // the double nearest 1/3 is slightly below it, so 8^theta is slightly below 2
    const auto third_d = pow_floor(8, Exponent::real(1.0 / 3.0));
    CHECK(third_d.value == 1);
    CHECK(third_d.certified);

    CHECK(pow_floor(2, Exponent::real(1.0)).value == 2);
    CHECK(pow_floor(10, Exponent::ratio(100, 93)).value == 11);
    CHECK(pow_floor(10, Exponent::real(1.0 / 0.93)).value == 11);
    CHECK(oracle::floor_pow_rational(10, 100, 93) == 11);
}

TEST_CASE("pow_floor errors") {
    CHECK_THROWS_AS(pow_floor(0, Exponent::real(0.5)), std::domain_error);
    CHECK_THROWS_AS(pow_floor(5, Exponent::real(2.0)), std::domain_error);
    CHECK_THROWS_AS(pow_floor(5, Exponent::real(0.0)), std::domain_error);

    // an exact integer power reached through a non-rational exponent cannot be decided
    Exponent half;
    half.value = 0.5;
    CHECK_THROWS_AS(pow_floor(4, half), PrecisionExhausted);
    CHECK(pow_floor(4, Exponent::ratio(1, 2)).value == 2);
    CHECK(pow_floor(4, Exponent::ratio(1, 2)).exact_integer);
}

TEST_CASE("pow_floor boundary cases at rational exponents") {
    // perfect powers sit exactly on the boundary
    for (std::uint64_t k = 2; k < 2000; ++k) {
        const std::uint64_t n = k * k * k;
        const auto f = pow_floor(n, Exponent::ratio(1, 3));
        CHECK(f.value == static_cast<std::int64_t>(k));
        CHECK(f.exact_integer);
        CHECK(pow_floor(n - 1, Exponent::ratio(1, 3)).value == static_cast<std::int64_t>(k - 1));
    }
    for (std::uint64_t n = 1; n < 20000; ++n) {
        CHECK(pow_floor(n, Exponent::ratio(19, 20)).value == static_cast<std::int64_t>(oracle::floor_pow_rational(n, 19, 20)));
        CHECK(pow_floor(n, Exponent::ratio(20, 19)).value == static_cast<std::int64_t>(oracle::floor_pow_rational(n, 20, 19)));
    }
}

TEST_CASE("pow_floor agrees with the 160-bit oracle on 10^6 random inputs") {
    namespace mp = boost::multiprecision;
    using Mid = mp::number<mp::cpp_bin_float<160, mp::digit_base_2>, mp::et_off>;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> log_n(0.0, std::log(1e12));
    std::uniform_real_distribution<double> theta_d(0.01, 1.99);
    int mismatches = 0;
    for (int i = 0; i < 1000000; ++i) {
        auto n = static_cast<std::uint64_t>(std::exp(log_n(rng)));
        n = std::max<std::uint64_t>(n, 1);
        double theta = theta_d(rng);
        if (static_cast<double>(n) > std::pow(9e18, 1.0 / theta)) theta = theta / 2;
        const auto got = pow_floor(n, Exponent::real(theta));
        REQUIRE(got.certified);
        const Mid x = mp::pow(Mid(n), Mid(theta));
        const auto k = static_cast<std::int64_t>(mp::floor(x));
        // k <= n^theta < k + 1, i.e. k^(1/theta) <= n < (k+1)^(1/theta)
        if (got.value != k) ++mismatches;
    }
    CHECK(mismatches == 0);
}

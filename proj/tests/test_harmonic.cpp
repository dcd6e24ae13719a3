#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "psdist/errors.hpp"
#include "psdist/harmonic.hpp"
#include "psdist/lemma_checks.hpp"

using namespace psdist;

TEST_CASE("psi examples") {
    CHECK(psi(0.75) == 0.25);
    CHECK(psi(0.0) == -0.5);
    CHECK(psi(-0.25) == 0.25);
}

TEST_CASE("psi_truncated examples") {
    for (std::int64_t M : {2, 7, 100, 1001}) {
        CHECK(std::abs(psi_truncated(0.5, M).value) < 1e-14);
        const auto z = psi_truncated(0.0, M);
        CHECK(z.value == 0.0);
        CHECK(z.error_envelope == 1.0);
    }
    const auto q = psi_truncated(0.25, 100);
    CHECK(q.error_envelope == doctest::Approx(0.04));
    CHECK(std::abs(psi(0.25) - q.value) <= q.error_envelope);
    CHECK_THROWS_AS(psi_truncated(0.1, 1), std::domain_error);
}

TEST_CASE("psi_truncated against a direct long double sum") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> td(-10, 10);
    for (int i = 0; i < 200; ++i) {
        const double t = td(rng);
        long double s = 0;
        for (int m = 1; m <= 500; ++m) s -= std::sin(2 * std::numbers::pi_v<long double> * m * t) / (std::numbers::pi_v<long double> * m);
        CHECK(psi_truncated(t, 500).value == doctest::Approx(static_cast<double>(s)).epsilon(1e-9));
    }
}

TEST_CASE("psi truncation constant over 10^5 samples") {
    const auto r = lemma_check_psi(100000, 0);
    MESSAGE("C_emp(psi) = " << r.max_ratio);
    CHECK(r.max_ratio <= 1.1);
}

TEST_CASE("f_delta examples") {
    CHECK(f_delta(0.0, 0.1) == 1);
    CHECK(f_delta(0.3, 0.1) == 0);
    CHECK(f_delta(1.05, 0.1) == 1);
    CHECK(f_delta(-0.1, 0.1) == 1);
    CHECK(f_delta(0.1, 0.1) == 0);
    for (double bad : {0.0, -0.1, 0.25, 0.3}) CHECK_THROWS_AS(f_delta(0.0, bad), InvalidDelta);
    // the double nearest 0.95 sits just below it, so it lands outside [-0.05, 0.05)
    CHECK(f_delta(Frac256::from_double(0.95), Frac256::from_double(0.05)) == 0);
    CHECK(f_delta(Frac256::from_double(0.96), Frac256::from_double(0.05)) == 1);
    CHECK(f_delta(Frac256::from_double(0.05), Frac256::from_double(0.05)) == 0);
}

TEST_CASE("f_delta_fourier examples") {
    const auto edge = f_delta_fourier(0.1, 0.1, 50);
    CHECK(edge.error_envelope >= 1.0);

    const auto mid = f_delta_fourier(0.5, 0.1, 200);
    CHECK(std::abs(f_delta(0.5, 0.1) - 0.2 - mid.value) <= 1.1 * mid.error_envelope);

    // each pair contributes 2 sin(2 pi h delta)/(pi h) cos(2 pi h theta); |coefficient| <= min(2 delta, 1/(pi h))
    for (std::int64_t h = 1; h < 200; ++h) {
        const double step = f_delta_fourier(0.0, 0.07, h).value - (h > 1 ? f_delta_fourier(0.0, 0.07, h - 1).value : 0.0);
        CHECK(std::abs(step) / 2 <= std::min(2 * 0.07, 1.0 / (std::numbers::pi * h)) + 1e-12);
    }
}

TEST_CASE("f_delta_fourier constant away from the edges is stable in H") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0, 1), du(0.001, 0.249);
    std::vector<double> worst;
    for (std::int64_t H : {10, 100, 1000}) {
        double w = 0;
        for (int i = 0; i < 3000; ++i) {
            const double th = u(rng), d = du(rng);
            if (dist_nearest_int(th + d) < 1.0 / H || dist_nearest_int(th - d) < 1.0 / H) continue;
            const auto r = f_delta_fourier(th, d, H);
            w = std::max(w, std::abs(f_delta(th, d) - 2 * d - r.value) / r.error_envelope);
        }
        worst.push_back(w);
        MESSAGE("H=" << H << " C_emp(F)=" << w);
    }
    CHECK(*std::max_element(worst.begin(), worst.end()) <= 1.1);
    CHECK(*std::max_element(worst.begin(), worst.end()) / *std::min_element(worst.begin(), worst.end()) < 2.0);
}

TEST_CASE("sigma_sum") {
    const auto alpha = FixedPointReal::named("sqrt:2");
    const auto beta = FixedPointReal::from_int(0);
    const oracle::Big a = oracle::named("sqrt:2");

    const auto one = sigma_sum(1, alpha, beta, 0.05, 3, {7, 5});
    const double t1 = std::min(1.0, 1.0 / (3 * static_cast<double>(oracle::dist(a + oracle::Big(0.05)))));
    const double t2 = std::min(1.0, 1.0 / (3 * static_cast<double>(oracle::dist(a - oracle::Big(0.05)))));
    CHECK(one.value == doctest::Approx(t1 + t2).epsilon(1e-12));

    CHECK(sigma_sum(1000, alpha, beta, 0.05, 1, {7, 5}).value <= 2000.0);

    const auto big = sigma_sum(10000, alpha, beta, 0.05, 3, {17, 12});
    double want = 0;
    for (int n = 1; n <= 10000; ++n) {
        want += std::min(1.0, 1.0 / (3 * static_cast<double>(oracle::dist(a * n + oracle::Big(0.05)))));
        want += std::min(1.0, 1.0 / (3 * static_cast<double>(oracle::dist(a * n - oracle::Big(0.05)))));
    }
    CHECK(big.value == doctest::Approx(want).epsilon(1e-10));
    CHECK(big.bound == doctest::Approx(10000 / std::sqrt(12.0) * std::log(10000.0)));
    MESSAGE("sigma ratio N=10^4: " << big.ratio);
}

TEST_CASE("sigma_sum is dominated by two min-sums") {
    // min(1, 1/(H‖x‖)) = (1/H) min(H, 1/‖x‖)
    const auto alpha = FixedPointReal::named("golden");
    const auto beta = FixedPointReal::from_rational(1, 7);
    const double delta = 0.03;
    const std::int64_t H = 5;
    const auto s = sigma_sum(5000, alpha, beta, delta, H, {13, 8});
    const auto plus = min_sum(5000, H, alpha, beta + FixedPointReal::from_double(delta), {13, 8});
    const auto minus = min_sum(5000, H, alpha, beta - FixedPointReal::from_double(delta), {13, 8});
    CHECK(s.value <= (plus.value + minus.value) / H * (1 + 1e-12));
    CHECK(s.value >= (plus.value + minus.value) / H * (1 - 1e-9));
}

TEST_CASE("xi_sum") {
    const auto g = Exponent::ratio(19, 20);
    const double M = std::pow(2000.0, (15 - 14 * 0.95) / 26);
    const auto r = xi_sum(1000, g, std::max(M, 2.0));
    double want = 0;
    for (int n = 1001; n <= 2000; ++n) {
        const double d = static_cast<double>(oracle::dist(boost::multiprecision::pow(oracle::Big(n), oracle::Big(19) / 20)));
        want += std::min(1.0, 1.0 / (std::max(M, 2.0) * d));
    }
    CHECK(r.value == doctest::Approx(want).epsilon(1e-9));
    CHECK(r.value <= 1000.0);

    // large M drives the sum to zero
    CHECK(xi_sum(1000, g, 1e15).value < 1e-6);
}

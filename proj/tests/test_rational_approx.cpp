#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "psdist/rational_approx.hpp"

using namespace psdist;

namespace {

/// Best approximations of the second kind with q <= q_max, a != 0:
/// the q for which ‖q alpha‖ beats every smaller denominator.
std::vector<Convergent> brute_best(const oracle::Big& alpha, std::int64_t q_max) {
    std::vector<Convergent> out;
    oracle::Big best = 1;
    for (std::int64_t q = 1; q <= q_max; ++q) {
        const oracle::Big d = oracle::dist(alpha * q);
        if (d < best) {
            best = d;
            const auto a = static_cast<std::int64_t>(boost::multiprecision::round(alpha * q));
            if (a != 0) out.push_back({a, q});
        }
    }
    return out;
}

}  // namespace

TEST_CASE("convergents examples") {
    const auto golden = convergents(FixedPointReal::named("golden"), 5);
    CHECK(golden.convergents == std::vector<Convergent>{{2, 1}, {3, 2}, {5, 3}, {8, 5}});
    CHECK(golden.termination == CfTermination::ReachedLimit);
    CHECK(golden.convergents == brute_best(oracle::named("golden"), 5));

    const auto root2 = convergents(FixedPointReal::named("sqrt:2"), 12);
    CHECK(root2.convergents == std::vector<Convergent>{{1, 1}, {3, 2}, {7, 5}, {17, 12}});

    const auto half = convergents(FixedPointReal::from_rational(1, 2), 10);
    CHECK(half.rational_input());
    REQUIRE_FALSE(half.convergents.empty());
    CHECK(half.convergents.back() == Convergent{1, 2});
}

TEST_CASE("convergents match brute-force best approximations on 100 random alpha") {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> kd(2, 5000);
    int compared = 0;
    while (compared < 100) {
        const int k = kd(rng);
        const int r = static_cast<int>(std::sqrt(k));
        if (r * r == k) continue;
        const std::string name = "sqrt:" + std::to_string(k);
        const auto list = convergents(FixedPointReal::named(name), 1000);
        CHECK(list.termination == CfTermination::ReachedLimit);
        CHECK(list.convergents == brute_best(oracle::named(name), 1000));
        for (const auto& c : list.convergents) {
            CHECK(std::gcd(c.a, c.q) == 1);
            CHECK(verify_convergent(FixedPointReal::named(name), c));
        }
        ++compared;
    }
}

TEST_CASE("a precision-limited input stops instead of inventing terms") {
    // 1/3 held to 256 bits is an interval around 1/3, whose ends expand as [0; 3] and [0; 2, 1, ...]
    const auto list = convergents(FixedPointReal::from_rational(1, 3), std::int64_t{1} << 62);
    CHECK(list.termination == CfTermination::PrecisionLimit);
    CHECK(list.convergents.empty());

    const auto exact = convergents(mpz_class(1), mpz_class(3), std::int64_t{1} << 62);
    CHECK(exact.termination == CfTermination::RationalInput);
    CHECK(exact.convergents == std::vector<Convergent>{{1, 3}});
    const auto pi_ish = convergents(mpz_class(355), mpz_class(113), 1000);
    CHECK(pi_ish.rational_input());
    CHECK(pi_ish.convergents == std::vector<Convergent>{{3, 1}, {22, 7}, {355, 113}});
    CHECK(convergents(mpz_class(355), mpz_class(113), 100).termination == CfTermination::ReachedLimit);
}

TEST_CASE("dirichlet_approx examples") {
    const auto pi = dirichlet_approx(FixedPointReal::named("pi"), 10);
    CHECK(pi.a_h == 22);
    CHECK(pi.q_h == 7);
    CHECK(verify_dirichlet(FixedPointReal::named("pi"), pi));

    const auto half = dirichlet_approx(FixedPointReal::from_rational(1, 2), 3);
    CHECK(half.a_h == 1);
    CHECK(half.q_h == 2);

    const auto r2 = dirichlet_approx(FixedPointReal::named("sqrt:2"), 10);
    CHECK(r2.a_h == 7);
    CHECK(r2.q_h == 5);
}

TEST_CASE("dirichlet_approx satisfies its inequality on random inputs") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> qd(1, 100000);
    std::uniform_int_distribution<int> kd(2, 1000);
    for (int i = 0; i < 500; ++i) {
        const auto x = FixedPointReal::named("sqrt:" + std::to_string(kd(rng))).mul(kd(rng));
        const auto Q = qd(rng);
        const auto d = dirichlet_approx(x, Q);
        CHECK(d.q_h <= Q);
        CHECK(d.q_h >= 1);
        CHECK(std::gcd(d.a_h, d.q_h) == 1);
        CHECK(verify_dirichlet(x, d));
    }
}

TEST_CASE("qh_window_audit") {
    const auto r2 = qh_window_audit(FixedPointReal::named("sqrt:2"), {17, 12}, 3);
    CHECK(r2.rows.size() == 3);
    CHECK(r2.violations == 0);
    const auto golden = qh_window_audit(FixedPointReal::named("golden"), {8, 5}, 2);
    CHECK(golden.violations == 0);
    const auto one = qh_window_audit(FixedPointReal::named("pi"), {22, 7}, 1);
    REQUIRE(one.rows.size() == 1);
    CHECK(one.rows[0].approx.q_h <= 49);
}

TEST_CASE("min_sum examples") {
    const auto alpha = FixedPointReal::named("sqrt:2");
    const auto beta = FixedPointReal::from_int(0);
    const auto one = min_sum(1, 10.0, alpha, beta, {7, 5});
    const double d = static_cast<double>(oracle::dist(oracle::named("sqrt:2")));
    CHECK(one.value == doctest::Approx(std::min(10.0, 1.0 / d)).epsilon(1e-12));

    const auto y1 = min_sum(1000, 1.0, alpha, beta, {7, 5});
    CHECK(y1.value <= 1000.0);

    // direct oracle for X=100, Y=10
    const auto r = min_sum(100, 10.0, alpha, beta, {7, 5});
    double want = 0;
    for (int n = 1; n <= 100; ++n) {
        const double dn = static_cast<double>(oracle::dist(oracle::named("sqrt:2") * n));
        want += std::min(10.0, 1.0 / dn);
    }
    CHECK(r.value == doctest::Approx(want).epsilon(1e-12));
    const double bound = 100.0 * 10.0 / 5 + 10.0 + (100.0 + 5) * std::log(10.0);
    CHECK(r.bound == doctest::Approx(bound).epsilon(1e-12));
    CHECK(r.ratio == doctest::Approx(want / bound).epsilon(1e-12));
}

TEST_CASE("min_sum empirical constant is stable across decades") {
    const auto alpha = FixedPointReal::named("sqrt:2");
    const auto beta = FixedPointReal::from_int(0);
    const auto conv = convergents(alpha, 1000).convergents;
    std::vector<double> worst;
    for (std::uint64_t X : {1000ULL, 10000ULL, 100000ULL}) {
        double w = 0;
        for (double Y : {1.0, 10.0, 100.0}) {
            for (const auto& c : conv) w = std::max(w, min_sum(X, Y, alpha, beta, c).ratio);
        }
        worst.push_back(w);
        MESSAGE("X=" << X << " C_emp=" << w);
    }
    const double hi = *std::max_element(worst.begin(), worst.end());
    const double lo = *std::min_element(worst.begin(), worst.end());
    CHECK(hi / lo < 2.0);
}

// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Each criterion builds a JSON report; the determinism check reruns 1-8 and
// compares the serialized reports byte for byte.
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>

#include "psdist/expsums.hpp"
#include "psdist/gamma_engine.hpp"
#include "psdist/lemma_checks.hpp"
#include "psdist/ps_primes.hpp"
#include "psdist/rational_approx.hpp"
#include "psdist/report.hpp"

using namespace psdist;

namespace {

// tolerances and runtime limits
constexpr double kVaughanRelTol = 1e-9;
constexpr double kPsiConstant = 1.1;
constexpr double kDensitySpread = 2.0;
constexpr double kGammaSplitRelTol = 1e-9;
constexpr double kDiscrepancyCeiling = 0.2;
constexpr double kLemma2RatioCeiling = 1.0;
constexpr std::uint64_t kSeed = 0;

struct Outcome {
    bool pass = false;
    std::string detail;
    Json report;
};

struct Criterion {
    int id;
    double time_limit;  // seconds
    std::function<Outcome()> run;
};

Outcome vaughan_identity() {
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    Json rows = Json::array();
    for (int i = 0; i < 50; ++i) {
        const double v = 2.0 + 8.0 * unit(rng);
        const auto v2 = static_cast<std::uint64_t>(std::ceil(v * v));
        const std::uint64_t N1 = v2 + static_cast<std::uint64_t>(unit(rng) * (50000 - v2));
        const std::uint64_t N2 = std::min<std::uint64_t>(100000, N1 + 1 + static_cast<std::uint64_t>(unit(rng) * 50000));
        const auto alpha = FixedPointReal::from_double(unit(rng));
        const auto h = static_cast<std::int64_t>(1 + unit(rng) * 20);
        const auto m = static_cast<std::int64_t>(1 + unit(rng) * 5);
        const double g = 0.92 + 0.07 * unit(rng);
        const auto parts = vaughan_decompose(N1, N2, ThetaPhase(alpha, h, m, g), v);
        const double rel = parts.residual / (1.0 + std::abs(parts.direct));
        worst = std::max(worst, rel);
        rows.push_back(Json{{"N1", N1}, {"N2", N2}, {"v", v}, {"residual", parts.residual}, {"relative", rel}});
    }
    return {worst <= kVaughanRelTol, "max relative residual " + format_double(worst), Json{{"instances", rows}, {"max_relative", worst}}};
}

Outcome weyl() {
    const auto r = lemma_check_weyl(1000, kSeed);
    return {r.holds == r.trials, "holds=" + std::to_string(r.holds) + "/" + std::to_string(r.trials),
            Json{{"holds", r.holds}, {"trials", r.trials}, {"max_ratio", r.max_ratio}}};
}

Outcome psi_truncation() {
    const auto r = lemma_check_psi(100000, kSeed);
    return {r.max_ratio <= kPsiConstant, "sup ratio " + format_double(r.max_ratio),
            Json{{"trials", r.trials}, {"max_ratio", r.max_ratio}}};
}

Outcome density() {
    const auto g = Exponent::ratio(19, 20);
    double lo = 1e300, hi = 0.0;
    bool oracle_agrees = true;
    Json rows = Json::array();
    for (std::uint64_t X : {10000ULL, 100000ULL, 1000000ULL}) {
        const auto c = ps_count(X, g);
        const bool same = ps_primes_n_side(X, g).size() == c.count;
        oracle_agrees = oracle_agrees && same;
        lo = std::min(lo, c.ratio);
        hi = std::max(hi, c.ratio);
        rows.push_back(Json{{"X", X}, {"count", c.count}, {"ratio", c.ratio}, {"n_side_agrees", same}});
    }
    const bool pass = lo > 0.0 && hi / lo < kDensitySpread && oracle_agrees;
    return {pass, "ratios in [" + format_double(lo) + ", " + format_double(hi) + "]", Json{{"rows", rows}, {"spread", hi / lo}}};
}

Outcome dual_enumeration() {
    bool all = true;
    Json rows = Json::array();
    for (auto [num, den] : {std::pair{93, 100}, std::pair{19, 20}, std::pair{97, 100}}) {
        const auto g = Exponent::ratio(num, den);
        const auto p_side = ps_primes_p_side(1000000, g);
        const bool eq = p_side == ps_primes_n_side(1000000, g);
        all = all && eq;
        rows.push_back(Json{{"gamma", std::to_string(num) + "/" + std::to_string(den)}, {"size", p_side.size()}, {"equal", eq}});
    }
    return {all, all ? "sets equal for 0.93, 0.95, 0.97" : "set mismatch", Json{{"rows", rows}}};
}

Outcome gamma_decomposition() {
    const auto p = desk_params(100000, 0.05, 0.95);
    const auto r = gamma_sum(p, FixedPointReal::named("sqrt:2"), FixedPointReal::from_int(0), Exponent::ratio(19, 20));
    const double rel = r.identity_residual / std::max(1.0, std::abs(r.gamma_sum));
    const bool pass = rel <= kGammaSplitRelTol && r.floor_identity_failures == 0;
    return {pass, "relative residual " + format_double(rel) + ", floor failures " + std::to_string(r.floor_identity_failures),
            Json{{"params", to_json(p)}, {"report", to_json(r)}}};
}

Outcome equidistribution() {
    const auto g = Exponent::ratio(19, 20);
    std::vector<std::pair<ParamSet, GammaReport>> runs;
    for (double N : {1e5, 1e7}) {
        const auto p = desk_params(N, 0.01, 0.95);
        runs.emplace_back(p, gamma_sum(p, FixedPointReal::named("sqrt:2"), FixedPointReal::from_int(0), g));
    }
    const double small = runs[0].second.discrepancy_ratio, large = runs[1].second.discrepancy_ratio;
    const bool pass = large < small && large < kDiscrepancyCeiling;
    return {pass, "ratio 1e5 " + format_double(small) + ", 1e7 " + format_double(large), Json{{"audit", to_json(envelope_audit(runs))}}};
}

Outcome lemma2() {
    bool pass = true;
    Json rows = Json::array();
    std::string detail;
    for (std::uint64_t X : {10000ULL, 100000ULL, 1000000ULL}) {
        const auto zero = s_of_x(FixedPointReal::from_int(0), X, {0, 1, 1});
        const bool exact = zero.value.real() == chebyshev_theta(X) && zero.value.imag() == 0.0;

        const auto alpha = FixedPointReal::named("sqrt:2");
        const auto q_max = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(X))));
        const auto list = convergents(alpha, q_max);
        const auto approx = as_dirichlet(list.convergents.back());
        const auto s = s_of_x(alpha, X, approx);
        pass = pass && exact && s.ratio <= kLemma2RatioCeiling;
        rows.push_back(Json{{"X", X}, {"alpha_zero_exact", exact}, {"q", approx.q_h}, {"ratio", s.ratio}});
        detail += (detail.empty() ? "" : ", ") + std::string("X=") + std::to_string(X) + " ratio " + format_double(s.ratio) +
                  (exact ? "" : " (alpha=0 mismatch)");
    }
    return {pass, detail, Json{{"rows", rows}}};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, 60, vaughan_identity}, {2, 10, weyl},  {3, 30, psi_truncation},   {4, 120, density},
        {5, 120, dual_enumeration}, {6, 30, gamma_decomposition}, {7, 600, equidistribution}, {8, 120, lemma2},
    };

    bool all = true;
    Json full = Json::object();
    std::vector<std::string> first;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o = c.run();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.time_limit;
        const bool pass = o.pass && in_time;
        all = all && pass;
        std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << "  " << o.detail << "  (" << format_double(std::round(secs * 100) / 100)
                  << " s, limit " << c.time_limit << " s)" << std::endl;
        o.report["pass"] = o.pass;
        first.push_back(o.report.dump());
        full[std::to_string(c.id)] = o.report;
    }

    // determinism: second pass must reproduce every report exactly
    std::size_t differing = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o = criteria[i].run();
        o.report["pass"] = o.pass;
        if (o.report.dump() != first[i]) ++differing;
    }
    const bool deterministic = differing == 0;
    all = all && deterministic;
    std::cout << "criterion 9: " << (deterministic ? "PASS" : "FAIL") << "  " << differing << " of " << criteria.size()
              << " reports differ on rerun" << std::endl;

    if (argc > 1) {
        std::ofstream f(argv[1]);
        f << full.dump(2) << '\n';
    }
    return all ? 0 : 1;
}

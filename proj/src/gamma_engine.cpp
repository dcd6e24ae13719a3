#include "psdist/gamma_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "psdist/errors.hpp"
#include "psdist/harmonic.hpp"
#include "psdist/ps_primes.hpp"
#include "psdist/summation.hpp"

namespace psdist {

namespace {

constexpr double kTheoremLow = 11.0 / 12.0;

bool theorem_range(double g) { return g > kTheoremLow && g < 1.0; }

void fill_from_N(ParamSet& p) {
    p.M = std::pow(p.N, (15.0 - 14.0 * p.gamma) / 26.0);
    p.v = std::pow(p.N, (29.0 - 8.0 * p.gamma) / 52.0);
    p.delta_too_large = p.delta >= 0.25;
    p.in_theorem_range = theorem_range(p.gamma);
}

struct SegmentTotals {
    CompensatedSum hits;
    CompensatedSum mass;
    CompensatedSum g1;
    CompensatedSum g2;
    std::uint64_t primes = 0;
    std::uint64_t ps_primes = 0;
    std::uint64_t hits_count = 0;
    double max_residual = 0.0;
    std::uint64_t failures = 0;
};

}  // namespace

std::string to_string(ParamMode mode) { return mode == ParamMode::Schedule ? "schedule" : "desk"; }

ParamSet schedule_params(std::int64_t q, double gamma, double C) {
    if (q < 2) throw std::domain_error("parameter schedule requires q >= 2");
    if (!(C > 0.0)) throw std::domain_error("parameter schedule requires C > 0");
    if (!(gamma > 0.0 && gamma < 1.0)) throw GammaOutOfRange("gamma must lie in (0, 1)");
    ParamSet p;
    p.mode = ParamMode::Schedule;
    p.q = q;
    p.gamma = gamma;
    p.C = C;
    p.N = std::pow(static_cast<double>(q), 13.0 / (12.0 - 6.0 * gamma));
    p.delta = C * std::pow(p.N, (11.0 - 12.0 * gamma) / 26.0) * std::pow(std::log(p.N), 6);
    auto h = static_cast<std::int64_t>(std::sqrt(static_cast<double>(q)));
    while (h * h > q) --h;
    while ((h + 1) * (h + 1) <= q) ++h;
    p.H = h;
    fill_from_N(p);
    return p;
}

ParamSet derive_params(std::int64_t q, double gamma, double C) {
    if (!theorem_range(gamma)) throw GammaOutOfRange("gamma must lie in (11/12, 1), got " + std::to_string(gamma));
    return schedule_params(q, gamma, C);
}

ParamSet desk_params(double N, double delta, double gamma, std::int64_t H) {
    if (!(N >= 2.0)) throw std::domain_error("desk parameters require N >= 2");
    if (!(gamma > 0.0 && gamma < 1.0)) throw GammaOutOfRange("gamma must lie in (0, 1)");
    ParamSet p;
    p.mode = ParamMode::Desk;
    p.gamma = gamma;
    p.N = N;
    p.delta = delta;
    p.H = H > 0 ? H : static_cast<std::int64_t>(std::floor(std::sqrt(N)));
    fill_from_N(p);
    return p;
}

PrimeWeightParts prime_weight_parts(std::uint64_t p, const Exponent& gamma) {
    const PsWeight w = ps_weight(p, gamma);
    const long double f0 = w.lower.exact_integer ? 0.0L : w.lower.fractional;
    const long double f1 = w.upper.exact_integer ? 0.0L : w.upper.fractional;
    // {-x} = 1 - {x} unless x is an integer
    const long double neg0 = f0 == 0.0L ? 0.0L : 1.0L - f0;
    const long double neg1 = f1 == 0.0L ? 0.0L : 1.0L - f1;
    PrimeWeightParts out;
    out.weight = w.weight;
    out.smooth = static_cast<long double>(w.upper.value - w.lower.value) + (f1 - f0);
    out.psi_diff = neg1 - neg0;
    out.residual = static_cast<long double>(out.weight) - out.smooth - out.psi_diff;
    return out;
}

GammaReport gamma_sum(const ParamSet& params, const FixedPointReal& alpha, const FixedPointReal& beta,
                      const Exponent& gamma, unsigned segment_bits) {
    if (!(params.delta > 0.0 && params.delta < 0.25)) {
        throw InvalidDelta("gamma_sum needs 0 < delta < 1/4, got " + std::to_string(params.delta));
    }
    const auto limit = static_cast<std::uint64_t>(std::floor(params.N));
    const Frac256 delta = Frac256::from_double(params.delta);
    const Frac256 shift = beta.frac();
    const double two_delta = 2.0 * params.delta;

    PrimeSieve sieve(2, limit + 1, segment_bits);
    auto parts = sieve.map_segments<SegmentTotals>([&](const SieveSegment& seg) {
        SegmentTotals t;
        seg.for_each_prime([&](std::uint64_t p) {
            const PrimeWeightParts w = prime_weight_parts(p, gamma);
            const double lp = std::log(static_cast<double>(p));
            const int hit = f_delta(alpha.frac_affine(p, shift), delta);
            const double centred = (hit - two_delta) * lp;
            ++t.primes;
            if (w.weight != 0) {
                ++t.ps_primes;
                t.mass.add(w.weight * lp);
                if (hit) {
                    ++t.hits_count;
                    t.hits.add(w.weight * lp);
                }
            }
            t.g1.add(static_cast<double>(w.smooth) * centred);
            t.g2.add(static_cast<double>(w.psi_diff) * centred);
            const auto res = static_cast<double>(std::fabs(w.residual));
            t.max_residual = std::max(t.max_residual, res);
            if (std::llround(static_cast<double>(w.smooth + w.psi_diff)) != w.weight || res > 1e-9) ++t.failures;
        });
        return t;
    });

    CompensatedSum hits, mass, g1, g2;
    GammaReport r;
    for (const auto& t : parts) {
        hits.add(t.hits);
        mass.add(t.mass);
        g1.add(t.g1);
        g2.add(t.g2);
        r.primes += t.primes;
        r.ps_primes += t.ps_primes;
        r.hits += t.hits_count;
        r.max_floor_identity_residual = std::max(r.max_floor_identity_residual, t.max_residual);
        r.floor_identity_failures += t.failures;
    }
    r.hits_weighted = hits.value();
    r.mass = mass.value();
    r.expected = two_delta * r.mass;
    r.gamma_sum = r.hits_weighted - r.expected;
    r.gamma1 = g1.value();
    r.gamma2 = g2.value();
    r.identity_residual = std::fabs(r.gamma_sum - (r.gamma1 + r.gamma2));
    r.discrepancy_ratio = r.expected > 0.0 ? std::fabs(r.gamma_sum) / r.expected : 0.0;
    const double g = params.gamma;
    r.envelope = std::pow(params.N, (14.0 * g + 11.0) / 26.0) * std::pow(std::log(params.N), 5);
    r.envelope_ratio = std::fabs(r.gamma_sum) / r.envelope;
    if (alpha.is_exact()) r.warnings.emplace_back("alpha is exactly representable, hence rational");
    if (!params.in_theorem_range) r.warnings.emplace_back("gamma outside (11/12, 1): out of theorem range");
    return r;
}

GammaSplit gamma_split(const ParamSet& params, const FixedPointReal& alpha, const FixedPointReal& beta,
                       const Exponent& gamma, unsigned segment_bits) {
    const GammaReport r = gamma_sum(params, alpha, beta, gamma, segment_bits);
    return {r.gamma1, r.gamma2, r.identity_residual};
}

FrakS frak_s(std::int64_t u, std::uint64_t N, double gamma, const FixedPointReal& alpha, unsigned segment_bits) {
    if (u < 1) throw std::domain_error("frak_s requires u >= 1");
    const Frac256 a = alpha.frac();
    const auto H = static_cast<std::size_t>(u);
    PrimeSieve sieve(2, N + 1, segment_bits);
    auto parts = sieve.map_segments<std::vector<ComplexCompensatedSum>>([&](const SieveSegment& seg) {
        std::vector<ComplexCompensatedSum> sums(H);
        seg.for_each_prime([&](std::uint64_t p) {
            const double pd = static_cast<double>(p);
            const double w = std::pow(pd, gamma - 1.0) * std::log(pd);
            const Frac256 base = a.mul(p);
            Frac256 phase = base;
            for (std::size_t h = 0; h < H; ++h) {
                sums[h].add(e_reduced(phase.to_signed_double()) * w);
                phase = phase + base;
            }
        });
        return sums;
    });
    FrakS out;
    out.cumulative.resize(H);
    double running = 0.0;
    for (std::size_t h = 0; h < H; ++h) {
        ComplexCompensatedSum total;
        for (const auto& seg : parts) total.add(seg[h]);
        running += std::abs(total.value());
        out.cumulative[h] = running;
    }
    out.value = out.cumulative.back();
    const double n = static_cast<double>(N);
    out.envelope = static_cast<double>(u) * std::pow(n, (14.0 * gamma + 11.0) / 26.0) * std::pow(std::log(n), 4);
    out.ratio = out.value / out.envelope;
    return out;
}

EnvelopeAudit envelope_audit(const std::vector<std::pair<ParamSet, GammaReport>>& runs) {
    EnvelopeAudit audit;
    for (const auto& [params, report] : runs) {
        EnvelopeRow row{params.N, report.gamma_sum, report.discrepancy_ratio, report.envelope, report.envelope_ratio};
        if (!audit.rows.empty() && row.discrepancy_ratio > audit.rows.back().discrepancy_ratio) audit.nonincreasing = false;
        audit.rows.push_back(row);
    }
    return audit;
}

double chebyshev_theta(std::uint64_t X, unsigned segment_bits) {
    PrimeSieve sieve(2, X + 1, segment_bits);
    auto parts = sieve.map_segments<CompensatedSum>([](const SieveSegment& seg) {
        CompensatedSum s;
        seg.for_each_prime([&](std::uint64_t p) { s.add(std::log(static_cast<double>(p))); });
        return s;
    });
    return reduce_ordered(parts);
}

}  // namespace psdist

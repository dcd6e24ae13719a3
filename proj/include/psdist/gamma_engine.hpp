#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psdist/core_arith.hpp"
#include "psdist/fixed_point.hpp"
#include "psdist/sieve.hpp"

namespace psdist {

enum class ParamMode { Schedule, Desk };

std::string to_string(ParamMode mode);

/// Parameter set {q, g, C, N, delta, H, M, v}.
///
/// Schedule mode derives everything from (q, g, C):
///   N = q^(13/(12-6g)),  delta = C N^((11-12g)/26) log^6 N,  H = [q^1/2],
///   M = N^((15-14g)/26), v = N^((29-8g)/52).
/// Desk mode fixes N and delta directly so equidistribution can be measured
/// at feasible sizes; M and v still follow from N.
struct ParamSet {
    ParamMode mode = ParamMode::Schedule;
    std::int64_t q = 0;  // 0 in desk mode
    double gamma = 0.0;
    double C = 1.0;
    double N = 0.0;
    double delta = 0.0;
    std::int64_t H = 1;
    double M = 0.0;
    double v = 0.0;
    bool delta_too_large = false;  // delta >= 1/4
    bool in_theorem_range = true;  // 11/12 < g < 1
};

/// Schedule formulas for any g in (0, 1); in_theorem_range records whether 11/12 < g < 1.
ParamSet schedule_params(std::int64_t q, double gamma, double C = 1.0);
/// Throws GammaOutOfRange unless 11/12 < g < 1.
ParamSet derive_params(std::int64_t q, double gamma, double C = 1.0);
/// Desk-scale set; H defaults to [sqrt(N)] when not given. Accepts any g in (0, 1).
ParamSet desk_params(double N, double delta, double gamma, std::int64_t H = 0);

struct GammaReport {
    double gamma_sum = 0.0;  // Gamma
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double hits_weighted = 0.0;  // sum F_delta(alpha p + beta) w(p) log p
    double mass = 0.0;           // sum w(p) log p
    double expected = 0.0;       // 2 delta mass
    double discrepancy_ratio = 0.0;
    double envelope = 0.0;  // N^((14g+11)/26) log^5 N
    double envelope_ratio = 0.0;
    double identity_residual = 0.0;  // |Gamma - (Gamma1 + Gamma2)|
    std::uint64_t primes = 0;
    std::uint64_t ps_primes = 0;
    std::uint64_t hits = 0;
    /// largest |w - (smooth + psi difference)| over all primes
    double max_floor_identity_residual = 0.0;
    /// primes where the real-form identity does not round to the integer weight
    std::uint64_t floor_identity_failures = 0;
    std::vector<std::string> warnings;
};

/// Gamma = sum_{p<=N} w(p) (F_delta(alpha p + beta) - 2 delta) log p with
/// w(p) = [-p^g] - [-(p+1)^g], together with its split into
/// Gamma1 (weight (p+1)^g - p^g) and Gamma2 (weight psi(-(p+1)^g) - psi(-p^g)).
/// Segments are reduced in ascending order, so the report is bit-stable for a
/// fixed segment size regardless of thread count.
GammaReport gamma_sum(const ParamSet& params, const FixedPointReal& alpha, const FixedPointReal& beta,
                      const Exponent& gamma, unsigned segment_bits = kDefaultSegmentBits);

struct GammaSplit {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double identity_residual = 0.0;
};

GammaSplit gamma_split(const ParamSet& params, const FixedPointReal& alpha, const FixedPointReal& beta,
                       const Exponent& gamma, unsigned segment_bits = kDefaultSegmentBits);

/// Real-form pieces of the per-prime weight identity
/// [-p^g] - [-(p+1)^g] = ((p+1)^g - p^g) + psi(-(p+1)^g) - psi(-p^g).
struct PrimeWeightParts {
    int weight = 0;
    long double smooth = 0.0L;      // (p+1)^g - p^g
    long double psi_diff = 0.0L;    // psi(-(p+1)^g) - psi(-p^g)
    long double residual = 0.0L;    // weight - smooth - psi_diff
};

PrimeWeightParts prime_weight_parts(std::uint64_t p, const Exponent& gamma);

struct FrakS {
    /// cumulative[u-1] = sum_{h<=u} |sum_{p<=N} p^(g-1) e(alpha h p) log p|
    std::vector<double> cumulative;
    double value = 0.0;     // at the requested u
    double envelope = 0.0;  // u N^((14g+11)/26) log^4 N
    double ratio = 0.0;
};

FrakS frak_s(std::int64_t u, std::uint64_t N, double gamma, const FixedPointReal& alpha,
             unsigned segment_bits = kDefaultSegmentBits);

struct EnvelopeRow {
    double N = 0.0;
    double gamma_sum = 0.0;
    double discrepancy_ratio = 0.0;
    double envelope = 0.0;
    double envelope_ratio = 0.0;
};

struct EnvelopeAudit {
    std::vector<EnvelopeRow> rows;
    /// discrepancy_ratio nonincreasing along the ladder
    bool nonincreasing = true;
};

EnvelopeAudit envelope_audit(const std::vector<std::pair<ParamSet, GammaReport>>& runs);

/// sum_{p<=X} log p with the same segment-ordered reduction as the prime sums.
double chebyshev_theta(std::uint64_t X, unsigned segment_bits = kDefaultSegmentBits);

}  // namespace psdist

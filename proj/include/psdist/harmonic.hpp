#pragma once

#include <cstdint>

#include "psdist/core_arith.hpp"
#include "psdist/fixed_point.hpp"
#include "psdist/rational_approx.hpp"

namespace psdist {

/// Sawtooth psi(t) = {t} - 1/2.
double psi(double t);

struct TruncatedExpansion {
    double value = 0.0;
    std::int64_t truncation = 0;  // M or H
    double error_envelope = 0.0;
};

/// -sum_{1<=|m|<=M} e(mt)/(2 pi i m), folded to -sum_{m<=M} sin(2 pi m t)/(pi m),
/// with envelope min(1, 1/(M‖t‖)). Requires M >= 2.
TruncatedExpansion psi_truncated(double t, std::int64_t M);

/// Periodic indicator of [-delta, delta). Throws InvalidDelta unless 0 < delta < 1/4.
int f_delta(double theta, double delta);
/// Exact form on the fixed-point circle.
int f_delta(const Frac256& theta, const Frac256& delta);

/// Truncated expansion of F_delta(theta) - 2 delta:
/// sum_{1<=|h|<=H} sin(2 pi h delta)/(pi h) e(h theta), envelope
/// min(1, 1/(H‖theta+delta‖)) + min(1, 1/(H‖theta-delta‖)).
TruncatedExpansion f_delta_fourier(double theta, double delta, std::int64_t H);

/// Either side of an inequality being audited: a measured value, a bound and their ratio.
struct SumReport {
    double value = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
};

/// sum_{n<=N} [min(1, 1/(H‖alpha n + beta + delta‖)) + min(1, 1/(H‖alpha n + beta - delta‖))]
/// against N q^(-1/2) log N.
SumReport sigma_sum(std::uint64_t N, const FixedPointReal& alpha, const FixedPointReal& beta, double delta,
                    std::int64_t H, const Convergent& conv);

/// sum_{N1<n<=2N1} min(1, 1/(M‖n^g‖)) against
/// (N/M + N^(g/2) M^(1/2) + N^(1-g/2) M^(-1/2)) log M with N = 2 N1.
SumReport xi_sum(std::uint64_t N1, const Exponent& gamma, double M);

}  // namespace psdist

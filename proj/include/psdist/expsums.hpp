#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "psdist/fixed_point.hpp"
#include "psdist/rational_approx.hpp"
#include "psdist/sieve.hpp"

namespace psdist {

/// A prime exponential sum next to the envelope it is compared with.
struct ExpSumReport {
    std::complex<double> value;
    double abs = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    std::vector<std::pair<std::string, double>> parameters;
};

/// S(X) = sum_{p<=X} e(alpha p) log p against (X q^-1/2 + X^4/5 + X^1/2 q^1/2) log^4 X.
ExpSumReport s_of_x(const FixedPointReal& alpha, std::uint64_t X, const DirichletApprox& approx,
                    unsigned segment_bits = kDefaultSegmentBits);

/// Real phase of n, consumed through e(). Values need not be reduced.
using PhaseFn = std::function<double(std::uint64_t)>;

/// n -> alpha h n - m n^g, reduced to [-1/2, 1/2]. The linear part is exact mod 1;
/// negating both alpha and m negates the phase.
class ThetaPhase {
public:
    ThetaPhase(const FixedPointReal& alpha, std::int64_t h, std::int64_t m, double gamma);
    double operator()(std::uint64_t n) const;

private:
    Frac256 alpha_h_;
    long double m_;
    long double gamma_;
};

/// Theta(N1, N2) = sum_{N1<n<=N2} Lambda(n) e(alpha h n - m n^g) against N2^((g+11)/13) log^3 N2.
ExpSumReport theta_sum(std::uint64_t N1, std::uint64_t N2, const FixedPointReal& alpha, std::int64_t h,
                       std::int64_t m, double gamma);

struct VaughanCoefficients {
    double c = 0.0;      // sum_{rs=d, r<=v, s<=v} mu(r) Lambda(s)
    std::int64_t a = 0;  // sum_{r|d, r<=v} mu(r)
};

VaughanCoefficients vaughan_coefficients(std::uint64_t d, double v);

struct VaughanParts {
    std::complex<double> U1, U2, U3, U4;
    double v = 0.0;
    std::complex<double> reconstruction;  // U1 - U2 - U3 - U4
    std::complex<double> direct;          // sum Lambda(n) e(f(n))
    double residual = 0.0;                // |reconstruction - direct|
};

/// Splits sum_{N1<n<=N2} Lambda(n) e(f(n)) into the type I sums U1..U3 and
/// the bilinear U4 with truncation parameter v. Throws RegimeViolation if N1 < v^2.
VaughanParts vaughan_decompose(std::uint64_t N1, std::uint64_t N2, const PhaseFn& f, double v);

struct InequalityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

/// |sum_{a<n<=b} e(f(n))| against (b-a) lambda^1/2 + lambda^-1/2. Throws InvalidLambda for lambda <= 0.
InequalityCheck van_der_corput_check(const PhaseFn& f, std::int64_t a, std::int64_t b, double lambda);

struct WeylShiftCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// |sum a(n)|^2 <= (1 + (b-a)/Q) sum_{|q|<=Q} (1 - |q|/Q) sum conj(a(n+q)) a(n),
/// for the sequence a(a+1..b) given as `seq` (b - a = seq.size()).
WeylShiftCheck weyl_shift_check(std::span<const std::complex<double>> seq, std::int64_t Q);

struct Q0Choice {
    std::int64_t value = 1;
    double raw = 0.0;
    bool clamped_low = false;
    bool clamped_high = false;
};

/// round(m^-1/3 D^(2/3-g/3) L^(1/3-g/3)) clamped to [1, L/2].
Q0Choice q0_choice(double m, double D, double L, double gamma);

struct Type2Envelope {
    /// D^2 L, m^1/3 D^(4/3+g/3) L^(5/3+g/3), m^-1/2 (DL)^(2-g/2), m^-1/3 D^(5/3-g/3) L^(7/3-g/3)
    std::array<double, 4> terms{};
    double terms_sum = 0.0;
    /// terms_sum^1/2 log^2 N, the envelope for |U4'|
    double value = 0.0;
    /// (N^1/2 v + M^1/6 N^(3/4+g/6)) log^2 N with M = N^((15-14g)/26)
    double follow_up = 0.0;
};

Type2Envelope type2_envelope(double D, double L, double m, double gamma, double v, double N);

struct Type2Sum {
    std::complex<double> value;
    double abs = 0.0;
    Type2Envelope envelope;
    double ratio = 0.0;  // abs / envelope.value
};

/// U4' = sum_{D<d<=2D} a(d) sum_{L<l<=2L, N1<dl<=N2} Lambda(l) e(f(dl)), with a(d) truncated at v.
Type2Sum type2_sum(std::uint64_t D, std::uint64_t L, std::uint64_t N1, std::uint64_t N2, const PhaseFn& f, double v,
                   double m, double gamma);

}  // namespace psdist

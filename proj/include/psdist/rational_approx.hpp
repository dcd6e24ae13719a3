#pragma once

#include <cstdint>
#include <vector>

#include "psdist/fixed_point.hpp"

namespace psdist {

/// a/q with gcd(a, q) = 1, a != 0 and |alpha - a/q| < 1/q^2.
struct Convergent {
    std::int64_t a = 0;
    std::int64_t q = 1;
    bool operator==(const Convergent&) const = default;
};

enum class CfTermination {
    ReachedLimit,    // next denominator exceeds q_max
    RationalInput,   // expansion ended exactly
    PrecisionLimit,  // next partial quotient not determined by the input precision
};

struct ConvergentList {
    std::vector<Convergent> convergents;
    CfTermination termination = CfTermination::ReachedLimit;
    bool rational_input() const { return termination == CfTermination::RationalInput; }
};

/// Convergents of alpha with denominator <= q_max, strictly increasing in q.
///
/// The expansion runs on the whole uncertainty interval of alpha and stops as
/// soon as its two ends disagree on a partial quotient. When two convergents
/// share q = 1 only the better one is kept; a = 0 is never reported.
ConvergentList convergents(const FixedPointReal& alpha, std::int64_t q_max);
/// Exact expansion of num/den; ends with RationalInput once the last quotient is reached.
ConvergentList convergents(const mpz_class& num, const mpz_class& den, std::int64_t q_max);

/// a_h/q_h with q_h <= bound_Q and |x - a_h/q_h| <= 1/(q_h bound_Q).
struct DirichletApprox {
    std::int64_t a_h = 0;
    std::int64_t q_h = 1;
    std::int64_t bound_Q = 1;
};

DirichletApprox dirichlet_approx(const FixedPointReal& x, std::int64_t Q);
/// A convergent read as a Dirichlet approximation with bound_Q = q.
inline DirichletApprox as_dirichlet(const Convergent& c) { return {c.a, c.q, c.q}; }

/// Exact checks over the whole uncertainty interval of the argument.
bool verify_convergent(const FixedPointReal& alpha, const Convergent& c);
bool verify_dirichlet(const FixedPointReal& x, const DirichletApprox& d);

struct QhRow {
    std::int64_t h = 0;
    DirichletApprox approx;
    bool in_window = false;  // q^(1/3) < q_h <= q^2
};

struct QhAudit {
    std::vector<QhRow> rows;
    std::int64_t violations = 0;
};

/// For h = 1..H, approximates alpha*h with bound q^2 and checks q_h > q^(1/3).
QhAudit qh_window_audit(const FixedPointReal& alpha, const Convergent& conv, std::int64_t H);

struct MinSumReport {
    double value = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
};

/// sum_{n<=X} min(Y, 1/‖alpha n + beta‖) against XY/q + Y + (X+q) log 2q.
MinSumReport min_sum(std::uint64_t X, double Y, const FixedPointReal& alpha, const FixedPointReal& beta,
                     const Convergent& conv);

}  // namespace psdist

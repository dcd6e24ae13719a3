#include "psdist/rational_approx.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "psdist/errors.hpp"
#include "psdist/summation.hpp"

namespace psdist {

namespace {

struct Fraction {
    mpz_class num;
    mpz_class den;  // > 0
};

struct Expansion {
    std::vector<std::pair<mpz_class, mpz_class>> convergents;  // every (p_k, q_k) with q_k <= limit
    CfTermination termination = CfTermination::ReachedLimit;
};

mpz_class two_pow_256() {
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), 2, 256);
    return v;
}

std::pair<Fraction, Fraction> enclosure(const FixedPointReal& x) {
    const mpz_class d = two_pow_256();
    const mpz_class s = x.scaled();
    mpz_class err;
    mpz_set_ui(err.get_mpz_t(), x.ulp_error());
    return {Fraction{s, d}, Fraction{s + err, d}};
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Continued fraction run simultaneously on both ends of the enclosure.
Expansion expand(Fraction lo, Fraction hi, const mpz_class& limit) {
    Expansion out;
    mpz_class p1 = 1, q1 = 0, p2 = 0, q2 = 1;
    while (true) {
        const mpz_class a_lo = floor_div(lo.num, lo.den);
        const mpz_class a_hi = floor_div(hi.num, hi.den);
        if (a_lo != a_hi) {
            out.termination = CfTermination::PrecisionLimit;
            return out;
        }
        const mpz_class& a = a_lo;
        mpz_class p = a * p1 + p2;
        mpz_class q = a * q1 + q2;
        if (q > limit) {
            out.termination = CfTermination::ReachedLimit;
            return out;
        }
        out.convergents.emplace_back(p, q);
        p2 = p1;
        q2 = q1;
        p1 = p;
        q1 = q;
        mpz_class r_lo = lo.num - a * lo.den;
        mpz_class r_hi = hi.num - a * hi.den;
        if (r_lo == 0 && r_hi == 0) {
            out.termination = CfTermination::RationalInput;
            return out;
        }
        if (r_lo == 0 || r_hi == 0) {
            // one end is exactly p/q, the other continues: the next quotient is unbounded
            out.termination = CfTermination::PrecisionLimit;
            return out;
        }
        // reciprocal reverses the order of the ends
        Fraction new_lo{hi.den, r_hi};
        Fraction new_hi{lo.den, r_lo};
        lo = std::move(new_lo);
        hi = std::move(new_hi);
    }
}

std::int64_t to_i64(const mpz_class& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("rational approximation component exceeds 64 bits");
    return z.get_si();
}

mpz_class mpz_from(std::int64_t v) {
    mpz_class r;
    mpz_set_si(r.get_mpz_t(), static_cast<long>(v));
    return r;
}

// |x - a/q| * q * scale compared against den, at one end of the enclosure.
int compare_error(const Fraction& x, const mpz_class& a, const mpz_class& q, const mpz_class& scale) {
    mpz_class diff = x.num * q - a * x.den;
    mpz_class lhs = abs(diff) * scale;
    return cmp(lhs, x.den);
}

bool within(const FixedPointReal& x, const mpz_class& a, const mpz_class& q, const mpz_class& scale, bool strict) {
    const auto [lo, hi] = enclosure(x);
    for (const Fraction* end : {&lo, &hi}) {
        const int c = compare_error(*end, a, q, scale);
        if (strict ? c >= 0 : c > 0) return false;
    }
    return true;
}

}  // namespace

bool verify_convergent(const FixedPointReal& alpha, const Convergent& c) {
    if (c.q < 1 || c.a == 0 || std::gcd(c.a, c.q) != 1) return false;
    const mpz_class q = mpz_from(c.q);
    return within(alpha, mpz_from(c.a), q, q, true);
}

bool verify_dirichlet(const FixedPointReal& x, const DirichletApprox& d) {
    if (d.q_h < 1 || d.q_h > d.bound_Q || std::gcd(d.a_h, d.q_h) != 1) return false;
    return within(x, mpz_from(d.a_h), mpz_from(d.q_h), mpz_from(d.bound_Q), false);
}

ConvergentList convergents(const FixedPointReal& alpha, std::int64_t q_max) {
    if (q_max < 1) throw std::domain_error("convergents requires q_max >= 1");
    auto [lo, hi] = enclosure(alpha);
    const Expansion ex = expand(std::move(lo), std::move(hi), mpz_from(q_max));
    ConvergentList out;
    out.termination = ex.termination;
    for (const auto& [p, q] : ex.convergents) {
        if (p == 0) continue;
        Convergent c{to_i64(p), to_i64(q)};
        if (!out.convergents.empty() && out.convergents.back().q == c.q) out.convergents.pop_back();
        if (!verify_convergent(alpha, c)) {
            // only the last reachable quotient can fail when the input precision runs out
            out.termination = CfTermination::PrecisionLimit;
            break;
        }
        out.convergents.push_back(c);
    }
    return out;
}

ConvergentList convergents(const mpz_class& num, const mpz_class& den, std::int64_t q_max) {
    if (q_max < 1) throw std::domain_error("convergents requires q_max >= 1");
    if (den <= 0) throw std::domain_error("convergents requires a positive denominator");
    const Expansion ex = expand(Fraction{num, den}, Fraction{num, den}, mpz_from(q_max));
    ConvergentList out;
    out.termination = ex.termination;
    for (const auto& [p, q] : ex.convergents) {
        if (p == 0) continue;
        Convergent c{to_i64(p), to_i64(q)};
        if (!out.convergents.empty() && out.convergents.back().q == c.q) out.convergents.pop_back();
        out.convergents.push_back(c);
    }
    return out;
}

DirichletApprox dirichlet_approx(const FixedPointReal& x, std::int64_t Q) {
    if (Q < 1) throw std::domain_error("dirichlet_approx requires Q >= 1");
    auto [lo, hi] = enclosure(x);
    const Expansion ex = expand(std::move(lo), std::move(hi), mpz_from(Q));
    if (ex.convergents.empty()) throw PrecisionExhausted("no convergent determined by the input precision");
    const auto& [p, q] = ex.convergents.back();
    DirichletApprox best{to_i64(p), to_i64(q), Q};
    if (verify_dirichlet(x, best)) return best;

    // expansion stopped early: try the intermediate fractions between the last two convergents
    if (ex.convergents.size() >= 2) {
        const auto& [pp, qp] = ex.convergents[ex.convergents.size() - 2];
        for (mpz_class j = 1;; ++j) {
            mpz_class qj = qp + j * q;
            if (qj > Q) break;
            DirichletApprox cand{to_i64(pp + j * p), to_i64(qj), Q};
            if (std::gcd(cand.a_h, cand.q_h) == 1 && verify_dirichlet(x, cand)) return cand;
        }
    }
    throw PrecisionExhausted("Dirichlet approximation not certifiable at the input precision");
}

QhAudit qh_window_audit(const FixedPointReal& alpha, const Convergent& conv, std::int64_t H) {
    if (conv.q > 3037000499) throw std::overflow_error("q^2 exceeds 64 bits");
    const std::int64_t q2 = conv.q * conv.q;
    QhAudit audit;
    for (std::int64_t h = 1; h <= H; ++h) {
        QhRow row;
        row.h = h;
        row.approx = dirichlet_approx(alpha.mul(h), q2);
        const auto qh = static_cast<unsigned __int128>(row.approx.q_h);
        row.in_window = qh * qh * qh > static_cast<unsigned __int128>(conv.q) && row.approx.q_h <= q2;
        if (!row.in_window) ++audit.violations;
        audit.rows.push_back(row);
    }
    return audit;
}

MinSumReport min_sum(std::uint64_t X, double Y, const FixedPointReal& alpha, const FixedPointReal& beta,
                     const Convergent& conv) {
    const Frac256 shift = beta.frac();
    auto parts = map_chunks<CompensatedSum>(1, X + 1, kSumChunk, [&](std::uint64_t lo, std::uint64_t hi) {
        CompensatedSum s;
        for (std::uint64_t n = lo; n < hi; ++n) {
            const double d = alpha.frac_affine(n, shift).distance().to_double();
            s.add(d * Y <= 1.0 ? Y : 1.0 / d);
        }
        return s;
    });
    MinSumReport r;
    r.value = reduce_ordered(parts);
    const double x = static_cast<double>(X);
    const double q = static_cast<double>(conv.q);
    r.bound = x * Y / q + Y + (x + q) * std::log(2.0 * q);
    r.ratio = r.value / r.bound;
    return r;
}

}  // namespace psdist

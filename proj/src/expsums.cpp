#include "psdist/expsums.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "psdist/arithmetic.hpp"
#include "psdist/core_arith.hpp"
#include "psdist/errors.hpp"
#include "psdist/summation.hpp"

namespace psdist {

ExpSumReport s_of_x(const FixedPointReal& alpha, std::uint64_t X, const DirichletApprox& approx, unsigned segment_bits) {
    const Frac256 a = alpha.frac();
    PrimeSieve sieve(2, X + 1, segment_bits);
    auto parts = sieve.map_segments<ComplexCompensatedSum>([&](const SieveSegment& seg) {
        ComplexCompensatedSum s;
        seg.for_each_prime([&](std::uint64_t p) {
            s.add(e_reduced(a.mul(p).to_signed_double()) * std::log(static_cast<double>(p)));
        });
        return s;
    });
    ExpSumReport r;
    r.value = reduce_ordered(parts);
    r.abs = std::abs(r.value);
    const double x = static_cast<double>(X);
    const double q = static_cast<double>(approx.q_h);
    const double lx = std::log(x);
    r.bound = (x / std::sqrt(q) + std::pow(x, 0.8) + std::sqrt(x * q)) * std::pow(lx, 4);
    r.ratio = r.bound > 0.0 ? r.abs / r.bound : 0.0;
    r.parameters = {{"X", x}, {"alpha", alpha.to_double()}, {"a", static_cast<double>(approx.a_h)}, {"q", q}};
    return r;
}

ThetaPhase::ThetaPhase(const FixedPointReal& alpha, std::int64_t h, std::int64_t m, double gamma)
    : alpha_h_(alpha.mul(h).frac()), m_(static_cast<long double>(m)), gamma_(gamma) {}

double ThetaPhase::operator()(std::uint64_t n) const {
    const long double linear = alpha_h_.mul(n).to_signed_long_double();
    const long double u = m_ * std::pow(static_cast<long double>(n), gamma_);
    const long double curved = u - std::nearbyint(u);
    const long double phase = linear - curved;
    return static_cast<double>(phase - std::nearbyint(phase));
}

ExpSumReport theta_sum(std::uint64_t N1, std::uint64_t N2, const FixedPointReal& alpha, std::int64_t h,
                       std::int64_t m, double gamma) {
    if (N2 <= N1) throw std::domain_error("theta_sum requires N1 < N2");
    const ThetaPhase phase(alpha, h, m, gamma);
    const std::vector<double> lambda = von_mangoldt_range(N1, N2);
    auto parts = map_chunks<ComplexCompensatedSum>(N1 + 1, N2 + 1, kSumChunk, [&](std::uint64_t lo, std::uint64_t hi) {
        ComplexCompensatedSum s;
        for (std::uint64_t n = lo; n < hi; ++n) {
            const double w = lambda[n - N1 - 1];
            if (w != 0.0) s.add(e_reduced(phase(n)) * w);
        }
        return s;
    });
    ExpSumReport r;
    r.value = reduce_ordered(parts);
    r.abs = std::abs(r.value);
    const double n = static_cast<double>(N2);
    r.bound = std::pow(n, (gamma + 11.0) / 13.0) * std::pow(std::log(n), 3);
    r.ratio = r.abs / r.bound;
    r.parameters = {{"N1", static_cast<double>(N1)}, {"N2", n}, {"alpha", alpha.to_double()},
                    {"h", static_cast<double>(h)}, {"m", static_cast<double>(m)}, {"gamma", gamma}};
    return r;
}

VaughanCoefficients vaughan_coefficients(std::uint64_t d, double v) {
    if (d == 0 || v < 1.0) throw std::domain_error("vaughan_coefficients requires d >= 1 and v >= 1");
    VaughanCoefficients out;
    const auto V = static_cast<std::uint64_t>(std::floor(v));
    for (std::uint64_t r = 1; r <= std::min(d, V); ++r) {
        if (d % r != 0) continue;
        const int mu = mobius(r);
        out.a += mu;
        const std::uint64_t s = d / r;
        if (s <= V && mu != 0) out.c += mu * von_mangoldt(s);
    }
    return out;
}

VaughanParts vaughan_decompose(std::uint64_t N1, std::uint64_t N2, const PhaseFn& f, double v) {
    if (v < 1.0) throw std::domain_error("vaughan_decompose requires v >= 1");
    if (static_cast<double>(N1) < v * v) {
        throw RegimeViolation("Vaughan decomposition needs N1 >= v^2 (N1 = " + std::to_string(N1) +
                              ", v = " + std::to_string(v) + ")");
    }
    if (N2 <= N1) throw std::domain_error("vaughan_decompose requires N1 < N2");

    const auto V = static_cast<std::uint64_t>(std::floor(v));
    const auto V2 = static_cast<std::uint64_t>(std::floor(v * v));
    const ArithmeticTable table(N2);

    // e(f(n)) on (N1, N2], shared by every U_i since f(d, l) depends on dl only
    std::vector<std::complex<double>> phase(N2 - N1);
    map_chunks<int>(N1 + 1, N2 + 1, kSumChunk, [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t n = lo; n < hi; ++n) phase[n - N1 - 1] = e(f(n));
        return 0;
    });
    auto at = [&](std::uint64_t n) { return phase[n - N1 - 1]; };

    std::vector<double> c(V2 + 1, 0.0);
    for (std::uint64_t r = 1; r <= V; ++r) {
        if (table.mu(r) == 0) continue;
        for (std::uint64_t s = 1; s <= V; ++s) c[r * s] += table.mu(r) * table.lambda(s);
    }
    const std::uint64_t d_max = N2 / (V + 1);
    std::vector<std::int64_t> a(d_max + 1, 0);
    for (std::uint64_t r = 1; r <= V; ++r) {
        if (table.mu(r) == 0) continue;
        for (std::uint64_t d = r; d <= d_max; d += r) a[d] += table.mu(r);
    }

    ComplexCompensatedSum u1, u2, u3, u4, direct;
    for (std::uint64_t d = 1; d <= V2; ++d) {
        const bool small = d <= V;
        if (small && table.mu(d) != 0) {
            for (std::uint64_t l = N1 / d + 1; l <= N2 / d; ++l) {
                u1.add(static_cast<double>(table.mu(d)) * std::log(static_cast<double>(l)) * at(d * l));
            }
        }
        if (c[d] != 0.0) {
            ComplexCompensatedSum inner;
            for (std::uint64_t l = N1 / d + 1; l <= N2 / d; ++l) inner.add(at(d * l));
            (small ? u2 : u3).add(c[d] * inner.value());
        }
    }
    for (std::uint64_t l = V + 1; l <= N2 / (V + 1); ++l) {
        const double lam = table.lambda(l);
        if (lam == 0.0) continue;
        ComplexCompensatedSum inner;
        for (std::uint64_t d = std::max(V + 1, N1 / l + 1); d <= N2 / l; ++d) {
            if (a[d] != 0) inner.add(static_cast<double>(a[d]) * at(d * l));
        }
        u4.add(lam * inner.value());
    }
    for (std::uint64_t n = N1 + 1; n <= N2; ++n) {
        const double lam = table.lambda(n);
        if (lam != 0.0) direct.add(lam * at(n));
    }

    VaughanParts parts;
    parts.U1 = u1.value();
    parts.U2 = u2.value();
    parts.U3 = u3.value();
    parts.U4 = u4.value();
    parts.v = v;
    parts.reconstruction = parts.U1 - parts.U2 - parts.U3 - parts.U4;
    parts.direct = direct.value();
    parts.residual = std::abs(parts.reconstruction - parts.direct);
    return parts;
}

InequalityCheck van_der_corput_check(const PhaseFn& f, std::int64_t a, std::int64_t b, double lambda) {
    if (!(lambda > 0.0)) throw InvalidLambda("van der Corput check needs lambda > 0");
    if (b < a) throw std::domain_error("van_der_corput_check requires a <= b");
    ComplexCompensatedSum s;
    for (std::int64_t n = a + 1; n <= b; ++n) s.add(e(f(static_cast<std::uint64_t>(n))));
    InequalityCheck out;
    out.lhs = std::abs(s.value());
    out.rhs = static_cast<double>(b - a) * std::sqrt(lambda) + 1.0 / std::sqrt(lambda);
    out.ratio = out.lhs / out.rhs;
    return out;
}

WeylShiftCheck weyl_shift_check(std::span<const std::complex<double>> seq, std::int64_t Q) {
    if (Q < 1) throw std::domain_error("weyl_shift_check requires Q >= 1");
    const auto N = static_cast<std::int64_t>(seq.size());
    ComplexCompensatedSum total;
    for (const auto& z : seq) total.add(z);

    // the q and -q correlations are conjugate, so the weighted sum is real
    CompensatedSum weighted;
    for (std::int64_t q = 0; q < std::min(Q, N); ++q) {
        CompensatedSum corr;
        for (std::int64_t n = 0; n + q < N; ++n) corr.add((std::conj(seq[n + q]) * seq[n]).real());
        const double w = 1.0 - static_cast<double>(q) / static_cast<double>(Q);
        weighted.add((q == 0 ? 1.0 : 2.0) * w * corr.value());
    }
    WeylShiftCheck out;
    out.lhs = std::norm(total.value());
    out.rhs = (1.0 + static_cast<double>(N) / static_cast<double>(Q)) * weighted.value();
    out.holds = out.lhs <= out.rhs + 1e-9 * std::abs(out.rhs);
    return out;
}

Q0Choice q0_choice(double m, double D, double L, double gamma) {
    if (m < 1.0 || D < 1.0 || L < 1.0) throw std::domain_error("q0_choice requires m, D, L >= 1");
    Q0Choice out;
    out.raw = std::pow(m, -1.0 / 3) * std::pow(D, 2.0 / 3 - gamma / 3) * std::pow(L, 1.0 / 3 - gamma / 3);
    const auto upper = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(L / 2)));
    const auto rounded = std::llround(out.raw);
    if (rounded < 1) {
        out.value = 1;
        out.clamped_low = true;
    } else if (rounded > upper) {
        out.value = upper;
        out.clamped_high = true;
    } else {
        out.value = rounded;
    }
    return out;
}

Type2Envelope type2_envelope(double D, double L, double m, double gamma, double v, double N) {
    if (D <= 0 || L <= 0 || m <= 0 || v <= 0 || N <= 0) throw std::domain_error("type2_envelope needs positive parameters");
    Type2Envelope out;
    const double g = gamma;
    out.terms = {D * D * L,
                 std::cbrt(m) * std::pow(D, 4.0 / 3 + g / 3) * std::pow(L, 5.0 / 3 + g / 3),
                 std::pow(m, -0.5) * std::pow(D * L, 2.0 - g / 2),
                 std::pow(m, -1.0 / 3) * std::pow(D, 5.0 / 3 - g / 3) * std::pow(L, 7.0 / 3 - g / 3)};
    for (double t : out.terms) out.terms_sum += t;
    const double log2n = std::pow(std::log(N), 2);
    out.value = std::sqrt(out.terms_sum) * log2n;
    const double M = std::pow(N, (15.0 - 14.0 * g) / 26.0);
    out.follow_up = (std::sqrt(N) * v + std::pow(M, 1.0 / 6) * std::pow(N, 0.75 + g / 6)) * log2n;
    return out;
}

Type2Sum type2_sum(std::uint64_t D, std::uint64_t L, std::uint64_t N1, std::uint64_t N2, const PhaseFn& f, double v,
                   double m, double gamma) {
    if (D == 0 || L == 0 || N2 <= N1 || v < 1.0) throw std::domain_error("type2_sum: invalid ranges");
    const auto V = static_cast<std::uint64_t>(std::floor(v));
    const ArithmeticTable table(std::max(2 * D, 2 * L));
    ComplexCompensatedSum total;
    for (std::uint64_t d = D + 1; d <= 2 * D; ++d) {
        std::int64_t a = 0;
        for (std::uint64_t r = 1; r <= std::min(d, V); ++r) {
            if (d % r == 0) a += table.mu(r);
        }
        if (a == 0) continue;
        const std::uint64_t l_lo = std::max(L + 1, N1 / d + 1);
        const std::uint64_t l_hi = std::min(2 * L, N2 / d);
        ComplexCompensatedSum inner;
        for (std::uint64_t l = l_lo; l <= l_hi; ++l) {
            const double lam = table.lambda(l);
            if (lam != 0.0) inner.add(lam * e(f(d * l)));
        }
        total.add(static_cast<double>(a) * inner.value());
    }
    Type2Sum out;
    out.value = total.value();
    out.abs = std::abs(out.value);
    out.envelope = type2_envelope(static_cast<double>(D), static_cast<double>(L), m, gamma, v, static_cast<double>(N2));
    out.ratio = out.envelope.value > 0.0 ? out.abs / out.envelope.value : 0.0;
    return out;
}

}  // namespace psdist

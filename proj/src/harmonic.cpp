#include "psdist/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "psdist/errors.hpp"
#include "psdist/summation.hpp"

namespace psdist {

namespace {

// rotation e(m t) = e((m-1) t) e(t), re-seeded every kReseed terms
constexpr std::int64_t kReseed = 64;

void check_delta(double delta) {
    if (!(delta > 0.0 && delta < 0.25)) throw InvalidDelta("delta must lie in (0, 1/4), got " + std::to_string(delta));
}

double capped_inverse(double scale, double dist) { return dist * scale <= 1.0 ? 1.0 : 1.0 / (scale * dist); }

}  // namespace

double psi(double t) { return frac(t) - 0.5; }

TruncatedExpansion psi_truncated(double t, std::int64_t M) {
    if (M < 2) throw std::domain_error("psi_truncated requires M >= 2");
    const double r = frac(t);
    const std::complex<double> step = e(r);
    std::complex<double> z;
    CompensatedSum s;
    for (std::int64_t m = 1; m <= M; ++m) {
        if ((m - 1) % kReseed == 0) {
            z = e(frac(static_cast<double>(m) * r));
        } else {
            z *= step;
        }
        s.add(z.imag() / (std::numbers::pi * static_cast<double>(m)));
    }
    TruncatedExpansion out;
    out.value = -s.value();
    out.truncation = M;
    out.error_envelope = capped_inverse(static_cast<double>(M), dist_nearest_int(t));
    return out;
}

int f_delta(double theta, double delta) {
    check_delta(delta);
    const double f = frac(theta);
    return (f < delta || f >= 1.0 - delta) ? 1 : 0;
}

int f_delta(const Frac256& theta, const Frac256& delta) { return (theta < delta || theta >= -delta) ? 1 : 0; }

TruncatedExpansion f_delta_fourier(double theta, double delta, std::int64_t H) {
    check_delta(delta);
    if (H < 1) throw std::domain_error("f_delta_fourier requires H >= 1");
    const double th = frac(theta);
    const std::complex<double> step_theta = e(th);
    const std::complex<double> step_delta = e(delta);
    std::complex<double> zt, zd;
    CompensatedSum s;
    for (std::int64_t h = 1; h <= H; ++h) {
        if ((h - 1) % kReseed == 0) {
            zt = e(frac(static_cast<double>(h) * th));
            zd = e(frac(static_cast<double>(h) * delta));
        } else {
            zt *= step_theta;
            zd *= step_delta;
        }
        // the h and -h terms pair to 2 sin(2 pi h delta)/(pi h) cos(2 pi h theta)
        s.add(2.0 * zd.imag() * zt.real() / (std::numbers::pi * static_cast<double>(h)));
    }
    TruncatedExpansion out;
    out.value = s.value();
    out.truncation = H;
    const double hh = static_cast<double>(H);
    out.error_envelope = capped_inverse(hh, dist_nearest_int(theta + delta)) + capped_inverse(hh, dist_nearest_int(theta - delta));
    return out;
}

SumReport sigma_sum(std::uint64_t N, const FixedPointReal& alpha, const FixedPointReal& beta, double delta,
                    std::int64_t H, const Convergent& conv) {
    if (H < 1) throw std::domain_error("sigma_sum requires H >= 1");
    const Frac256 d = Frac256::from_double(delta);
    const Frac256 plus = beta.frac() + d;
    const Frac256 minus = beta.frac() - d;
    const double hh = static_cast<double>(H);
    auto parts = map_chunks<CompensatedSum>(1, N + 1, kSumChunk, [&](std::uint64_t lo, std::uint64_t hi) {
        CompensatedSum s;
        for (std::uint64_t n = lo; n < hi; ++n) {
            const Frac256 base = alpha.frac().mul(n);
            s.add(capped_inverse(hh, (base + plus).distance().to_double()));
            s.add(capped_inverse(hh, (base + minus).distance().to_double()));
        }
        return s;
    });
    SumReport r;
    r.value = reduce_ordered(parts);
    const double n = static_cast<double>(N);
    r.bound = n / std::sqrt(static_cast<double>(conv.q)) * std::log(n);
    r.ratio = r.bound > 0.0 ? r.value / r.bound : 0.0;
    return r;
}

SumReport xi_sum(std::uint64_t N1, const Exponent& gamma, double M) {
    if (N1 < 2 || M < 2.0) throw std::domain_error("xi_sum requires N1 >= 2 and M >= 2");
    auto parts = map_chunks<CompensatedSum>(N1 + 1, 2 * N1 + 1, kSumChunk, [&](std::uint64_t lo, std::uint64_t hi) {
        CompensatedSum s;
        for (std::uint64_t n = lo; n < hi; ++n) {
            const auto f = static_cast<double>(pow_floor(n, gamma).fractional);
            s.add(capped_inverse(M, std::min(f, 1.0 - f)));
        }
        return s;
    });
    SumReport r;
    r.value = reduce_ordered(parts);
    const double n = 2.0 * static_cast<double>(N1);
    const double g = gamma.value;
    r.bound = (n / M + std::pow(n, g / 2) * std::sqrt(M) + std::pow(n, 1 - g / 2) / std::sqrt(M)) * std::log(M);
    r.ratio = r.value / r.bound;
    return r;
}

}  // namespace psdist

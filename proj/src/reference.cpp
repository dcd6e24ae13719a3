#include "psdist/reference.hpp"

#include <cmath>

#include "psdist/harmonic.hpp"
#include "psdist/ps_primes.hpp"

namespace psdist::reference {

std::vector<std::uint64_t> primes_below(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 3) return out;
    std::vector<unsigned char> composite(limit, 0);
    for (std::uint64_t i = 2; i < limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j < limit; j += i) composite[j] = 1;
    }
    return out;
}

std::uint64_t ps_count(std::uint64_t X, const Exponent& gamma) {
    std::uint64_t count = 0;
    for (std::uint64_t p : primes_below(X + 1)) count += static_cast<std::uint64_t>(ps_weight(p, gamma).weight);
    return count;
}

std::complex<double> s_of_x(const FixedPointReal& alpha, std::uint64_t X) {
    std::complex<double> s;
    for (std::uint64_t p : primes_below(X + 1)) s += e(alpha.frac().mul(p).to_double()) * std::log(static_cast<double>(p));
    return s;
}

GammaTotals gamma_sum(const ParamSet& params, const FixedPointReal& alpha, const FixedPointReal& beta,
                      const Exponent& gamma) {
    GammaTotals t;
    const Frac256 delta = Frac256::from_double(params.delta);
    const auto g = static_cast<long double>(gamma.value);
    for (std::uint64_t p : primes_below(static_cast<std::uint64_t>(params.N) + 1)) {
        const double lp = std::log(static_cast<double>(p));
        const int weight = ps_weight(p, gamma).weight;
        const int hit = f_delta(alpha.frac_affine(p, beta.frac()), delta);
        const double centred = (hit - 2.0 * params.delta) * lp;
        const long double x0 = std::pow(static_cast<long double>(p), g);
        const long double x1 = std::pow(static_cast<long double>(p + 1), g);
        const long double psi0 = (-x0 - std::floor(-x0)) - 0.5L;
        const long double psi1 = (-x1 - std::floor(-x1)) - 0.5L;
        t.gamma1 += static_cast<double>(x1 - x0) * centred;
        t.gamma2 += static_cast<double>(psi1 - psi0) * centred;
        if (weight != 0) {
            ++t.ps_primes;
            t.mass += weight * lp;
            if (hit) t.hits_weighted += weight * lp;
        }
    }
    t.gamma_sum = t.hits_weighted - 2.0 * params.delta * t.mass;
    return t;
}

}  // namespace psdist::reference

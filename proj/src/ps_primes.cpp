#include "psdist/ps_primes.hpp"

#include <cmath>
#include <stdexcept>

namespace psdist {

PsWeight ps_weight(std::uint64_t p, const Exponent& gamma) {
    PsWeight w;
    w.p = p;
    w.lower = pow_floor(p, gamma);
    w.upper = pow_floor(p + 1, gamma);
    w.weight = static_cast<int>(certified_ceil(w.upper) - certified_ceil(w.lower));
    return w;
}

std::uint64_t ps_witness(const PsWeight& w) { return static_cast<std::uint64_t>(certified_ceil(w.lower)); }

PsCount ps_count(std::uint64_t X, const Exponent& gamma, unsigned segment_bits) {
    if (X < 3) throw std::domain_error("ps_count requires X >= 3");
    PrimeSieve sieve(2, X + 1, segment_bits);
    auto parts = sieve.map_segments<std::uint64_t>([&](const SieveSegment& seg) {
        std::uint64_t c = 0;
        seg.for_each_prime([&](std::uint64_t p) { c += static_cast<std::uint64_t>(ps_weight(p, gamma).weight); });
        return c;
    });
    PsCount out;
    out.X = X;
    for (auto c : parts) out.count += c;
    const double x = static_cast<double>(X);
    out.reference = std::pow(x, gamma.value) / std::log(x);
    out.ratio = static_cast<double>(out.count) / out.reference;
    return out;
}

std::vector<std::uint64_t> ps_primes_p_side(std::uint64_t X, const Exponent& gamma, unsigned segment_bits) {
    PrimeSieve sieve(2, X + 1, segment_bits);
    auto parts = sieve.map_segments<std::vector<std::uint64_t>>([&](const SieveSegment& seg) {
        std::vector<std::uint64_t> v;
        seg.for_each_prime([&](std::uint64_t p) {
            if (ps_weight(p, gamma).weight > 0) v.push_back(p);
        });
        return v;
    });
    std::vector<std::uint64_t> out;
    for (auto& v : parts) out.insert(out.end(), v.begin(), v.end());
    return out;
}

std::vector<std::uint64_t> ps_primes_n_side(std::uint64_t X, const Exponent& gamma) {
    const SieveSegment flags = sieve_segment(0, X + 1, small_primes(static_cast<std::uint64_t>(std::sqrt(static_cast<double>(X))) + 2));
    const Exponent inverse = gamma.reciprocal();
    const std::uint64_t n_max = static_cast<std::uint64_t>(pow_floor(X, gamma).value) + 1;
    std::vector<std::uint64_t> out;
    std::uint64_t last = 0;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const auto p = static_cast<std::uint64_t>(pow_floor(n, inverse).value);
        if (p > X) break;
        if (p != last && flags.is_prime_at(p)) out.push_back(p);
        last = p;
    }
    return out;
}

}  // namespace psdist

#include "psdist/arithmetic.hpp"

#include <cmath>
#include <stdexcept>

#include "psdist/sieve.hpp"

namespace psdist {

namespace {

struct Factor {
    std::uint64_t p;
    int k;
};

std::vector<Factor> factorize(std::uint64_t n) {
    std::vector<Factor> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        int k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        out.push_back({p, k});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

void require_positive(std::uint64_t n) {
    if (n == 0) throw std::domain_error("arithmetic functions are defined for n >= 1");
}

}  // namespace

double von_mangoldt(std::uint64_t n) {
    require_positive(n);
    const auto f = factorize(n);
    return f.size() == 1 ? std::log(static_cast<double>(f[0].p)) : 0.0;
}

int mobius(std::uint64_t n) {
    require_positive(n);
    int sign = 1;
    for (const auto& [p, k] : factorize(n)) {
        if (k > 1) return 0;
        sign = -sign;
    }
    return sign;
}

std::uint64_t divisor_count(std::uint64_t n) {
    require_positive(n);
    std::uint64_t t = 1;
    for (const auto& f : factorize(n)) t *= static_cast<std::uint64_t>(f.k + 1);
    return t;
}

ArithmeticTable::ArithmeticTable(std::uint64_t limit)
    : limit_(limit), spf_(limit + 1, 0), mu_(limit + 1, 0), prime_power_base_(limit + 1, 0) {
    std::vector<std::uint32_t> primes;
    if (limit >= 1) mu_[1] = 1;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<std::uint32_t>(i);
            primes.push_back(static_cast<std::uint32_t>(i));
            mu_[i] = -1;
            prime_power_base_[i] = static_cast<std::uint32_t>(i);
        }
        for (std::uint32_t p : primes) {
            const std::uint64_t m = i * p;
            if (p > spf_[i] || m > limit) break;
            spf_[m] = p;
            if (p == spf_[i]) {
                mu_[m] = 0;
                prime_power_base_[m] = prime_power_base_[i] == p ? p : 0;
            } else {
                mu_[m] = static_cast<std::int8_t>(-mu_[i]);
            }
        }
    }
}

double ArithmeticTable::lambda(std::uint64_t n) const {
    const std::uint32_t p = prime_power_base_[n];
    return p == 0 ? 0.0 : std::log(static_cast<double>(p));
}

std::uint64_t ArithmeticTable::tau(std::uint64_t n) const {
    std::uint64_t t = 1;
    while (n > 1) {
        const std::uint32_t p = spf_[n];
        std::uint64_t k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        t *= k + 1;
    }
    return t;
}

std::vector<double> von_mangoldt_range(std::uint64_t lo, std::uint64_t hi) {
    std::vector<double> out(hi > lo ? hi - lo : 0, 0.0);
    if (hi <= lo) return out;
    PrimeSieve(lo + 1, hi + 1).for_each_prime([&](std::uint64_t p) { out[p - lo - 1] = std::log(static_cast<double>(p)); });
    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 1;
    for (std::uint32_t p : small_primes(root + 1)) {
        const double lp = std::log(static_cast<double>(p));
        for (std::uint64_t q = std::uint64_t{p} * p; q <= hi; q *= p) {
            if (q > lo) out[q - lo - 1] = lp;
            if (q > hi / p) break;
        }
    }
    return out;
}

}  // namespace psdist

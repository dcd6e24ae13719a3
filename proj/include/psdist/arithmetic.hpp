#pragma once

#include <cstdint>
#include <vector>

namespace psdist {

// Single-value arithmetic functions by trial division. n >= 1.
double von_mangoldt(std::uint64_t n);
int mobius(std::uint64_t n);
std::uint64_t divisor_count(std::uint64_t n);

/// Smallest-prime-factor table on [1, limit] with derived mu, Lambda and tau.
class ArithmeticTable {
public:
    explicit ArithmeticTable(std::uint64_t limit);

    std::uint64_t limit() const { return limit_; }
    int mu(std::uint64_t n) const { return mu_[n]; }
    /// Lambda(n) = log p for n = p^k, else 0.
    double lambda(std::uint64_t n) const;
    std::uint64_t tau(std::uint64_t n) const;
    std::uint32_t smallest_prime_factor(std::uint64_t n) const { return spf_[n]; }

private:
    std::uint64_t limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::int8_t> mu_;
    std::vector<std::uint32_t> prime_power_base_;  // p if n = p^k, else 0
};

/// Lambda(n) for n in (lo, hi], including prime powers; index n - lo - 1.
std::vector<double> von_mangoldt_range(std::uint64_t lo, std::uint64_t hi);

}  // namespace psdist

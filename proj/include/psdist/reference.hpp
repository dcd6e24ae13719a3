#pragma once

// Serial reference kernels. Straight loops with no segmentation, no threads
// and no compensated summation; kept to cross-check the parallel kernels in
// tests and as the baseline in the benchmarks.

#include <complex>
#include <cstdint>
#include <vector>

#include "psdist/core_arith.hpp"
#include "psdist/fixed_point.hpp"
#include "psdist/gamma_engine.hpp"

namespace psdist::reference {

/// Primes below `limit` by a byte-per-number sieve.
std::vector<std::uint64_t> primes_below(std::uint64_t limit);

std::uint64_t ps_count(std::uint64_t X, const Exponent& gamma);

std::complex<double> s_of_x(const FixedPointReal& alpha, std::uint64_t X);

struct GammaTotals {
    double gamma_sum = 0.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double hits_weighted = 0.0;
    double mass = 0.0;
    std::uint64_t ps_primes = 0;
};

GammaTotals gamma_sum(const ParamSet& params, const FixedPointReal& alpha, const FixedPointReal& beta,
                      const Exponent& gamma);

}  // namespace psdist::reference

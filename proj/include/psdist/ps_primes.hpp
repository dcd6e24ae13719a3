#pragma once

#include <cstdint>
#include <vector>

#include "psdist/core_arith.hpp"
#include "psdist/sieve.hpp"

namespace psdist {

/// Piatetski-Shapiro weight [-p^g] - [-(p+1)^g] of a prime p.
struct PsWeight {
    std::uint64_t p = 0;
    /// number of integers n with p^g <= n < (p+1)^g; 0 or 1 for g < 1
    int weight = 0;
    CertifiedFloor lower;  // [p^g]
    CertifiedFloor upper;  // [(p+1)^g]
};

/// ceil(x) for a certified floor of x.
inline std::int64_t certified_ceil(const CertifiedFloor& f) { return f.value + (f.exact_integer ? 0 : 1); }

PsWeight ps_weight(std::uint64_t p, const Exponent& gamma);

struct PsCount {
    std::uint64_t X = 0;
    std::uint64_t count = 0;
    double reference = 0.0;  // X^g / log X
    double ratio = 0.0;
};

/// Number of primes p <= X with ps_weight(p) = 1, against X^g / log X.
PsCount ps_count(std::uint64_t X, const Exponent& gamma, unsigned segment_bits = kDefaultSegmentBits);

/// {p <= X : ps_weight(p) = 1}, ascending.
std::vector<std::uint64_t> ps_primes_p_side(std::uint64_t X, const Exponent& gamma,
                                            unsigned segment_bits = kDefaultSegmentBits);
/// {[n^(1/g)] : n <= X^g + 1} intersected with the primes <= X, ascending.
/// Works from n rather than p and serves as the oracle for the p-side.
std::vector<std::uint64_t> ps_primes_n_side(std::uint64_t X, const Exponent& gamma);

/// Integer n with [n^(1/g)] = p, when p is a PS prime (ceil(p^g)).
std::uint64_t ps_witness(const PsWeight& w);

}  // namespace psdist

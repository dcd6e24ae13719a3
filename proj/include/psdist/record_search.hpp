#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "psdist/core_arith.hpp"
#include "psdist/fixed_point.hpp"
#include "psdist/sieve.hpp"

namespace psdist {

/// A PS prime whose normalized distance ‖alpha p + beta‖ / (p^((11-12g)/26) log^6 p)
/// is the smallest seen so far.
struct SearchRecord {
    std::uint64_t p = 0;
    std::uint64_t n = 0;  // [n^(1/g)] = p
    double dist = 0.0;
    Frac256 dist_fixed;  // exact ‖alpha p + beta‖ on the fixed-point circle
    double score = 0.0;
    bool is_record = true;
};

struct SearchConfig {
    FixedPointReal alpha;
    FixedPointReal beta;
    Exponent gamma;
    std::uint64_t N_max = 0;
    double delta = 0.01;
    /// set by the caller when alpha is known to be rational
    bool alpha_rational = false;
    unsigned segment_bits = kDefaultSegmentBits;
};

struct SearchSummary {
    std::uint64_t ps_primes = 0;
    std::uint64_t records = 0;
    std::uint64_t within_delta = 0;  // PS primes with dist <= delta
    double best_score = 0.0;
    std::uint64_t best_p = 0;
    double min_dist = 0.5;
    bool degenerate = false;
    bool in_theorem_range = true;
    /// distinct dist values (as doubles) among PS primes, counted up to 65; degenerate inputs only
    std::uint64_t distinct_dist = 0;
};

double search_score(std::uint64_t p, double dist, double gamma);

/// Enumerates the PS primes p <= N_max in ascending order and reports every
/// score record through `on_record`, in order.
SearchSummary record_search(const SearchConfig& config, const std::function<void(const SearchRecord&)>& on_record);

}  // namespace psdist

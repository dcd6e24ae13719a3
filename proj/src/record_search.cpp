#include "psdist/record_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "psdist/ps_primes.hpp"

namespace psdist {

namespace {

struct SegmentScan {
    std::vector<SearchRecord> local_records;  // records relative to the segment start
    std::uint64_t ps_primes = 0;
    std::uint64_t within_delta = 0;
    Frac256 min_dist = Frac256::half();
    std::set<double> distinct;
};

constexpr std::size_t kDistinctCap = 64;

}  // namespace

double search_score(std::uint64_t p, double dist, double gamma) {
    const double lp = std::log(static_cast<double>(p));
    return dist / (std::pow(static_cast<double>(p), (11.0 - 12.0 * gamma) / 26.0) * std::pow(lp, 6));
}

SearchSummary record_search(const SearchConfig& config, const std::function<void(const SearchRecord&)>& on_record) {
    const Frac256 shift = config.beta.frac();
    const Frac256 delta = Frac256::from_double(std::clamp(config.delta, 0.0, 0.5));
    const bool degenerate = config.alpha_rational || config.alpha.is_exact();

    PrimeSieve sieve(2, config.N_max + 1, config.segment_bits);
    auto scans = sieve.map_segments<SegmentScan>([&](const SieveSegment& seg) {
        SegmentScan scan;
        double best = std::numeric_limits<double>::infinity();
        seg.for_each_prime([&](std::uint64_t p) {
            const PsWeight w = ps_weight(p, config.gamma);
            if (w.weight == 0) return;
            ++scan.ps_primes;
            SearchRecord rec;
            rec.p = p;
            rec.n = ps_witness(w);
            rec.dist_fixed = config.alpha.frac_affine(p, shift).distance();
            rec.dist = rec.dist_fixed.to_double();
            rec.score = search_score(p, rec.dist, config.gamma.value);
            if (rec.dist_fixed <= delta) ++scan.within_delta;
            scan.min_dist = std::min(scan.min_dist, rec.dist_fixed);
            if (degenerate && scan.distinct.size() <= kDistinctCap) scan.distinct.insert(rec.dist);
            if (rec.score < best) {
                best = rec.score;
                scan.local_records.push_back(rec);
            }
        });
        return scan;
    });

    SearchSummary summary;
    summary.degenerate = degenerate;
    summary.in_theorem_range = config.gamma.value > 11.0 / 12.0 && config.gamma.value < 1.0;
    double best = std::numeric_limits<double>::infinity();
    Frac256 min_dist = Frac256::half();
    std::set<double> distinct;
    for (const auto& scan : scans) {
        summary.ps_primes += scan.ps_primes;
        summary.within_delta += scan.within_delta;
        min_dist = std::min(min_dist, scan.min_dist);
        for (const auto& d : scan.distinct) {
            if (distinct.size() <= kDistinctCap) distinct.insert(d);
        }
        for (const auto& rec : scan.local_records) {
            if (rec.score < best) {
                best = rec.score;
                ++summary.records;
                summary.best_score = rec.score;
                summary.best_p = rec.p;
                on_record(rec);
            }
        }
    }
    summary.min_dist = min_dist.to_double();
    summary.distinct_dist = distinct.size();
    return summary;
}

}  // namespace psdist

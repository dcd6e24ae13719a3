#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

namespace psdist {

inline constexpr unsigned kDefaultSegmentBits = 22;
inline constexpr unsigned kMaxSegmentBits = 22;

/// Primality flags for [base, base + length).
struct SieveSegment {
    std::uint64_t base = 0;
    std::uint64_t length = 0;
    std::vector<std::uint64_t> flags;  // bit i set iff base + i is prime

    bool is_prime_at(std::uint64_t offset) const { return (flags[offset >> 6] >> (offset & 63)) & 1U; }
    std::uint64_t count() const;

    /// Calls fn(p) for each prime in the segment, ascending.
    template <class Fn>
    void for_each_prime(Fn&& fn) const {
        for (std::size_t w = 0; w < flags.size(); ++w) {
            std::uint64_t word = flags[w];
            while (word != 0) {
                const int bit = __builtin_ctzll(word);
                fn(base + w * 64 + static_cast<std::uint64_t>(bit));
                word &= word - 1;
            }
        }
    }
};

/// Primes below `limit` by the plain sieve of Eratosthenes.
std::vector<std::uint32_t> small_primes(std::uint64_t limit);

/// Sieves [base, base + length). `base_primes` must contain every prime
/// up to sqrt(base + length).
SieveSegment sieve_segment(std::uint64_t base, std::uint64_t length, std::span<const std::uint32_t> base_primes);

/// Segment cache directory from PSDIST_SIEVE_CACHE, if set.
std::optional<std::filesystem::path> sieve_cache_dir();

/// Binary segment file: "PSSV1", u64 LE base, u64 LE length, ceil(length/8) bytes of LSB-first flags.
void write_segment_file(const std::filesystem::path& path, const SieveSegment& segment);
/// Throws InvalidConfig on a bad magic or truncated file.
SieveSegment read_segment_file(const std::filesystem::path& path);

/// Segmented sieve over [begin, end). Segment i covers the aligned block
/// [i*2^bits, (i+1)*2^bits) clipped to the range, so partial results keyed
/// by segment are reproducible for a fixed segment size.
class PrimeSieve {
public:
    PrimeSieve(std::uint64_t begin, std::uint64_t end, unsigned segment_bits = kDefaultSegmentBits);

    std::uint64_t begin() const { return begin_; }
    std::uint64_t end() const { return end_; }
    unsigned segment_bits() const { return segment_bits_; }
    std::size_t segment_count() const { return segment_count_; }
    /// Sieves segment i; full-length segments go through the file cache when enabled.
    SieveSegment segment(std::size_t i) const;

    /// Runs fn(segment) -> R for every segment in parallel; results in ascending segment order.
    template <class R, class Fn>
    std::vector<R> map_segments(Fn&& fn) const {
        std::vector<R> out(segment_count_);
        std::vector<std::exception_ptr> errors(segment_count_);
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(segment_count_); ++i) {
            try {
                out[i] = fn(segment(static_cast<std::size_t>(i)));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
        for (const auto& err : errors) {
            if (err) std::rethrow_exception(err);
        }
        return out;
    }

    /// Serial ascending visit of every prime.
    template <class Fn>
    void for_each_prime(Fn&& fn) const {
        for (std::size_t i = 0; i < segment_count_; ++i) segment(i).for_each_prime(fn);
    }

private:
    std::uint64_t begin_;
    std::uint64_t end_;
    unsigned segment_bits_;
    std::size_t first_block_ = 0;
    std::size_t segment_count_ = 0;
    std::vector<std::uint32_t> base_primes_;
};

/// Pull-style ascending prime iterator over [begin, end).
class PrimeStream {
public:
    PrimeStream(std::uint64_t begin, std::uint64_t end, unsigned segment_bits = kDefaultSegmentBits);
    std::optional<std::uint64_t> next();

private:
    PrimeSieve sieve_;
    std::size_t next_segment_ = 0;
    std::vector<std::uint64_t> buffer_;
    std::size_t pos_ = 0;
};

std::vector<std::uint64_t> primes_in(std::uint64_t begin, std::uint64_t end);
std::uint64_t count_primes(std::uint64_t begin, std::uint64_t end, unsigned segment_bits = kDefaultSegmentBits);

}  // namespace psdist

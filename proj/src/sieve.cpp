#include "psdist/sieve.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <string>
#include <system_error>

#include "psdist/errors.hpp"

namespace psdist {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

constexpr std::array<char, 5> kMagic{'P', 'S', 'S', 'V', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t get_u64(std::istream& in) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        const int c = in.get();
        if (c == std::char_traits<char>::eof()) throw InvalidConfig("truncated sieve segment header");
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
    }
    return v;
}

}  // namespace

std::uint64_t SieveSegment::count() const {
    std::uint64_t total = 0;
    for (auto w : flags) total += static_cast<std::uint64_t>(std::popcount(w));
    return total;
}

std::vector<std::uint32_t> small_primes(std::uint64_t limit) {
    std::vector<std::uint32_t> out;
    if (limit <= 2) return out;
    std::vector<bool> composite(limit, false);
    for (std::uint64_t i = 2; i < limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j < limit; j += i) composite[j] = true;
    }
    return out;
}

SieveSegment sieve_segment(std::uint64_t base, std::uint64_t length, std::span<const std::uint32_t> base_primes) {
    SieveSegment seg;
    seg.base = base;
    seg.length = length;
    seg.flags.assign((length + 63) / 64, ~std::uint64_t{0});
    if (length % 64 != 0) seg.flags.back() = (std::uint64_t{1} << (length % 64)) - 1;
    const std::uint64_t end = base + length;
    for (std::uint64_t n = base; n < std::min<std::uint64_t>(end, 2); ++n) {
        const std::uint64_t off = n - base;
        seg.flags[off >> 6] &= ~(std::uint64_t{1} << (off & 63));
    }
    for (std::uint32_t p32 : base_primes) {
        const std::uint64_t p = p32;
        if (p * p >= end) break;
        std::uint64_t start = std::max(p * p, (base + p - 1) / p * p);
        for (std::uint64_t m = start; m < end; m += p) {
            const std::uint64_t off = m - base;
            seg.flags[off >> 6] &= ~(std::uint64_t{1} << (off & 63));
        }
    }
    return seg;
}

std::optional<std::filesystem::path> sieve_cache_dir() {
    const char* dir = std::getenv("PSDIST_SIEVE_CACHE");
    if (dir == nullptr || *dir == '\0') return std::nullopt;
    return std::filesystem::path(dir);
}

void write_segment_file(const std::filesystem::path& path, const SieveSegment& segment) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidConfig("cannot open sieve cache file for writing: " + path.string());
    out.write(kMagic.data(), kMagic.size());
    put_u64(out, segment.base);
    put_u64(out, segment.length);
    const std::uint64_t nbytes = (segment.length + 7) / 8;
    for (std::uint64_t b = 0; b < nbytes; ++b) {
        out.put(static_cast<char>((segment.flags[b / 8] >> (8 * (b % 8))) & 0xFF));
    }
    if (!out) throw InvalidConfig("failed writing sieve cache file: " + path.string());
}

SieveSegment read_segment_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidConfig("cannot open sieve cache file: " + path.string());
    std::array<char, 5> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) throw InvalidConfig("bad sieve cache magic in " + path.string());
    SieveSegment seg;
    seg.base = get_u64(in);
    seg.length = get_u64(in);
    if (seg.length > (std::uint64_t{1} << 40)) throw InvalidConfig("implausible sieve segment length");
    seg.flags.assign((seg.length + 63) / 64, 0);
    const std::uint64_t nbytes = (seg.length + 7) / 8;
    for (std::uint64_t b = 0; b < nbytes; ++b) {
        const int c = in.get();
        if (c == std::char_traits<char>::eof()) throw InvalidConfig("truncated sieve cache file " + path.string());
        seg.flags[b / 8] |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * (b % 8));
    }
    return seg;
}

PrimeSieve::PrimeSieve(std::uint64_t begin, std::uint64_t end, unsigned segment_bits)
    : begin_(begin), end_(end), segment_bits_(segment_bits) {
    if (segment_bits < 6 || segment_bits > kMaxSegmentBits) {
        throw InvalidConfig("segment bits must lie in [6, 22], got " + std::to_string(segment_bits));
    }
    if (end > (std::uint64_t{1} << 63)) throw InvalidConfig("sieve range exceeds 2^63");
    if (end <= begin) return;
    first_block_ = begin >> segment_bits;
    const std::size_t last_block = (end - 1) >> segment_bits;
    segment_count_ = last_block - first_block_ + 1;
    base_primes_ = small_primes(isqrt(end - 1) + 2);
}

SieveSegment PrimeSieve::segment(std::size_t i) const {
    const std::uint64_t block = first_block_ + i;
    const std::uint64_t full = std::uint64_t{1} << segment_bits_;
    const std::uint64_t lo = std::max(begin_, block << segment_bits_);
    const std::uint64_t hi = std::min(end_, (block + 1) << segment_bits_);

    const auto cache = (hi - lo == full) ? sieve_cache_dir() : std::nullopt;
    if (!cache) return sieve_segment(lo, hi - lo, base_primes_);

    const auto path = *cache / ("pssv_" + std::to_string(lo) + "_" + std::to_string(full) + ".bin");
    std::error_code ec;
    if (std::filesystem::exists(path, ec)) {
        try {
            SieveSegment seg = read_segment_file(path);
            if (seg.base == lo && seg.length == full) return seg;
        } catch (const InvalidConfig&) {
            // unreadable entries are simply recomputed
        }
    }
    SieveSegment seg = sieve_segment(lo, hi - lo, base_primes_);
    try {
        std::filesystem::create_directories(*cache, ec);
        auto tmp = path;
        tmp += ".tmp" + std::to_string(reinterpret_cast<std::uintptr_t>(&seg));
        write_segment_file(tmp, seg);
        std::filesystem::rename(tmp, path, ec);
    } catch (const InvalidConfig&) {
    }
    return seg;
}

PrimeStream::PrimeStream(std::uint64_t begin, std::uint64_t end, unsigned segment_bits)
    : sieve_(begin, end, segment_bits) {}

std::optional<std::uint64_t> PrimeStream::next() {
    while (pos_ == buffer_.size()) {
        if (next_segment_ == sieve_.segment_count()) return std::nullopt;
        buffer_.clear();
        pos_ = 0;
        sieve_.segment(next_segment_++).for_each_prime([&](std::uint64_t p) { buffer_.push_back(p); });
    }
    return buffer_[pos_++];
}

std::vector<std::uint64_t> primes_in(std::uint64_t begin, std::uint64_t end) {
    std::vector<std::uint64_t> out;
    PrimeSieve(begin, end).for_each_prime([&](std::uint64_t p) { out.push_back(p); });
    return out;
}

std::uint64_t count_primes(std::uint64_t begin, std::uint64_t end, unsigned segment_bits) {
    PrimeSieve sieve(begin, end, segment_bits);
    auto counts = sieve.map_segments<std::uint64_t>([](const SieveSegment& s) { return s.count(); });
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    return total;
}

}  // namespace psdist

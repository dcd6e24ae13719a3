#pragma once

#include <complex>
#include <cstdint>
#include <exception>
#include <vector>

namespace psdist {

/// Neumaier-compensated accumulator.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    void add(const CompensatedSum& other) {
        add(other.sum_);
        add(other.comp_);
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class ComplexCompensatedSum {
public:
    void add(std::complex<double> z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    void add(const ComplexCompensatedSum& other) {
        re_.add(other.re_);
        im_.add(other.im_);
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

/// Default block length for range-partitioned sums over n.
inline constexpr std::uint64_t kSumChunk = std::uint64_t{1} << 16;

/// Evaluates fn(lo, hi) on consecutive blocks [lo, hi) of [begin, end) in
/// parallel and returns the results in block order. Block boundaries depend
/// only on `chunk`, never on the thread count, so ordered reductions of the
/// result are bit-stable.
template <class R, class Fn>
std::vector<R> map_chunks(std::uint64_t begin, std::uint64_t end, std::uint64_t chunk, Fn&& fn) {
    if (end <= begin) return {};
    const std::uint64_t count = (end - begin + chunk - 1) / chunk;
    std::vector<R> out(count);
    std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
        const std::uint64_t lo = begin + static_cast<std::uint64_t>(i) * chunk;
        const std::uint64_t hi = (end - lo > chunk) ? lo + chunk : end;
        try {
            out[i] = fn(lo, hi);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
    return out;
}

/// Ordered reduction of per-block compensated sums.
inline double reduce_ordered(const std::vector<CompensatedSum>& parts) {
    CompensatedSum total;
    for (const auto& p : parts) total.add(p);
    return total.value();
}

inline std::complex<double> reduce_ordered(const std::vector<ComplexCompensatedSum>& parts) {
    ComplexCompensatedSum total;
    for (const auto& p : parts) total.add(p);
    return total.value();
}

}  // namespace psdist

// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>

#include "psdist/expsums.hpp"
#include "psdist/gamma_engine.hpp"
#include "psdist/ps_primes.hpp"
#include "psdist/reference.hpp"
#include "psdist/sieve.hpp"

using namespace psdist;

namespace {

const Exponent kGamma = Exponent::ratio(19, 20);

void BM_Sieve(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(count_primes(0, static_cast<std::uint64_t>(state.range(0))));
}
void BM_SieveReference(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(reference::primes_below(static_cast<std::uint64_t>(state.range(0))).size());
}

void BM_PsCount(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(ps_count(static_cast<std::uint64_t>(state.range(0)), kGamma).count);
}
void BM_PsCountReference(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(reference::ps_count(static_cast<std::uint64_t>(state.range(0)), kGamma));
}

void BM_SOfX(benchmark::State& state) {
    const auto alpha = FixedPointReal::named("sqrt:2");
    for (auto _ : state) benchmark::DoNotOptimize(s_of_x(alpha, static_cast<std::uint64_t>(state.range(0)), {0, 1, 1}).abs);
}
void BM_SOfXReference(benchmark::State& state) {
    const auto alpha = FixedPointReal::named("sqrt:2");
    for (auto _ : state) benchmark::DoNotOptimize(reference::s_of_x(alpha, static_cast<std::uint64_t>(state.range(0))));
}

void BM_GammaSum(benchmark::State& state) {
    const auto p = desk_params(static_cast<double>(state.range(0)), 0.01, 0.95);
    const auto alpha = FixedPointReal::named("sqrt:2");
    for (auto _ : state) benchmark::DoNotOptimize(gamma_sum(p, alpha, FixedPointReal::from_int(0), kGamma).gamma_sum);
}
void BM_GammaSumReference(benchmark::State& state) {
    const auto p = desk_params(static_cast<double>(state.range(0)), 0.01, 0.95);
    const auto alpha = FixedPointReal::named("sqrt:2");
    for (auto _ : state) benchmark::DoNotOptimize(reference::gamma_sum(p, alpha, FixedPointReal::from_int(0), kGamma).gamma_sum);
}

}  // namespace

BENCHMARK(BM_Sieve)->Arg(1 << 20)->Arg(1 << 24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SieveReference)->Arg(1 << 20)->Arg(1 << 24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PsCount)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PsCountReference)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SOfX)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SOfXReference)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GammaSum)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GammaSumReference)->Arg(1000000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

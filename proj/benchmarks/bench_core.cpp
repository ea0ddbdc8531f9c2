#include <benchmark/benchmark.h>

#include "stn/families.hpp"
#include "stn/primes.hpp"
#include "stn/sparse.hpp"
#include "stn/structure.hpp"
#include "stn/totient.hpp"

namespace {

void BM_PrimeTableBuild(benchmark::State& state) {
    const std::uint64_t limit = state.range(0);
    for (auto _ : state) {
        stn::PrimeTable table(limit);
        benchmark::DoNotOptimize(table.prime_count());
    }
}
BENCHMARK(BM_PrimeTableBuild)->Arg(100'000)->Arg(1'000'000)->Arg(2'500'000);

void BM_TotientTableBuild(benchmark::State& state) {
    const std::uint64_t limit = state.range(0);
    for (auto _ : state) {
        stn::TotientTable table(limit);
        benchmark::DoNotOptimize(table.phi(limit / 2));
    }
}
BENCHMARK(BM_TotientTableBuild)->Arg(100'000)->Arg(1'000'000)->Arg(2'500'000);

void BM_EnumerateMembers(benchmark::State& state) {
    const stn::PrimeTable primes(2'500'000);
    const stn::TotientTable totients(2'500'000);
    const stn::SparseOracle oracle(primes, totients);
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle.enumerate_n1(state.range(0)).size());
    }
}
BENCHMARK(BM_EnumerateMembers)->Arg(10'000)->Arg(1'000'000);

void BM_IsPrimeU64(benchmark::State& state) {
    std::uint64_t n = 2'305'843'009'213'693'951ULL;  // 2^61 - 1
    for (auto _ : state) {
        benchmark::DoNotOptimize(stn::is_prime_u64(n));
    }
}
BENCHMARK(BM_IsPrimeU64);

void BM_SearchBound(benchmark::State& state) {
    std::uint64_t m = 442'368;
    for (auto _ : state) {
        benchmark::DoNotOptimize(stn::search_bound(m));
    }
}
BENCHMARK(BM_SearchBound);

void BM_IntervalScan(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(stn::scan_e2(state.range(0)).size());
    }
}
BENCHMARK(BM_IntervalScan)->Arg(1'000)->Arg(10'000);

void BM_SmallPrimeWitness(benchmark::State& state) {
    const auto n = stn::Factorization::from_pairs({{2, 10}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(stn::witness_from_small_prime(n, 3, 2).phi_y);
    }
}
BENCHMARK(BM_SmallPrimeWitness);

}  // namespace

BENCHMARK_MAIN();

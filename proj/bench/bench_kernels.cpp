// Serial reference kernels against their OpenMP counterparts.
// Run with OMP_NUM_THREADS set to the thread count of interest.

#include "kse/analysis.hpp"
#include "kse/kernels.hpp"

#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

namespace {

using kse::kernels::ConstMatrixRef;
using kse::kernels::MatrixRef;
using Cx = std::complex<double>;

template <class T>
std::vector<T> random_square(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<T> m(n * n);
    for (auto& x : m) {
        if constexpr (std::is_same_v<T, Cx>) x = Cx{dist(rng), dist(rng)};
        else x = dist(rng);
    }
    // Diagonal dominance keeps LU well away from singular.
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] += static_cast<double>(n);
    return m;
}

template <class T, bool Parallel>
void bm_gemm(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = random_square<T>(n, 1), b = random_square<T>(n, 2);
    std::vector<T> c(n * n);
    for (auto _ : state) {
        ConstMatrixRef<T> ra{a.data(), n, n, n}, rb{b.data(), n, n, n};
        MatrixRef<T> rc{c.data(), n, n, n};
        if constexpr (Parallel) kse::kernels::parallel::gemm(ra, rb, rc);
        else kse::kernels::serial::gemm(ra, rb, rc);
        benchmark::DoNotOptimize(c.data());
    }
}

template <class T, bool Parallel>
void bm_lu(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a0 = random_square<T>(n, 3);
    std::vector<T> a;
    std::vector<std::size_t> piv(n);
    for (auto _ : state) {
        state.PauseTiming();
        a = a0;
        state.ResumeTiming();
        MatrixRef<T> ra{a.data(), n, n, n};
        if constexpr (Parallel) kse::kernels::parallel::lu_factor(ra, piv);
        else kse::kernels::serial::lu_factor(ra, piv);
        benchmark::DoNotOptimize(a.data());
    }
}

template <kse::analysis::Execution Exec>
void bm_scan(benchmark::State& state) {
    const auto res = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto f = kse::analysis::stability_scan({-6.0, 0.0}, {}, res, res, Exec);
        benchmark::DoNotOptimize(f.stable_area);
    }
}

}  // namespace

BENCHMARK(bm_gemm<double, false>)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_gemm<double, true>)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_gemm<Cx, false>)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_gemm<Cx, true>)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_lu<Cx, false>)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_lu<Cx, true>)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_scan<kse::analysis::Execution::kSerial>)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_scan<kse::analysis::Execution::kParallel>)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

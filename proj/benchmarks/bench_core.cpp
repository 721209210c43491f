#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include "chaosbe/chaos2.hpp"
#include "chaosbe/linalg.hpp"
#include "chaosbe/random.hpp"
#include "chaosbe/sheet.hpp"
#include "chaosbe/symmetric_matrix.hpp"

using namespace chaosbe;

static void BM_NormalDraws(benchmark::State& state) {
  RandomSource src(1, 0);
  std::uint64_t c = 0;
  for (auto _ : state) {
    double acc = 0.0;
    for (int i = 0; i < 1024; ++i) acc += src.normal_at(c++);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_NormalDraws);

static void BM_MatrixMultiply(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  unsigned w = static_cast<unsigned>(state.range(1));
  RandomSource src(2, 0);
  Matrix a(n, n), b(n, n);
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = src.normal_at(c++);
      b(i, j) = src.normal_at(c++);
    }
  for (auto _ : state) {
    Matrix r = multiply(a, b, w);
    benchmark::DoNotOptimize(r.trace());
  }
  state.SetItemsProcessed(state.iterations() * n * n * n);
}
BENCHMARK(BM_MatrixMultiply)->Args({256, 1})->Args({256, 4})->Args({512, 1})->Args({512, 4});

static void BM_EigenSymmetric(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  RandomSource src(3, 0);
  SymmetricMatrix m(n);
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) m.set(i, j, src.normal_at(c++));
  for (auto _ : state) {
    auto eigs = eigenvalues_symmetric(m);
    benchmark::DoNotOptimize(eigs.data());
  }
}
BENCHMARK(BM_EigenSymmetric)->Arg(64)->Arg(128)->Arg(256);

static void BM_Chaos2Sampling(benchmark::State& state) {
  std::size_t dim = static_cast<std::size_t>(state.range(0));
  unsigned w = static_cast<unsigned>(state.range(1));
  Chaos2Spectrum s = sheet_spectrum_1d(0.01, dim);
  RandomSource src(4, 0);
  for (auto _ : state) {
    auto draws = sample(s, src, 10000, w);
    benchmark::DoNotOptimize(draws.data());
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_Chaos2Sampling)->Args({100, 1})->Args({100, 4})->Args({400, 1})->Args({400, 4});

static void BM_Cholesky(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  Matrix cov(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      cov(i, j) = (i == j) ? 2.0
                           : 1.0 / (1.0 + static_cast<double>(i > j ? i - j : j - i));
  for (auto _ : state) {
    Matrix a = cov;
    bool ok = cholesky_lower(a);
    benchmark::DoNotOptimize(ok);
  }
}
BENCHMARK(BM_Cholesky)->Arg(256)->Arg(512);

BENCHMARK_MAIN();

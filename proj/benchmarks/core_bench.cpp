#include <benchmark/benchmark.h>

#include "gramframe/fields.hpp"
#include "gramframe/frames.hpp"
#include "gramframe/gramian.hpp"
#include "gramframe/random.hpp"
#include "gramframe/spectral.hpp"

namespace {

using namespace gramframe;

SymMatrix hilbert(std::size_t n) { return build_gramian(VectorSystem::hilbert_monomial(), n).matrix; }

void BM_EigSymHilbert(benchmark::State& state) {
  const SymMatrix h = hilbert(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eig_sym(h));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EigSymHilbert)->RangeMultiplier(2)->Range(8, 256)->Complexity(benchmark::oNCubed);

void BM_EigSymRandom(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  NormalSampler normal(1);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = normal();
  const SymMatrix s(a);
  for (auto _ : state) benchmark::DoNotOptimize(eig_sym(s));
}
BENCHMARK(BM_EigSymRandom)->RangeMultiplier(2)->Range(8, 128);

void BM_BuildGramianExplicit(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  NormalSampler normal(2);
  Matrix c(n, 16);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < 16; ++j) c(i, j) = normal();
  const auto sys = VectorSystem::explicit_finite(std::move(c));
  for (auto _ : state) benchmark::DoNotOptimize(build_gramian(sys, n));
}
BENCHMARK(BM_BuildGramianExplicit)->RangeMultiplier(4)->Range(16, 1024);

void BM_BandExtract(benchmark::State& state) {
  const Gramian g = build_gramian(VectorSystem::hilbert_monomial(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(band_extract(g, 0.1, 2.0));
}
BENCHMARK(BM_BandExtract)->Arg(20)->Arg(50)->Arg(100);

void BM_SampleField(benchmark::State& state) {
  const std::size_t v = 20;
  Matrix c(v, v);
  for (std::size_t i = 0; i < v; ++i)
    for (std::size_t j = 0; j < v; ++j) c(i, j) = 1.0 / (1.0 + static_cast<double>(i > j ? i - j : j - i));
  const auto model = make_field_model(SymMatrix(c), 3);
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_field(model, m));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * m));
}
BENCHMARK(BM_SampleField)->Arg(1000)->Arg(10000);

}  // namespace
BENCHMARK_MAIN();

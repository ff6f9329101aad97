#include <benchmark/benchmark.h>

#include <random>

#include "fakeval/archaudit.hpp"
#include "fakeval/density.hpp"
#include "fakeval/roc.hpp"

namespace {

fakeval::PredictionSet make_set(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<fakeval::PredictionRecord> recs;
  recs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int label = i % 3 == 0 ? 0 : 1;
    const double s = label ? std::min(1.0, u(rng) * 0.6 + 0.4) : u(rng) * 0.7;
    recs.push_back({"s" + std::to_string(i), "bench", "", label, s});
  }
  return fakeval::PredictionSet(std::move(recs));
}

void BM_BuildRoc(benchmark::State& state) {
  const auto set = make_set(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fakeval::build_roc(set));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildRoc)->Arg(1000)->Arg(18744);

void BM_IdealThreshold(benchmark::State& state) {
  const auto curve = fakeval::build_roc(make_set(18744));
  for (auto _ : state) benchmark::DoNotOptimize(fakeval::ideal_threshold(curve));
}
BENCHMARK(BM_IdealThreshold);

void BM_KdeGrid(benchmark::State& state) {
  const auto set = make_set(static_cast<std::size_t>(state.range(0)));
  std::vector<double> xs;
  for (const auto& r : set.records()) xs.push_back(r.score);
  const fakeval::KdeModel model(xs);
  const auto grid = fakeval::uniform_grid(-0.1, 1.1, 512);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fakeval::density_curve(model, grid, fakeval::DensityTag::All));
  }
}
BENCHMARK(BM_KdeGrid)->Arg(1000)->Arg(18744);

void BM_ParamCount(benchmark::State& state) {
  const auto spec = fakeval::build_spec(299, fakeval::HeadKind::Adapted);
  const auto freeze = fakeval::FreezeConfig::step2();
  for (auto _ : state) benchmark::DoNotOptimize(fakeval::param_count(spec, freeze));
}
BENCHMARK(BM_ParamCount);

}  // namespace

BENCHMARK_MAIN();

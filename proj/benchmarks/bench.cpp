#include <benchmark/benchmark.h>

#include "moyalharm/feynman.hpp"

using namespace moyalharm;

namespace {

ModelParams standard_params(int dim) {
  StandardPair st = standard_structures(dim);
  return ModelParams(st.metric, st.sigma, 1.0, 0.5, 1.0, 1.0);
}

void bm_star_gaussian(benchmark::State& state) {
  int dim = static_cast<int>(state.range(0));
  MoyalContext ctx = MoyalContext::standard(dim, 1.0);
  SeededRng rng(5);
  GaussianFunction a(random_spd_matrix(dim, rng, 0.4, 2.0).cast<Complex>(),
                     CVec::Zero(dim), 1.0);
  GaussianFunction b(random_spd_matrix(dim, rng, 0.4, 2.0).cast<Complex>(),
                     CVec::Zero(dim), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(star_gaussian(ctx, a, b));
}
BENCHMARK(bm_star_gaussian)->Arg(2)->Arg(4)->Arg(6);

void bm_decompose_adapted(benchmark::State& state) {
  int dim = static_cast<int>(state.range(0));
  SeededRng rng(7);
  Metric g(random_spd_matrix(dim, rng));
  SymplecticStructure sigma = random_adapted_sigma(g, rng);
  for (auto _ : state) benchmark::DoNotOptimize(decompose_adapted(sigma, g));
}
BENCHMARK(bm_decompose_adapted)->Arg(2)->Arg(4)->Arg(6);

void bm_propagator_value(benchmark::State& state) {
  MehlerKernel k(Metric::identity(2), 0.5, 1.0, 1.0);
  Vec x(2), y(2);
  x << 0.3, 0.0;
  y << -0.1, 0.2;
  CutoffSpec cutoff(0.2, 40.0, 1e-10);
  for (auto _ : state) benchmark::DoNotOptimize(propagator_value(k, x, y, cutoff));
}
BENCHMARK(bm_propagator_value);

void bm_amplitude_tadpole(benchmark::State& state) {
  int dim = static_cast<int>(state.range(0));
  ModelParams params = standard_params(dim);
  FeynmanGraph graph(1, {{CornerRef{0, 1}, CornerRef{0, 2}}},
                     {CornerRef{0, 0}, CornerRef{0, 3}});
  std::vector<Vec> ext = {Vec::Constant(dim, 0.3), Vec::Constant(dim, -0.1)};
  CutoffSpec cutoff(0.2, 40.0, 1e-8);
  for (auto _ : state)
    benchmark::DoNotOptimize(amplitude(graph, params, ext, cutoff));
}
BENCHMARK(bm_amplitude_tadpole)->Arg(2)->Arg(4);

void bm_amplitude_sunset(benchmark::State& state) {
  ModelParams params = standard_params(2);
  FeynmanGraph graph(2,
                     {{CornerRef{0, 1}, CornerRef{1, 2}},
                      {CornerRef{0, 2}, CornerRef{1, 1}}},
                     {CornerRef{0, 0}, CornerRef{0, 3}, CornerRef{1, 0},
                      CornerRef{1, 3}});
  std::vector<Vec> ext = {Vec::Constant(2, 0.2), Vec::Constant(2, 0.1),
                          Vec::Constant(2, -0.2), Vec::Constant(2, 0.0)};
  CutoffSpec cutoff(0.3, 40.0, 1e-6);
  for (auto _ : state)
    benchmark::DoNotOptimize(amplitude(graph, params, ext, cutoff));
}
BENCHMARK(bm_amplitude_sunset);

}  // namespace

BENCHMARK_MAIN();

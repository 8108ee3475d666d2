#include <benchmark/benchmark.h>

#include "boolsketch/generators.hpp"
#include "boolsketch/gf2.hpp"
#include "boolsketch/hypergraph.hpp"
#include "boolsketch/learners.hpp"

using namespace boolsketch;

static void BM_SolveAffineAll(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  gf2::BitMatrix m(2 * n, n);
  for (std::size_t r = 0; r < 2 * n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m.set(r, c, rng.next_bool());
  }
  // keep a 6-dimensional solution space so enumeration is exercised
  for (std::size_t r = 0; r < 2 * n; ++r) {
    for (std::size_t c = n - 6; c < n; ++c) m.set(r, c, false);
  }
  gf2::BitVector b(2 * n);
  for (auto _ : state) benchmark::DoNotOptimize(gf2::solve_affine_all(m, b, 1u << 10));
}
BENCHMARK(BM_SolveAffineAll)->Arg(64)->Arg(256)->Arg(1024);

static void BM_LearnBool(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto s = static_cast<std::size_t>(state.range(1));
  Rng rng(2);
  const auto f = plant_polynomial(n, s, Condition::kPerturbed, rng);
  PolynomialOracle oracle(f);
  LearnConfig cfg;
  cfg.s = s;
  cfg.m = 16 * n * s;
  for (auto _ : state) {
    Rng run(3);
    benchmark::DoNotOptimize(learn_bool(oracle, cfg, run));
  }
}
BENCHMARK(BM_LearnBool)->Args({30, 2})->Args({30, 4})->Args({100, 3})->Unit(benchmark::kMillisecond);

static void BM_LearnGraphFromSamples(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(4);
  const auto g = random_hypergraph(n, 2, 3, rng);
  FunctionOracle oracle(n, [&g](PointView x) { return static_cast<double>(c_cut_value(g, x)); });
  GraphLearnConfig cfg;
  cfg.s = 2;
  const auto batch = draw_batch(oracle, cfg.m1_for(n, 3), rng);
  for (auto _ : state) benchmark::DoNotOptimize(learn_graph_from_samples(batch, cfg, 3));
}
BENCHMARK(BM_LearnGraphFromSamples)->Arg(88)->Arg(300)->Arg(1221)->Unit(benchmark::kMillisecond);

static void BM_EdgesFromPolynomial(benchmark::State& state) {
  Rng rng(5);
  const auto g = random_hypergraph(12, static_cast<std::size_t>(state.range(0)), 4, rng);
  const auto p = c_cut_polynomial(g);
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(edges_from_polynomial(p, 4));
    } catch (const std::exception&) {
    }
  }
}
BENCHMARK(BM_EdgesFromPolynomial)->Arg(2)->Arg(4)->Arg(6);
BENCHMARK_MAIN();

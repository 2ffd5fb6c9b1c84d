#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "edvw/clique_expansion.hpp"
#include "edvw/implicit_clique.hpp"
#include "edvw/ipm.hpp"
#include "edvw/lanczos.hpp"
#include "edvw/oracle.hpp"
#include "edvw/random.hpp"
#include "edvw/random_walk.hpp"
#include "edvw/submodular.hpp"
#include "edvw/threshold.hpp"

namespace {

using namespace edvw;

constexpr SubmodularWeightSpec kClique{HKind::identity, GKind::clique};

EdvwHypergraph instance(std::size_t n, std::size_t m, std::size_t max_edge) {
  RandomInstanceSpec s;
  s.n_vertices = n;
  s.n_hyperedges = m;
  s.max_edge_size = max_edge;
  return with_degree_weights(random_instance(n * 31 + m, s), kClique);
}

std::vector<double> vec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> x(n);
  for (double& v : x) v = uniform(rng, -1.0, 1.0);
  return x;
}

void BM_HypergraphTotalVariation(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto hg = instance(n, n / 2, 40);
  const auto x = vec(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(hypergraph_total_variation(hg, kClique, x));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * hg.n_incidences()));
}
BENCHMARK(BM_HypergraphTotalVariation)->Arg(1000)->Arg(10000);

void BM_CliqueExpand(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto hg = instance(n, n / 2, 40);
  for (auto _ : state) benchmark::DoNotOptimize(clique_expand(hg, kClique));
}
BENCHMARK(BM_CliqueExpand)->Arg(1000)->Arg(10000);

void BM_ImplicitCliqueGradient(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CliqueOperator op(instance(n, n / 2, 40), kClique);
  auto ws = op.make_workspace();
  const auto x = vec(n, 2);
  std::vector<double> grad(n);
  for (auto _ : state) {
    op.smoothed_gradient(x, 1e-3, grad, ws);
    benchmark::DoNotOptimize(grad.data());
  }
}
BENCHMARK(BM_ImplicitCliqueGradient)->Arg(1000)->Arg(10000);

void BM_ExplicitGraphTotalVariation(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = clique_expand(instance(n, n / 2, 40), kClique);
  const auto x = vec(n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(graph_total_variation(g, x));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * g.n_edges()));
}
BENCHMARK(BM_ExplicitGraphTotalVariation)->Arg(1000)->Arg(10000);

void BM_ThresholdSweep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto hg = instance(n, n / 2, 40);
  const auto x = vec(n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_threshold(x, hg, kClique));
}
BENCHMARK(BM_ThresholdSweep)->Arg(1000)->Arg(10000);

void BM_FiedlerLanczos(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = clique_expand(instance(n, n / 2, 40), kClique);
  for (auto _ : state) benchmark::DoNotOptimize(second_eigvec_2lap(g));
}
BENCHMARK(BM_FiedlerLanczos)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_RandomWalkCluster(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto hg = instance(n, n / 2, 40);
  for (auto _ : state) benchmark::DoNotOptimize(rw_cluster(hg, kClique));
}
BENCHMARK(BM_RandomWalkCluster)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_InversePowerMethod(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = clique_expand(instance(n, n / 2, 20), kClique);
  IpmConfig cfg;
  cfg.n_restarts = 1;
  for (auto _ : state) benchmark::DoNotOptimize(ipm_second_eigvec(g, cfg));
}
BENCHMARK(BM_InversePowerMethod)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_ExactCheeger(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto hg = instance(n, n / 2, 0);
  for (auto _ : state) benchmark::DoNotOptimize(exact_h2(hg, kClique));
}
BENCHMARK(BM_ExactCheeger)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

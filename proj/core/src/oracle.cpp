#include "edvw/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

#include "edvw/errors.hpp"
#include "edvw/random.hpp"

namespace edvw {

namespace {

// True when mask a lists a lexicographically smaller sorted vertex set than b.
bool lex_less(std::uint64_t a, std::uint64_t b) {
  while (a != 0 && b != 0) {
    const auto la = std::countr_zero(a);
    const auto lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

template <class Cut>
ExactCheeger enumerate(std::size_t n, std::span<const double> mu, Cut&& cut) {
  if (n < 2) throw DomainError("exact_h2: need at least two vertices");
  if (n > kOracleMaxVertices)
    throw PreconditionError("exact_h2: " + std::to_string(n) + " vertices exceeds the enumeration cap of " +
                            std::to_string(kOracleMaxVertices));
  std::vector<std::uint8_t> side(n);
  ExactCheeger best;
  std::uint64_t best_mask = 0;
  double best_value = INFINITY;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t rest = 0; rest < (std::uint64_t{1} << (n - 1)); ++rest) {
    const std::uint64_t mask = 1 | (rest << 1);
    if (mask == full) continue;
    double vol_s = 0.0;
    double vol_sbar = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      side[v] = static_cast<std::uint8_t>(mask >> v & 1U);
      (side[v] ? vol_s : vol_sbar) += mu[v];
    }
    const double value = cut(side) / std::min(vol_s, vol_sbar);
    ++best.splits;
    if (best.splits == 1) {
      best_value = value;
      best_mask = mask;
      continue;
    }
    const double tol = 1e-12 * std::abs(best_value);
    if (value < best_value - tol || (std::abs(value - best_value) <= tol && lex_less(mask, best_mask))) {
      best_value = std::min(value, best_value);
      best_mask = mask;
    }
  }
  best.partition.side_of.resize(n);
  for (std::size_t v = 0; v < n; ++v) best.partition.side_of[v] = static_cast<std::uint8_t>(best_mask >> v & 1U);
  return best;
}

}  // namespace

ExactCheeger exact_h2(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec) {
  auto best = enumerate(hg.n_vertices(), hg.mu(),
                        [&](std::span<const std::uint8_t> side) { return cut_weight(hg, spec, side); });
  best.partition = make_partition(hg, spec, std::move(best.partition.side_of));
  best.h2 = best.partition.ncc;
  return best;
}

ExactCheeger exact_h2(const WeightedGraph& graph) {
  auto best = enumerate(graph.n_vertices(), graph.mu(),
                        [&](std::span<const std::uint8_t> side) { return graph_cut(graph, side); });
  auto& p = best.partition;
  p.cut_weight = graph_cut(graph, p.side_of);
  p.vol_s = 0.0;
  p.vol_sbar = 0.0;
  for (std::size_t v = 0; v < p.side_of.size(); ++v) (p.side_of[v] ? p.vol_s : p.vol_sbar) += graph.mu()[v];
  p.ncc = p.cut_weight / std::min(p.vol_s, p.vol_sbar);
  best.h2 = p.ncc;
  return best;
}

EdvwHypergraph random_instance(std::uint64_t seed, const RandomInstanceSpec& spec) {
  const std::size_t n = spec.n_vertices;
  const std::size_t max_size = spec.max_edge_size == 0 ? n : std::min(spec.max_edge_size, n);
  if (n < 2 || spec.n_hyperedges < 1) throw DomainError("random_instance: need n >= 2 and m >= 1");
  if (spec.min_edge_size < 2 || spec.min_edge_size > max_size)
    throw DomainError("random_instance: invalid hyperedge size range");
  if (!(spec.gamma_lo > 0.0) || spec.gamma_hi < spec.gamma_lo || !(spec.kappa_lo > 0.0) ||
      spec.kappa_hi < spec.kappa_lo)
    throw DomainError("random_instance: weight ranges must be positive and ordered");

  std::mt19937_64 rng(seed);
  auto draw = [&](double lo, double hi) {
    if (!spec.integer_weights) return uniform(rng, lo, hi);
    const auto ilo = static_cast<std::uint64_t>(std::ceil(lo));
    const auto ihi = static_cast<std::uint64_t>(std::floor(hi));
    if (ihi < ilo) throw DomainError("random_instance: integer range is empty");
    return static_cast<double>(ilo + uniform_index(rng, ihi - ilo + 1));
  };

  std::vector<VertexId> pool(n);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<HyperedgeInput> edges;
    for (std::size_t e = 0; e < spec.n_hyperedges; ++e) {
      const std::size_t k = spec.min_edge_size + uniform_index(rng, max_size - spec.min_edge_size + 1);
      for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<VertexId>(i);
      HyperedgeInput h;
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + uniform_index(rng, n - i);
        std::swap(pool[i], pool[j]);
      }
      h.members.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
      std::sort(h.members.begin(), h.members.end());
      for (std::size_t i = 0; i < k; ++i) h.gamma.push_back(draw(spec.gamma_lo, spec.gamma_hi));
      h.kappa = draw(spec.kappa_lo, spec.kappa_hi);
      edges.push_back(std::move(h));
    }
    auto comp = hyperedge_components(n, edges);
    if (std::all_of(comp.begin(), comp.end(), [](std::uint32_t c) { return c == 0; }))
      return EdvwHypergraph(n, std::move(edges));
  }
  throw DomainError("random_instance: no connected instance after 10000 draws");
}

RandomInstanceSpec running_example_spec() {
  RandomInstanceSpec spec;
  spec.n_vertices = 3;
  spec.n_hyperedges = 1;
  spec.min_edge_size = 3;
  spec.gamma_lo = 1.0;
  spec.gamma_hi = 3.0;
  spec.kappa_lo = 1.0;
  spec.kappa_hi = 1.0;
  spec.integer_weights = true;
  return spec;
}

}  // namespace edvw

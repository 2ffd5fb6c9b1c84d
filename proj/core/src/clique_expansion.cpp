#include "edvw/clique_expansion.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "edvw/diagnostics.hpp"
#include "edvw/errors.hpp"

namespace edvw {

WeightedGraph::WeightedGraph(std::size_t n_vertices, std::vector<GraphEdge> edges,
                             std::vector<double> mu) {
  if (n_vertices == 0) throw DomainError("graph needs at least one vertex");
  if (mu.empty()) mu.assign(n_vertices, 1.0);
  if (mu.size() != n_vertices) throw DomainError("vertex weight vector has wrong length");
  for (double m : mu) {
    if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("vertex weights must be positive");
  }
  mu_ = std::move(mu);

  for (auto& e : edges) {
    if (e.u >= n_vertices || e.v >= n_vertices) throw DomainError("edge endpoint out of range");
    if (e.u == e.v) throw DomainError("self-loops are not allowed");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) throw DomainError("edge weights must be positive");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
    return a.u < b.u || (a.u == b.u && a.v < b.v);
  });
  for (const auto& e : edges) {
    if (!edges_.empty() && edges_.back().u == e.u && edges_.back().v == e.v) {
      edges_.back().weight += e.weight;
    } else {
      edges_.push_back(e);
    }
  }

  std::vector<std::size_t> count(n_vertices, 0);
  for (const auto& e : edges_) {
    ++count[e.u];
    ++count[e.v];
  }
  offsets_.assign(n_vertices + 1, 0);
  for (std::size_t v = 0; v < n_vertices; ++v) offsets_[v + 1] = offsets_[v] + count[v];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[fill[e.u]++] = Neighbor{e.v, e.weight};
    adjacency_[fill[e.v]++] = Neighbor{e.u, e.weight};
  }
  for (std::size_t v = 0; v < n_vertices; ++v) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }
}

std::span<const Neighbor> WeightedGraph::neighbors(VertexId v) const {
  if (v >= n_vertices()) throw DomainError("vertex out of range");
  return std::span<const Neighbor>(adjacency_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

double WeightedGraph::degree(VertexId v) const {
  double d = 0.0;
  for (const auto& nb : neighbors(v)) d += nb.weight;
  return d;
}

double WeightedGraph::weight(VertexId u, VertexId v) const {
  auto nbs = neighbors(u);
  auto it = std::lower_bound(nbs.begin(), nbs.end(), v,
                             [](const Neighbor& nb, VertexId target) { return nb.vertex < target; });
  return (it != nbs.end() && it->vertex == v) ? it->weight : 0.0;
}

bool WeightedGraph::connected() const {
  std::vector<std::uint8_t> seen(n_vertices(), 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (const auto& nb : neighbors(v)) {
      if (!seen[nb.vertex]) {
        seen[nb.vertex] = 1;
        ++reached;
        stack.push_back(nb.vertex);
      }
    }
  }
  return reached == n_vertices();
}

std::size_t expansion_pair_count(const EdvwHypergraph& hg) {
  std::size_t pairs = 0;
  for (EdgeId e = 0; e < hg.n_hyperedges(); ++e) {
    std::size_t k = hg.members(e).size();
    pairs += k * (k - 1) / 2;
  }
  return pairs;
}

WeightedGraph clique_expand(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec,
                            std::size_t pair_budget) {
  if (spec.g_kind != GKind::clique)
    throw UnsupportedReductionError("clique expansion requires g = clique, got " +
                                    std::string(to_string(spec.g_kind)));
  const std::size_t pairs = expansion_pair_count(hg);
  if (pairs > pair_budget) {
    warn("clique expansion touches " + std::to_string(pairs) + " vertex pairs (budget " +
         std::to_string(pair_budget) + "); expect roughly " + std::to_string(pairs * 16 / (1 << 20)) +
         " MiB of edge storage");
  }

  const std::size_t n = hg.n_vertices();
  auto flat_gamma = hg.flat_gamma();
  std::vector<double> row(n, 0.0);
  std::vector<VertexId> touched;
  std::vector<GraphEdge> edges;

  // Row-by-row accumulation keeps only one dense row alive at a time.
  for (VertexId u = 0; u < n; ++u) {
    for (const auto& inc : hg.incident(u)) {
      const double scale = spec.h(hg.kappa(inc.edge)) * flat_gamma[inc.slot];
      auto members = hg.members(inc.edge);
      const std::size_t begin = hg.edge_begin(inc.edge);
      for (std::size_t i = inc.slot + 1 - begin; i < members.size(); ++i) {
        VertexId v = members[i];
        if (row[v] == 0.0) touched.push_back(v);
        row[v] += scale * flat_gamma[begin + i];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (VertexId v : touched) {
      if (row[v] > 0.0) edges.push_back(GraphEdge{u, v, row[v]});
      row[v] = 0.0;
    }
    touched.clear();
  }
  return WeightedGraph(n, std::move(edges), std::vector<double>(hg.mu().begin(), hg.mu().end()));
}

double graph_total_variation(const WeightedGraph& graph, std::span<const double> x) {
  if (x.size() != graph.n_vertices()) throw DomainError("graph_total_variation: vector has wrong length");
  double tv = 0.0;
  for (const auto& e : graph.edges()) tv += e.weight * std::abs(x[e.u] - x[e.v]);
  return tv;
}

double graph_cut(const WeightedGraph& graph, std::span<const std::uint8_t> in_set) {
  if (in_set.size() != graph.n_vertices()) throw DomainError("graph_cut: vertex set has wrong length");
  auto k = std::count_if(in_set.begin(), in_set.end(), [](std::uint8_t b) { return b != 0; });
  if (k == 0 || static_cast<std::size_t>(k) == graph.n_vertices())
    throw DomainError("cut undefined for empty or full vertex set");
  double cut = 0.0;
  for (const auto& e : graph.edges()) {
    if ((in_set[e.u] != 0) != (in_set[e.v] != 0)) cut += e.weight;
  }
  return cut;
}

void write_matrix_market(const WeightedGraph& graph, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << "% clique expansion adjacency; vertex weights follow as '% mu <v> <value>'\n";
  for (std::size_t v = 0; v < graph.n_vertices(); ++v) {
    out << "% mu " << (v + 1) << ' ' << std::setprecision(17) << graph.mu()[v] << '\n';
  }
  out << graph.n_vertices() << ' ' << graph.n_vertices() << ' ' << graph.n_edges() << '\n';
  for (const auto& e : graph.edges()) {
    out << (e.v + 1) << ' ' << (e.u + 1) << ' ' << std::setprecision(17) << e.weight << '\n';
  }
}

}  // namespace edvw

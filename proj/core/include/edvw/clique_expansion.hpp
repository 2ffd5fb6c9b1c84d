#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "edvw/hypergraph.hpp"
#include "edvw/submodular.hpp"

namespace edvw {

struct GraphEdge {
  VertexId u;
  VertexId v;
  double weight;
};

struct Neighbor {
  VertexId vertex;
  double weight;
};

// Undirected weighted graph with positive vertex weights mu.
//
// Edges are stored once (u < v) and, for traversal, as a symmetric CSR
// adjacency. Parallel edges passed to the constructor are summed; self-loops
// and non-positive weights are rejected.
class WeightedGraph {
 public:
  WeightedGraph(std::size_t n_vertices, std::vector<GraphEdge> edges, std::vector<double> mu = {});

  std::size_t n_vertices() const noexcept { return mu_.size(); }
  std::size_t n_edges() const noexcept { return edges_.size(); }
  std::span<const GraphEdge> edges() const noexcept { return edges_; }
  std::span<const double> mu() const noexcept { return mu_; }
  std::span<const Neighbor> neighbors(VertexId v) const;
  // Weighted degree sum_u A_vu.
  double degree(VertexId v) const;
  // A_uv, zero when there is no edge.
  double weight(VertexId u, VertexId v) const;
  bool connected() const;

 private:
  std::vector<GraphEdge> edges_;
  std::vector<double> mu_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
};

// Number of vertex pairs the clique expansion touches, sum_e |e|(|e|-1)/2,
// counted with multiplicity across hyperedges.
std::size_t expansion_pair_count(const EdvwHypergraph& hg);

inline constexpr std::size_t kDefaultPairBudget = 20'000'000;

// Clique expansion: A_uv = sum_e h(kappa(e)) gamma_e(u) gamma_e(v), mu copied
// from the hypergraph. Valid only for g = clique (throws
// UnsupportedReductionError otherwise). Memory grows with
// expansion_pair_count(); a warning is emitted above `pair_budget`.
WeightedGraph clique_expand(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec,
                            std::size_t pair_budget = kDefaultPairBudget);

// 1/2 sum_{u,v} A_uv |x_u - x_v|, each undirected edge counted once.
double graph_total_variation(const WeightedGraph& graph, std::span<const double> x);

// sum_{u in S, v not in S} A_uv; S must be neither empty nor V.
double graph_cut(const WeightedGraph& graph, std::span<const std::uint8_t> in_set);

// Coordinate-format Matrix Market dump (symmetric, lower triangle, 1-based)
// followed by a comment block listing mu.
void write_matrix_market(const WeightedGraph& graph, std::ostream& out);

}  // namespace edvw

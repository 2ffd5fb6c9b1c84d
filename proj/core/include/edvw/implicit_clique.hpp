#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "edvw/hypergraph.hpp"
#include "edvw/submodular.hpp"

namespace edvw {

// The clique expansion of an EDVW hypergraph without materialising its
// Theta(|e|^2) pairs. Every quantity is evaluated hyperedge by hyperedge from
// A_uv = sum_e h(kappa(e)) gamma_e(u) gamma_e(v), so costs scale with the
// number of incidences (times a log factor where sorting is needed).
class CliqueOperator {
 public:
  // Per-call scratch: member orders by x for each hyperedge are cached here
  // between calls, which makes re-sorting cheap when x moves little.
  struct Workspace {
    std::vector<std::uint32_t> order;  // local member indices, per hyperedge segment
    std::vector<double> prefix_gamma;
    std::vector<double> prefix_gx;
  };

  CliqueOperator(EdvwHypergraph hg, const SubmodularWeightSpec& spec);

  std::size_t size() const noexcept { return hg_.n_vertices(); }
  std::span<const double> mu() const noexcept { return hg_.mu(); }
  const EdvwHypergraph& hypergraph() const noexcept { return hg_; }
  const SubmodularWeightSpec& spec() const noexcept { return spec_; }

  Workspace make_workspace() const;

  // 1/2 sum_{u,v} A_uv |x_u - x_v|, equal to the graph total variation of the
  // explicit expansion.
  double total_variation(std::span<const double> x, Workspace& ws) const;

  // Gradient of sum_{u<v} A_uv H_eps(x_u - x_v) with the Huber function
  // H_eps(d) = d^2 / (2 eps) for |d| <= eps and |d| - eps / 2 otherwise.
  // Entry u equals sum_v A_uv clip((x_u - x_v) / eps, -1, 1), so the result is
  // also D^T alpha for an edge-dual alpha in the unit box.
  void smoothed_gradient(std::span<const double> x, double eps, std::span<double> grad,
                         Workspace& ws) const;

  // out = A in.
  void apply_adjacency(std::span<const double> in, std::span<double> out) const;
  // sum_v A_uv per vertex.
  std::span<const double> adjacency_degree() const noexcept { return degree_; }
  // Upper bound on the largest eigenvalue of D_A - A (twice the max degree).
  double laplacian_norm_bound() const noexcept;

 private:
  EdvwHypergraph hg_;
  SubmodularWeightSpec spec_;
  std::vector<double> scale_;   // h(kappa(e))
  std::vector<double> degree_;

  void sort_members(std::span<const double> x, Workspace& ws) const;
};

}  // namespace edvw

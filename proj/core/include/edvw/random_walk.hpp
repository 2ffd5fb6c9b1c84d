#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "edvw/hypergraph.hpp"
#include "edvw/lanczos.hpp"
#include "edvw/submodular.hpp"
#include "edvw/threshold.hpp"

namespace edvw {

// Two-step random walk on an EDVW hypergraph: from v pick an incident
// hyperedge e with probability kappa(e) / sum_{e' ni v} kappa(e'), then a
// member u of e with probability gamma_e(u) / T_e. P is kept in this factored
// form; its products cost O(sum |e|).
class RwLaplacian final : public SymmetricOperator {
 public:
  explicit RwLaplacian(EdvwHypergraph hg, double pi_tolerance = 1e-12,
                       std::size_t max_power_iters = 1'000'000);

  std::size_t size() const override { return hg_.n_vertices(); }
  // y = L x with L = I - (Pi^{1/2} P Pi^{-1/2} + Pi^{-1/2} P^T Pi^{1/2}) / 2.
  void apply(std::span<const double> in, std::span<double> out) const override;
  double norm_bound() const override { return 2.0; }

  void apply_p(std::span<const double> in, std::span<double> out) const;
  void apply_pt(std::span<const double> in, std::span<double> out) const;
  std::vector<double> transition_row(VertexId u) const;

  std::span<const double> pi() const noexcept { return pi_; }
  // ||P^T pi - pi||_1 at exit, and the number of power steps taken.
  double pi_residual() const noexcept { return pi_residual_; }
  std::size_t power_iterations() const noexcept { return power_iterations_; }
  const EdvwHypergraph& hypergraph() const noexcept { return hg_; }

 private:
  EdvwHypergraph hg_;
  std::vector<double> kappa_sum_;
  std::vector<double> pi_;
  std::vector<double> sqrt_pi_;
  double pi_residual_ = 0.0;
  std::size_t power_iterations_ = 0;
  mutable std::vector<double> scratch_a_;
  mutable std::vector<double> scratch_b_;
};

RwLaplacian build_rw_laplacian(const EdvwHypergraph& hg);

struct RwClustering {
  Partition partition;
  std::vector<double> embedding;  // Pi^{-1/2} y
  double eigenvalue = 0.0;
  double residual = 0.0;
  std::size_t matvecs = 0;
  double threshold = 0.0;
};

// Second eigenvector of the random-walk Laplacian, mapped by Pi^{-1/2} and
// thresholded against the hypergraph NCC under `spec` with the vertex weights
// carried by `hg`.
RwClustering rw_cluster(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec = {},
                        const LanczosOptions& opts = {});

}  // namespace edvw

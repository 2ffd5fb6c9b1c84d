#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "edvw/clique_expansion.hpp"
#include "edvw/implicit_clique.hpp"
#include "edvw/threshold.hpp"

namespace edvw {

struct IpmConfig {
  std::size_t max_outer_iters = 100;
  // Stop once (lambda_k - lambda_{k+1}) / lambda_k falls below this.
  double outer_tol = 1e-6;
  std::size_t inner_max_iters = 2000;
  // Inner duality gap target, relative to lambda * ||v||.
  double inner_tol = 1e-8;
  // Inner early exit once a descent step is certified to within this
  // fraction of its own objective value.
  double inner_rel_gap = 1e-2;
  std::size_t n_restarts = 5;
  std::uint64_t rng_seed = 42;
  // Replace the iterate by its best level-set indicator when that has a lower
  // ratio (R1 of an indicator equals its NCC).
  bool indicator_refresh = true;
  // Worker threads for restarts; results do not depend on this.
  std::size_t threads = 1;

  void validate() const;
};

struct InnerResult {
  std::vector<double> x;
  double objective = 0.0;   // TV(x) - lambda <v, x>
  double gap = 0.0;         // certified bound on objective - optimum
  std::size_t iterations = 0;
  bool converged = false;
  // False when no point with negative objective was found; x is then the
  // previous iterate.
  bool descended = false;
};

// Total-variation functional x -> 1/2 sum_uv A_uv |x_u - x_v| of a graph with
// vertex weights mu, plus the operations the inverse power method needs.
class TvOperator {
 public:
  virtual ~TvOperator() = default;
  virtual std::size_t size() const = 0;
  virtual std::span<const double> mu() const = 0;
  virtual double total_variation(std::span<const double> x) const = 0;
  virtual ThresholdSplit best_threshold(std::span<const double> x) const = 0;
  virtual void apply_adjacency(std::span<const double> in, std::span<double> out) const = 0;
  virtual std::vector<double> adjacency_degree() const = 0;
  virtual bool connected() const = 0;

  // Per-run mutable state (warm starts, sort caches).
  struct State {
    virtual ~State() = default;
  };
  virtual std::unique_ptr<State> make_state() const = 0;
  // Approximately minimises TV(x) - lambda <v, x> over ||x||_2 <= 1.
  virtual InnerResult solve_inner(std::span<const double> v, double lambda,
                                  std::span<const double> x_prev, const IpmConfig& cfg,
                                  State& state) const = 0;
};

// Explicit graph; the inner problem is solved by FISTA on the edge dual
// min_{|alpha_e| <= 1} 1/2 ||D^T alpha - lambda v||^2, x = -r / ||r||.
class GraphTvOperator final : public TvOperator {
 public:
  explicit GraphTvOperator(const WeightedGraph& graph);

  std::size_t size() const override { return graph_.n_vertices(); }
  std::span<const double> mu() const override { return graph_.mu(); }
  double total_variation(std::span<const double> x) const override;
  ThresholdSplit best_threshold(std::span<const double> x) const override;
  void apply_adjacency(std::span<const double> in, std::span<double> out) const override;
  std::vector<double> adjacency_degree() const override;
  bool connected() const override { return graph_.connected(); }
  std::unique_ptr<State> make_state() const override;
  InnerResult solve_inner(std::span<const double> v, double lambda, std::span<const double> x_prev,
                          const IpmConfig& cfg, State& state) const override;

 private:
  const WeightedGraph& graph_;
  double lipschitz_ = 0.0;
};

// Matrix-free clique expansion; the inner problem is solved by projected
// FISTA on a Huber-smoothed TV with decreasing smoothing. The smoothed
// gradient is itself a feasible dual point, which certifies the gap.
class CliqueTvOperator final : public TvOperator {
 public:
  explicit CliqueTvOperator(const CliqueOperator& op);

  std::size_t size() const override { return op_.size(); }
  std::span<const double> mu() const override { return op_.mu(); }
  double total_variation(std::span<const double> x) const override;
  ThresholdSplit best_threshold(std::span<const double> x) const override;
  void apply_adjacency(std::span<const double> in, std::span<double> out) const override;
  std::vector<double> adjacency_degree() const override;
  bool connected() const override { return true; }
  std::unique_ptr<State> make_state() const override;
  InnerResult solve_inner(std::span<const double> v, double lambda, std::span<const double> x_prev,
                          const IpmConfig& cfg, State& state) const override;

 private:
  const CliqueOperator& op_;
};

// Ratio TV(x) / min_c ||x - c 1||_{1,mu}.
double r1_ratio(const TvOperator& op, std::span<const double> x);

struct IpmIterate {
  double lambda = 0.0;
  double threshold_ncc = 0.0;
  std::size_t inner_iterations = 0;
  bool inner_converged = true;
  bool refreshed = false;
};

struct IpmRun {
  std::vector<double> x;
  double lambda = 0.0;
  double initial_lambda = 0.0;
  std::size_t iters = 0;
  bool converged = false;
  bool inner_converged = true;
  std::size_t restart_index = 0;
  ThresholdSplit split;
  std::vector<IpmIterate> trace;
};

struct EigResult {
  std::vector<double> x;
  double lambda = 0.0;
  std::size_t iters = 0;
  bool converged = false;
  std::size_t restart_index = 0;
  ThresholdSplit split;
  std::vector<IpmRun> runs;
};

// Single run of the inverse power method from x0 (centred and normalised
// first).
IpmRun ipm_run(const TvOperator& op, std::span<const double> x0, const IpmConfig& cfg,
               std::size_t restart_index = 0);

// Restart 0 starts from the second eigenvector of
// D_mu^{-1/2} (D_A - A) D_mu^{-1/2} mapped back by D_mu^{-1/2}; the others
// from random centred vectors seeded by rng_seed + index. Returns the run
// whose best level set has the smallest NCC (lowest index on ties).
EigResult ipm_second_eigvec(const TvOperator& op, const IpmConfig& cfg);
EigResult ipm_second_eigvec(const WeightedGraph& graph, const IpmConfig& cfg);

// 2-Laplacian initial vector used by restart 0.
std::vector<double> spectral_initial_vector(const TvOperator& op, std::uint64_t seed);

InnerResult inner_tv_solve(const WeightedGraph& graph, std::span<const double> v, double lambda,
                           std::span<const double> x_prev, const IpmConfig& cfg);

}  // namespace edvw

#include "edvw/random_walk.hpp"

#include <cmath>
#include <numeric>

#include "edvw/errors.hpp"

namespace edvw {

RwLaplacian::RwLaplacian(EdvwHypergraph hg, double pi_tolerance, std::size_t max_power_iters)
    : hg_(std::move(hg)) {
  const std::size_t n = hg_.n_vertices();
  kappa_sum_.assign(n, 0.0);
  for (VertexId v = 0; v < n; ++v) {
    for (const auto& inc : hg_.incident(v)) kappa_sum_[v] += hg_.kappa(inc.edge);
  }
  scratch_a_.resize(n);
  scratch_b_.resize(n);

  // Stationary distribution by power iteration on P^T; P has a positive
  // diagonal, so the chain is aperiodic.
  pi_.assign(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  pi_residual_ = INFINITY;
  while (power_iterations_ < max_power_iters) {
    apply_pt(pi_, next);
    const double total = std::accumulate(next.begin(), next.end(), 0.0);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= total;
      change += std::abs(next[i] - pi_[i]);
    }
    pi_.swap(next);
    ++power_iterations_;
    pi_residual_ = change;
    if (change <= pi_tolerance) break;
  }
  if (pi_residual_ > pi_tolerance)
    throw SolverError("random walk: stationary distribution did not converge");
  sqrt_pi_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(pi_[i] > 0.0)) throw PreconditionError("random walk: stationary mass vanished (disconnected?)");
    sqrt_pi_[i] = std::sqrt(pi_[i]);
  }
}

void RwLaplacian::apply_p(std::span<const double> in, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (EdgeId e = 0; e < hg_.n_hyperedges(); ++e) {
    auto members = hg_.members(e);
    auto gamma = hg_.gamma(e);
    double avg = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) avg += gamma[i] * in[members[i]];
    avg /= hg_.gamma_total(e);
    const double kappa = hg_.kappa(e);
    for (VertexId u : members) out[u] += kappa * avg;
  }
  for (std::size_t u = 0; u < out.size(); ++u) out[u] /= kappa_sum_[u];
}

void RwLaplacian::apply_pt(std::span<const double> in, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (EdgeId e = 0; e < hg_.n_hyperedges(); ++e) {
    auto members = hg_.members(e);
    auto gamma = hg_.gamma(e);
    double inflow = 0.0;
    for (VertexId u : members) inflow += in[u] / kappa_sum_[u];
    inflow *= hg_.kappa(e) / hg_.gamma_total(e);
    for (std::size_t i = 0; i < members.size(); ++i) out[members[i]] += gamma[i] * inflow;
  }
}

std::vector<double> RwLaplacian::transition_row(VertexId u) const {
  std::vector<double> row(hg_.n_vertices(), 0.0);
  for (const auto& inc : hg_.incident(u)) {
    const double pick = hg_.kappa(inc.edge) / kappa_sum_[u];
    auto members = hg_.members(inc.edge);
    auto gamma = hg_.gamma(inc.edge);
    for (std::size_t i = 0; i < members.size(); ++i) {
      row[members[i]] += pick * gamma[i] / hg_.gamma_total(inc.edge);
    }
  }
  return row;
}

void RwLaplacian::apply(std::span<const double> in, std::span<double> out) const {
  if (in.size() != size() || out.size() != size()) throw DomainError("operator: vector has wrong length");
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) scratch_a_[i] = in[i] / sqrt_pi_[i];
  apply_p(scratch_a_, scratch_b_);
  for (std::size_t i = 0; i < n; ++i) out[i] = in[i] - 0.5 * sqrt_pi_[i] * scratch_b_[i];
  for (std::size_t i = 0; i < n; ++i) scratch_a_[i] = in[i] * sqrt_pi_[i];
  apply_pt(scratch_a_, scratch_b_);
  for (std::size_t i = 0; i < n; ++i) out[i] -= 0.5 * scratch_b_[i] / sqrt_pi_[i];
}

RwLaplacian build_rw_laplacian(const EdvwHypergraph& hg) { return RwLaplacian(hg); }

RwClustering rw_cluster(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec,
                        const LanczosOptions& opts) {
  RwLaplacian lap(hg);
  std::vector<double> kernel(lap.pi().begin(), lap.pi().end());
  for (double& k : kernel) k = std::sqrt(k);
  auto eig = second_eigvec_2lap(lap, kernel, opts);

  RwClustering out;
  out.eigenvalue = eig.value;
  out.residual = eig.residual;
  out.matvecs = eig.matvecs;
  out.embedding = std::move(eig.vector);
  for (std::size_t i = 0; i < out.embedding.size(); ++i) out.embedding[i] /= kernel[i];
  auto split = sweep_threshold(out.embedding, hg, spec);
  out.threshold = split.threshold;
  out.partition = make_partition(hg, spec, std::move(split.side_of));
  return out;
}

}  // namespace edvw

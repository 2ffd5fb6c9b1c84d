#include "edvw/implicit_clique.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "edvw/errors.hpp"

namespace edvw {

CliqueOperator::CliqueOperator(EdvwHypergraph hg, const SubmodularWeightSpec& spec)
    : hg_(std::move(hg)), spec_(spec) {
  if (spec.g_kind != GKind::clique)
    throw UnsupportedReductionError("clique operator requires g = clique, got " +
                                    std::string(to_string(spec.g_kind)));
  scale_.resize(hg_.n_hyperedges());
  degree_.assign(hg_.n_vertices(), 0.0);
  for (EdgeId e = 0; e < hg_.n_hyperedges(); ++e) {
    scale_[e] = spec_.h(hg_.kappa(e));
    const double total = hg_.gamma_total(e);
    auto members = hg_.members(e);
    auto gamma = hg_.gamma(e);
    for (std::size_t i = 0; i < members.size(); ++i) {
      degree_[members[i]] += scale_[e] * gamma[i] * (total - gamma[i]);
    }
  }
}

CliqueOperator::Workspace CliqueOperator::make_workspace() const {
  Workspace ws;
  ws.order.resize(hg_.n_incidences());
  std::size_t widest = 0;
  for (EdgeId e = 0; e < hg_.n_hyperedges(); ++e) {
    const std::size_t k = hg_.members(e).size();
    widest = std::max(widest, k);
    auto first = ws.order.begin() + static_cast<std::ptrdiff_t>(hg_.edge_begin(e));
    std::iota(first, first + static_cast<std::ptrdiff_t>(k), 0U);
  }
  ws.prefix_gamma.resize(widest + 1);
  ws.prefix_gx.resize(widest + 1);
  return ws;
}

void CliqueOperator::sort_members(std::span<const double> x, Workspace& ws) const {
  if (ws.order.size() != hg_.n_incidences()) ws = make_workspace();
  for (EdgeId e = 0; e < hg_.n_hyperedges(); ++e) {
    auto members = hg_.members(e);
    auto first = ws.order.begin() + static_cast<std::ptrdiff_t>(hg_.edge_begin(e));
    auto last = first + static_cast<std::ptrdiff_t>(members.size());
    auto less = [&](std::uint32_t a, std::uint32_t b) {
      const double xa = x[members[a]];
      const double xb = x[members[b]];
      return xa < xb || (xa == xb && a < b);
    };
    if (!std::is_sorted(first, last, less)) std::sort(first, last, less);
  }
}

double CliqueOperator::total_variation(std::span<const double> x, Workspace& ws) const {
  if (x.size() != size()) throw DomainError("total_variation: vector has wrong length");
  sort_members(x, ws);
  double tv = 0.0;
  for (EdgeId e = 0; e < hg_.n_hyperedges(); ++e) {
    auto members = hg_.members(e);
    auto gamma = hg_.gamma(e);
    const double total = hg_.gamma_total(e);
    const auto* order = ws.order.data() + hg_.edge_begin(e);
    // Ascending order: sum over consecutive gaps of below-mass * above-mass.
    double below = 0.0;
    double sum = 0.0;
    for (std::size_t j = 0; j + 1 < members.size(); ++j) {
      below += gamma[order[j]];
      const double gap = x[members[order[j + 1]]] - x[members[order[j]]];
      sum += below * std::max(total - below, 0.0) * gap;
    }
    tv += scale_[e] * sum;
  }
  return tv;
}

void CliqueOperator::smoothed_gradient(std::span<const double> x, double eps,
                                       std::span<double> grad, Workspace& ws) const {
  if (x.size() != size() || grad.size() != size())
    throw DomainError("smoothed_gradient: vector has wrong length");
  if (!(eps > 0.0)) throw DomainError("smoothed_gradient: smoothing must be positive");
  sort_members(x, ws);
  std::fill(grad.begin(), grad.end(), 0.0);
  const double inv_eps = 1.0 / eps;
  for (EdgeId e = 0; e < hg_.n_hyperedges(); ++e) {
    auto members = hg_.members(e);
    auto gamma = hg_.gamma(e);
    const std::size_t k = members.size();
    const auto* order = ws.order.data() + hg_.edge_begin(e);
    auto& pg = ws.prefix_gamma;
    auto& px = ws.prefix_gx;
    pg[0] = 0.0;
    px[0] = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double g = gamma[order[j]];
      pg[j + 1] = pg[j] + g;
      px[j + 1] = px[j] + g * x[members[order[j]]];
    }
    const double total = pg[k];
    // lo: members with x_v <= x_u - eps; hi: members with x_v < x_u + eps.
    std::size_t lo = 0;
    std::size_t hi = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const double xu = x[members[order[j]]];
      while (lo < k && x[members[order[lo]]] <= xu - eps) ++lo;
      while (hi < k && x[members[order[hi]]] < xu + eps) ++hi;
      const double window = xu * (pg[hi] - pg[lo]) - (px[hi] - px[lo]);
      const double s = pg[lo] - (total - pg[hi]) + window * inv_eps;
      grad[members[order[j]]] += scale_[e] * gamma[order[j]] * s;
    }
  }
}

void CliqueOperator::apply_adjacency(std::span<const double> in, std::span<double> out) const {
  if (in.size() != size() || out.size() != size())
    throw DomainError("apply_adjacency: vector has wrong length");
  std::fill(out.begin(), out.end(), 0.0);
  for (EdgeId e = 0; e < hg_.n_hyperedges(); ++e) {
    auto members = hg_.members(e);
    auto gamma = hg_.gamma(e);
    double mass = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) mass += gamma[i] * in[members[i]];
    for (std::size_t i = 0; i < members.size(); ++i) {
      out[members[i]] += scale_[e] * gamma[i] * (mass - gamma[i] * in[members[i]]);
    }
  }
}

double CliqueOperator::laplacian_norm_bound() const noexcept {
  double best = 0.0;
  for (double d : degree_) best = std::max(best, d);
  return 2.0 * best;
}

}  // namespace edvw

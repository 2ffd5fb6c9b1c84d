#include "edvw/cardinality.hpp"

#include <cmath>
#include <vector>

#include "edvw/errors.hpp"

namespace edvw {

EdvwHypergraph cardinality_variant(const EdvwHypergraph& hg, std::optional<KappaRule> recompute_kappa) {
  auto edges = hg.hyperedge_inputs();
  for (auto& e : edges) {
    std::fill(e.gamma.begin(), e.gamma.end(), 1.0);
    if (recompute_kappa) e.kappa = kappa_from_std(e.gamma, hg.n_vertices(), *recompute_kappa);
  }
  return EdvwHypergraph(hg.n_vertices(), std::move(edges), {hg.mu().begin(), hg.mu().end()});
}

EdvwHypergraph with_gamma_power(const EdvwHypergraph& hg, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be non-negative");
  auto edges = hg.hyperedge_inputs();
  for (auto& e : edges) {
    for (double& g : e.gamma) g = std::pow(g, alpha);
  }
  return EdvwHypergraph(hg.n_vertices(), std::move(edges), {hg.mu().begin(), hg.mu().end()});
}

}  // namespace edvw

#include "edvw/submodular.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>

#include "edvw/errors.hpp"
#include "edvw/median.hpp"

namespace edvw {

std::string_view to_string(HKind kind) noexcept {
  return kind == HKind::identity ? "identity" : "constant-one";
}

std::string_view to_string(GKind kind) noexcept {
  return kind == GKind::clique ? "clique" : "min-split";
}

HKind parse_h_kind(std::string_view name) {
  if (name == "identity") return HKind::identity;
  if (name == "constant-one" || name == "one") return HKind::constant_one;
  throw DomainError("unknown h kind '" + std::string(name) + "'");
}

GKind parse_g_kind(std::string_view name) {
  if (name == "clique") return GKind::clique;
  if (name == "min-split") return GKind::min_split;
  throw DomainError("unknown g kind '" + std::string(name) + "'");
}

double SubmodularWeightSpec::h(double kappa) const noexcept {
  return h_kind == HKind::identity ? kappa : 1.0;
}

double SubmodularWeightSpec::g(double mass, double total) const noexcept {
  mass = std::clamp(mass, 0.0, total);
  double rest = std::max(total - mass, 0.0);
  return g_kind == GKind::clique ? mass * rest : std::min(mass, rest);
}

namespace {

void check_mask(const EdvwHypergraph& hg, std::span<const std::uint8_t> in_set) {
  if (in_set.size() != hg.n_vertices()) throw DomainError("vertex set has wrong length");
}

void check_proper(const EdvwHypergraph& hg, std::span<const std::uint8_t> in_set) {
  check_mask(hg, in_set);
  auto k = std::count_if(in_set.begin(), in_set.end(), [](std::uint8_t b) { return b != 0; });
  if (k == 0 || static_cast<std::size_t>(k) == hg.n_vertices())
    throw DomainError("cut undefined for empty or full vertex set");
}

double side_mass(const EdvwHypergraph& hg, EdgeId e, std::span<const std::uint8_t> in_set) {
  auto members = hg.members(e);
  auto gamma = hg.gamma(e);
  double mass = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (in_set[members[i]]) mass += gamma[i];
  }
  return mass;
}

std::pair<double, double> split_volumes(const EdvwHypergraph& hg,
                                        std::span<const std::uint8_t> in_set) {
  auto mu = hg.mu();
  double in = 0.0;
  double out = 0.0;
  for (std::size_t v = 0; v < mu.size(); ++v) (in_set[v] ? in : out) += mu[v];
  return {in, out};
}

}  // namespace

double submodular_weight(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec, EdgeId e,
                         std::span<const std::uint8_t> in_set) {
  check_mask(hg, in_set);
  double mass = side_mass(hg, e, in_set);
  return spec.h(hg.kappa(e)) * spec.g(mass, hg.gamma_total(e));
}

double lovasz_extension(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec, EdgeId e,
                        std::span<const double> x) {
  if (x.size() != hg.n_vertices()) throw DomainError("lovasz_extension: vector has wrong length");
  auto members = hg.members(e);
  auto gamma = hg.gamma(e);
  std::vector<std::size_t> order(members.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[members[a]] > x[members[b]] || (x[members[a]] == x[members[b]] && a < b);
  });

  const double total = hg.gamma_total(e);
  double prefix = 0.0;
  double value = 0.0;
  for (std::size_t j = 0; j + 1 < order.size(); ++j) {
    prefix += gamma[order[j]];
    double gap = x[members[order[j]]] - x[members[order[j + 1]]];
    value += spec.g(prefix, total) * gap;
  }
  return spec.h(hg.kappa(e)) * value;
}

double hypergraph_total_variation(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec,
                                  std::span<const double> x) {
  if (x.size() != hg.n_vertices()) throw DomainError("total variation: vector has wrong length");
  double sum = 0.0;
  for (EdgeId e = 0; e < hg.n_hyperedges(); ++e) sum += lovasz_extension(hg, spec, e, x);
  return sum;
}

double cut_weight(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec,
                  std::span<const std::uint8_t> in_set) {
  check_proper(hg, in_set);
  double cut = 0.0;
  for (EdgeId e = 0; e < hg.n_hyperedges(); ++e) {
    cut += spec.h(hg.kappa(e)) * spec.g(side_mass(hg, e, in_set), hg.gamma_total(e));
  }
  return cut;
}

double exact_theta(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec, EdgeId e) {
  auto gamma = hg.gamma(e);
  const std::size_t n = gamma.size();
  if (n > 30) throw DomainError("exact_theta: hyperedge too large for enumeration");
  const double total = hg.gamma_total(e);
  double best = 0.0;
  // Complements give the same value, so the last member can stay outside S.
  const std::uint64_t limit = std::uint64_t{1} << (n - 1);
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (mask >> i & 1U) mass += gamma[i];
    }
    best = std::max(best, spec.g(mass, total));
  }
  return spec.h(hg.kappa(e)) * best;
}

double greedy_theta(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec, EdgeId e) {
  auto gamma = hg.gamma(e);
  std::vector<double> sorted(gamma.begin(), gamma.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double left = 0.0;
  double right = 0.0;
  for (double g : sorted) {
    if (left <= right) {
      left += g;
    } else {
      right += g;
    }
  }
  return spec.h(hg.kappa(e)) * spec.g(left, left + right);
}

DegreeInfo theta_and_degree(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec,
                            std::size_t exact_cap) {
  DegreeInfo info;
  info.theta.resize(hg.n_hyperedges());
  info.exact.resize(hg.n_hyperedges());
  info.degree.assign(hg.n_vertices(), 0.0);
  for (EdgeId e = 0; e < hg.n_hyperedges(); ++e) {
    bool exact = hg.members(e).size() <= std::min<std::size_t>(exact_cap, 30);
    info.theta[e] = exact ? exact_theta(hg, spec, e) : greedy_theta(hg, spec, e);
    info.exact[e] = exact ? 1 : 0;
    for (VertexId v : hg.members(e)) info.degree[v] += info.theta[e];
  }
  return info;
}

EdvwHypergraph with_degree_weights(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec,
                                   std::size_t exact_cap) {
  return hg.with_mu(theta_and_degree(hg, spec, exact_cap).degree);
}

double volume(const EdvwHypergraph& hg, std::span<const std::uint8_t> in_set) {
  check_mask(hg, in_set);
  auto mu = hg.mu();
  double vol = 0.0;
  for (std::size_t v = 0; v < mu.size(); ++v) {
    if (in_set[v]) vol += mu[v];
  }
  return vol;
}

double ncc(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec,
           std::span<const std::uint8_t> in_set) {
  double cut = cut_weight(hg, spec, in_set);
  auto [vol_s, vol_sbar] = split_volumes(hg, in_set);
  return cut / std::min(vol_s, vol_sbar);
}

double r1_functional(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec,
                     std::span<const double> x) {
  if (x.size() != hg.n_vertices()) throw DomainError("r1_functional: vector has wrong length");
  double denom = weighted_median(x, hg.mu()).objective;
  if (!(denom > 0.0)) throw DegenerateInputError("r1_functional: constant vector");
  return hypergraph_total_variation(hg, spec, x) / denom;
}

std::size_t Partition::size_s() const noexcept {
  return static_cast<std::size_t>(std::count(side_of.begin(), side_of.end(), std::uint8_t{1}));
}

Partition make_partition(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec,
                         std::vector<std::uint8_t> side_of) {
  for (auto& b : side_of) b = b ? 1 : 0;
  Partition p;
  p.cut_weight = cut_weight(hg, spec, side_of);
  std::tie(p.vol_s, p.vol_sbar) = split_volumes(hg, side_of);
  p.ncc = p.cut_weight / std::min(p.vol_s, p.vol_sbar);
  p.side_of = std::move(side_of);
  return p;
}

}  // namespace edvw

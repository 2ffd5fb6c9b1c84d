#include "edvw/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "edvw/errors.hpp"

namespace edvw {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

VertexMask vertex_mask(std::size_t n_vertices, std::initializer_list<VertexId> members) {
  return vertex_mask(n_vertices, std::span<const VertexId>(members.begin(), members.size()));
}

VertexMask vertex_mask(std::size_t n_vertices, std::span<const VertexId> members) {
  VertexMask mask(n_vertices, 0);
  for (VertexId v : members) {
    if (v >= n_vertices) throw DomainError("vertex " + std::to_string(v) + " out of range");
    mask[v] = 1;
  }
  return mask;
}

std::vector<std::uint32_t> hyperedge_components(std::size_t n_vertices,
                                                std::span<const HyperedgeInput> hyperedges) {
  DisjointSets sets(n_vertices);
  for (const auto& e : hyperedges) {
    for (std::size_t i = 1; i < e.members.size(); ++i) {
      if (e.members[i] >= n_vertices || e.members[0] >= n_vertices)
        throw DomainError("hyperedge member out of range");
      sets.unite(e.members[0], e.members[i]);
    }
  }
  std::vector<std::uint32_t> label(n_vertices);
  std::vector<std::uint32_t> root_label(n_vertices, UINT32_MAX);
  std::uint32_t next = 0;
  for (std::size_t v = 0; v < n_vertices; ++v) {
    auto r = sets.find(v);
    if (root_label[r] == UINT32_MAX) root_label[r] = next++;
    label[v] = root_label[r];
  }
  return label;
}

EdvwHypergraph::EdvwHypergraph(std::size_t n_vertices, std::vector<HyperedgeInput> hyperedges,
                               std::vector<double> mu) {
  if (n_vertices == 0) throw DomainError("hypergraph needs at least one vertex");
  if (mu.empty()) mu.assign(n_vertices, 1.0);
  if (mu.size() != n_vertices) throw DomainError("vertex weight vector has wrong length");
  for (double m : mu) {
    if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("vertex weights must be positive");
  }
  mu_ = std::move(mu);

  offsets_.reserve(hyperedges.size() + 1);
  offsets_.push_back(0);
  for (std::size_t id = 0; id < hyperedges.size(); ++id) {
    auto& e = hyperedges[id];
    const std::string where = "hyperedge " + std::to_string(id);
    if (e.members.size() != e.gamma.size()) throw DomainError(where + ": members/gamma size mismatch");
    if (e.members.size() < 2) throw DomainError(where + ": needs at least two members");
    if (!(e.kappa > 0.0) || !std::isfinite(e.kappa)) throw DomainError(where + ": kappa must be positive");

    std::vector<std::size_t> order(e.members.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return e.members[a] < e.members[b]; });
    double total = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      VertexId v = e.members[order[k]];
      double g = e.gamma[order[k]];
      if (v >= n_vertices) throw DomainError(where + ": member out of range");
      if (k > 0 && v == e.members[order[k - 1]]) throw DomainError(where + ": duplicate member");
      if (!(g > 0.0) || !std::isfinite(g)) throw DomainError(where + ": EDVWs must be positive");
      members_.push_back(v);
      gamma_.push_back(g);
      total += g;
    }
    kappa_.push_back(e.kappa);
    totals_.push_back(total);
    offsets_.push_back(members_.size());
  }

  std::vector<std::size_t> count(n_vertices, 0);
  for (VertexId v : members_) ++count[v];
  inc_offsets_.assign(n_vertices + 1, 0);
  for (std::size_t v = 0; v < n_vertices; ++v) inc_offsets_[v + 1] = inc_offsets_[v] + count[v];
  inc_.resize(members_.size());
  std::vector<std::size_t> fill(inc_offsets_.begin(), inc_offsets_.end() - 1);
  for (EdgeId e = 0; e < kappa_.size(); ++e) {
    for (std::size_t s = offsets_[e]; s < offsets_[e + 1]; ++s) {
      inc_[fill[members_[s]]++] = Incidence{e, static_cast<std::uint32_t>(s)};
    }
  }

  auto labels = hyperedge_components(n_vertices, hyperedges);
  if (std::any_of(labels.begin(), labels.end(), [](std::uint32_t l) { return l != 0; }))
    throw DomainError("hypergraph is not connected");
}

void EdvwHypergraph::check_edge(EdgeId e) const {
  if (e >= kappa_.size()) throw DomainError("unknown hyperedge id " + std::to_string(e));
}

std::span<const VertexId> EdvwHypergraph::members(EdgeId e) const {
  check_edge(e);
  return std::span<const VertexId>(members_).subspan(offsets_[e], offsets_[e + 1] - offsets_[e]);
}

std::span<const double> EdvwHypergraph::gamma(EdgeId e) const {
  check_edge(e);
  return std::span<const double>(gamma_).subspan(offsets_[e], offsets_[e + 1] - offsets_[e]);
}

double EdvwHypergraph::kappa(EdgeId e) const {
  check_edge(e);
  return kappa_[e];
}

double EdvwHypergraph::gamma_total(EdgeId e) const {
  check_edge(e);
  return totals_[e];
}

double EdvwHypergraph::gamma_of(EdgeId e, VertexId v) const {
  auto m = members(e);
  auto it = std::lower_bound(m.begin(), m.end(), v);
  if (it == m.end() || *it != v) return 0.0;
  return gamma_[offsets_[e] + static_cast<std::size_t>(it - m.begin())];
}

std::span<const EdvwHypergraph::Incidence> EdvwHypergraph::incident(VertexId v) const {
  if (v >= mu_.size()) throw DomainError("vertex " + std::to_string(v) + " out of range");
  return std::span<const Incidence>(inc_).subspan(inc_offsets_[v], inc_offsets_[v + 1] - inc_offsets_[v]);
}

EdvwHypergraph EdvwHypergraph::with_mu(std::vector<double> mu) const {
  return EdvwHypergraph(n_vertices(), hyperedge_inputs(), std::move(mu));
}

std::vector<HyperedgeInput> EdvwHypergraph::hyperedge_inputs() const {
  std::vector<HyperedgeInput> out;
  out.reserve(n_hyperedges());
  for (EdgeId e = 0; e < n_hyperedges(); ++e) {
    auto m = members(e);
    auto g = gamma(e);
    out.push_back(HyperedgeInput{kappa_[e], {m.begin(), m.end()}, {g.begin(), g.end()}});
  }
  return out;
}

}  // namespace edvw

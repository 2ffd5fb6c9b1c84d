#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace edvw {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

// Indicator of a vertex subset: mask[v] != 0 iff v is in the set.
using VertexMask = std::vector<std::uint8_t>;

VertexMask vertex_mask(std::size_t n_vertices, std::initializer_list<VertexId> members);
VertexMask vertex_mask(std::size_t n_vertices, std::span<const VertexId> members);

// Raw hyperedge description used to build (and to copy out of) a hypergraph.
// gamma[i] is the edge-dependent weight of members[i].
struct HyperedgeInput {
  double kappa = 1.0;
  std::vector<VertexId> members;
  std::vector<double> gamma;
};

// Connected-component label per vertex of the hypergraph described by
// `hyperedges`; labels are dense and numbered in order of first vertex.
std::vector<std::uint32_t> hyperedge_components(std::size_t n_vertices,
                                                std::span<const HyperedgeInput> hyperedges);

// Hypergraph with edge-dependent vertex weights (EDVWs).
//
// Every hyperedge e carries a connection strength kappa(e) > 0 and a weight
// gamma_e(v) > 0 for each of its members; gamma_e(v) is zero for non-members.
// Each vertex carries a positive weight mu(v) used for volumes.
//
// The object is immutable once built and can be shared across threads.
// Construction validates every invariant, including connectivity, and throws
// DomainError when one is violated.
class EdvwHypergraph {
 public:
  struct Incidence {
    EdgeId edge;
    std::uint32_t slot;  // index into the flat member/gamma arrays
    friend bool operator==(const Incidence&, const Incidence&) = default;
  };

  // `mu` may be empty, in which case every vertex weight is 1.
  EdvwHypergraph(std::size_t n_vertices, std::vector<HyperedgeInput> hyperedges,
                 std::vector<double> mu = {});

  std::size_t n_vertices() const noexcept { return mu_.size(); }
  std::size_t n_hyperedges() const noexcept { return kappa_.size(); }
  // Sum of hyperedge cardinalities.
  std::size_t n_incidences() const noexcept { return members_.size(); }

  // Members of e in increasing vertex order.
  std::span<const VertexId> members(EdgeId e) const;
  // EDVWs aligned with members(e).
  std::span<const double> gamma(EdgeId e) const;
  double kappa(EdgeId e) const;
  // T_e = sum of gamma_e over the members of e.
  double gamma_total(EdgeId e) const;
  // gamma_e(v), zero when v is not a member of e.
  double gamma_of(EdgeId e, VertexId v) const;

  std::span<const double> mu() const noexcept { return mu_; }
  std::span<const Incidence> incident(VertexId v) const;

  // Flat views; slot indices from Incidence address these.
  std::span<const VertexId> flat_members() const noexcept { return members_; }
  std::span<const double> flat_gamma() const noexcept { return gamma_; }
  std::size_t edge_begin(EdgeId e) const { return offsets_[e]; }

  EdvwHypergraph with_mu(std::vector<double> mu) const;
  std::vector<HyperedgeInput> hyperedge_inputs() const;

  friend bool operator==(const EdvwHypergraph&, const EdvwHypergraph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> members_;
  std::vector<double> gamma_;
  std::vector<double> kappa_;
  std::vector<double> totals_;
  std::vector<double> mu_;
  std::vector<std::size_t> inc_offsets_;
  std::vector<Incidence> inc_;

  void check_edge(EdgeId e) const;
};

}  // namespace edvw

#pragma once

#include <cstddef>
#include <cstdint>

#include "edvw/clique_expansion.hpp"
#include "edvw/hypergraph.hpp"
#include "edvw/submodular.hpp"

namespace edvw {

inline constexpr std::size_t kOracleMaxVertices = 20;

struct ExactCheeger {
  double h2 = 0.0;
  Partition partition;  // S contains vertex 0
  std::size_t splits = 0;
};

// Minimum NCC over all 2^(N-1) - 1 two-block splits, each evaluated from
// scratch. Among splits within 1e-12 (relative) of the minimum the
// lexicographically smallest S wins, S being the side holding vertex 0.
// Refuses N > kOracleMaxVertices with PreconditionError.
ExactCheeger exact_h2(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec);
// Same enumeration with graph cuts.
ExactCheeger exact_h2(const WeightedGraph& graph);

struct RandomInstanceSpec {
  std::size_t n_vertices = 8;
  std::size_t n_hyperedges = 4;
  std::size_t min_edge_size = 2;
  std::size_t max_edge_size = 0;  // 0 means n_vertices
  double gamma_lo = 0.1;
  double gamma_hi = 3.0;
  double kappa_lo = 0.5;
  double kappa_hi = 2.0;
  // Draw gamma and kappa as integers in [lo, hi].
  bool integer_weights = false;
};

// Deterministic per seed (portable draws); resampled until connected. mu is
// all ones. Throws DomainError if no connected instance turns up.
EdvwHypergraph random_instance(std::uint64_t seed, const RandomInstanceSpec& spec);

// Seed for which random_instance with n = 3, m = 1, integer weights,
// gamma in [1, 3] and kappa in [1, 1] yields V = {1, 2, 3}, gamma = (1, 2, 3).
inline constexpr std::uint64_t kRunningExampleSeed = 34;
RandomInstanceSpec running_example_spec();

}  // namespace edvw

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "edvw/hypergraph.hpp"

namespace edvw {

// h_e : R+ -> R+ applied to kappa(e).
enum class HKind : std::uint8_t { constant_one, identity };

// g_e on [0, T_e], T_e = sum of the hyperedge's EDVWs.
//   clique:    g(a) = a (T - a)
//   min_split: g(a) = min(a, T - a)
// Both are concave, symmetric about T/2 and vanish at 0, which makes the
// resulting hyperedge weight symmetric and submodular.
enum class GKind : std::uint8_t { clique, min_split };

std::string_view to_string(HKind kind) noexcept;
std::string_view to_string(GKind kind) noexcept;
HKind parse_h_kind(std::string_view name);
GKind parse_g_kind(std::string_view name);

// Selects the cut-cost family w_e(S) = h(kappa(e)) * g(sum_{v in S cap e} gamma_e(v)).
struct SubmodularWeightSpec {
  HKind h_kind = HKind::identity;
  GKind g_kind = GKind::clique;

  double h(double kappa) const noexcept;
  // `mass` is clamped into [0, total] to absorb rounding in prefix sums.
  double g(double mass, double total) const noexcept;

  friend bool operator==(const SubmodularWeightSpec&, const SubmodularWeightSpec&) = default;
};

// w_e(S) for an arbitrary S subset of V (only S cap e matters).
double submodular_weight(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec, EdgeId e,
                         std::span<const std::uint8_t> in_set);

// Lovasz extension f_e(x) of w_e.
double lovasz_extension(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec, EdgeId e,
                        std::span<const double> x);

// sum_e f_e(x): the quadratic-form analogue <x, Delta_1 x> of the hypergraph 1-Laplacian.
double hypergraph_total_variation(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec,
                                  std::span<const double> x);

// cut(S, V \ S) = sum_e w_e(S). S must be neither empty nor V.
double cut_weight(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec,
                  std::span<const std::uint8_t> in_set);

struct DegreeInfo {
  std::vector<double> theta;       // per hyperedge, max_{S subset e} w_e(S)
  std::vector<std::uint8_t> exact; // 1 when theta came from exhaustive search
  std::vector<double> degree;      // per vertex, sum of theta over incident hyperedges
};

inline constexpr std::size_t kDefaultExactCap = 16;

// theta_e is exact for |e| <= exact_cap (enumeration of subset sums), otherwise
// it is the greedy balanced split: members sorted by decreasing gamma, each put
// on the currently lighter side, theta = w_e(one side).
DegreeInfo theta_and_degree(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec,
                            std::size_t exact_cap = kDefaultExactCap);

double exact_theta(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec, EdgeId e);
double greedy_theta(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec, EdgeId e);

// Same hypergraph with mu replaced by the EDVW degrees under `spec`.
EdvwHypergraph with_degree_weights(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec,
                                   std::size_t exact_cap = kDefaultExactCap);

double volume(const EdvwHypergraph& hg, std::span<const std::uint8_t> in_set);

// cut(S) / min(vol S, vol V\S).
double ncc(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec,
           std::span<const std::uint8_t> in_set);

// R1(x) = sum_e f_e(x) / min_c ||x - c 1||_{1,mu}. Throws DegenerateInputError
// for constant x.
double r1_functional(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec,
                     std::span<const double> x);

// A two-block split of V with its cached objective terms.
struct Partition {
  std::vector<std::uint8_t> side_of;  // 1 for S, 0 for the complement
  double cut_weight = 0.0;
  double vol_s = 0.0;
  double vol_sbar = 0.0;
  double ncc = 0.0;

  std::size_t size_s() const noexcept;
};

Partition make_partition(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec,
                         std::vector<std::uint8_t> side_of);

}  // namespace edvw

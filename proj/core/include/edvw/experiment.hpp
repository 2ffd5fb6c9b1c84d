#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "edvw/clique_expansion.hpp"
#include "edvw/datasets.hpp"
#include "edvw/hypergraph.hpp"
#include "edvw/ipm.hpp"
#include "edvw/lanczos.hpp"

namespace edvw {

enum class Method { edvw_1lap, rw_2lap, cardinality_1lap };

std::string_view to_string(Method m) noexcept;
Method parse_method(std::string_view name);

enum class MuPolicy {
  degree,  // mu = EDVW degree under the method's weight spec
  given,   // keep the hypergraph's mu
  ones,
};

std::string_view to_string(MuPolicy p) noexcept;
MuPolicy parse_mu_policy(std::string_view name);

struct ClusterOptions {
  IpmConfig ipm;
  LanczosOptions lanczos;
  std::size_t exact_cap = kDefaultExactCap;
  // Above this many expansion pairs the clique expansion is applied
  // matrix-free instead of being stored.
  std::size_t pair_budget = kDefaultPairBudget;
  // The stored graph is also skipped when it has more than this many pairs
  // per incidence; the matrix-free path is then cheaper per iteration.
  double max_pairs_per_incidence = 8.0;
  MuPolicy mu = MuPolicy::degree;
  // When set, cardinality-1lap recomputes kappa from the unit EDVWs.
  std::optional<KappaRule> cardinality_kappa;
  bool include_vector = false;
  bool include_partition = true;
  bool emit_timings = false;

  nlohmann::json to_json() const;
};

struct ClusteringReport {
  std::string method;
  double alpha = 0.0;
  std::size_t n_vertices = 0;
  std::size_t n_hyperedges = 0;
  std::string operator_kind;  // "explicit-graph", "implicit-clique" or "random-walk"
  std::size_t expansion_pairs = 0;

  double ncc = 0.0;            // under the method's own hypergraph
  double ncc_edvw = 0.0;       // same partition under the input EDVW hypergraph
  double cut_weight = 0.0;
  double vol_s = 0.0;
  double vol_sbar = 0.0;
  std::size_t size_s = 0;
  double threshold = 0.0;
  std::optional<double> clustering_error;

  double lambda = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  bool inner_converged = true;
  std::size_t restart_index = 0;
  std::vector<double> restart_ncc;

  std::vector<double> eigenvector;
  std::vector<std::uint8_t> partition;
  std::map<std::string, double> timings;  // seconds
  nlohmann::json config;
  nlohmann::json provenance;
};

nlohmann::json to_json(const ClusteringReport& report);

// min over the two block-to-label assignments of the mismatch fraction.
double clustering_error(std::span<const std::uint8_t> side_of, std::span<const int> labels);

// Runs one method end to end on `hg` (EDVWs already include alpha).
ClusteringReport run_method(const EdvwHypergraph& hg, Method method, const ClusterOptions& options,
                            std::span<const int> labels = {}, double alpha = 0.0,
                            const nlohmann::json& provenance = {});

struct SweepRow {
  double alpha = 0.0;
  std::string method;
  std::optional<double> error;
  double ncc = 0.0;
  double ncc_edvw = 0.0;
  double lambda = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

SweepRow sweep_row(const ClusteringReport& report);
std::string sweep_csv(std::span<const SweepRow> rows);
nlohmann::json sweep_json(std::span<const SweepRow> rows);

// Builds the hypergraph for every alpha and runs every method on it. Methods
// whose input does not depend on alpha (cardinality-1lap with kappa
// recomputed) are solved once and reused. `workers` > 1 runs alpha values
// concurrently; the output order is alpha-major, then method order.
using DatasetBuilder = std::function<DatasetBuild(double alpha)>;
std::vector<ClusteringReport> run_sweep(const DatasetBuilder& build, std::span<const double> alphas,
                                        std::span<const Method> methods, const ClusterOptions& options,
                                        std::size_t workers = 1);

std::vector<double> default_alpha_grid();

}  // namespace edvw

#include "edvw/experiment.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <thread>

#include "edvw/cardinality.hpp"
#include "edvw/errors.hpp"
#include "edvw/implicit_clique.hpp"
#include "edvw/random_walk.hpp"

namespace edvw {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::edvw_1lap: return "edvw-1lap";
    case Method::rw_2lap: return "rw-2lap";
    case Method::cardinality_1lap: return "cardinality-1lap";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "edvw-1lap") return Method::edvw_1lap;
  if (name == "rw-2lap") return Method::rw_2lap;
  if (name == "cardinality-1lap") return Method::cardinality_1lap;
  throw DomainError("unknown method '" + std::string(name) + "'");
}

std::string_view to_string(MuPolicy p) noexcept {
  switch (p) {
    case MuPolicy::degree: return "degree";
    case MuPolicy::given: return "given";
    case MuPolicy::ones: return "ones";
  }
  return "unknown";
}

MuPolicy parse_mu_policy(std::string_view name) {
  if (name == "degree") return MuPolicy::degree;
  if (name == "given" || name == "file") return MuPolicy::given;
  if (name == "ones") return MuPolicy::ones;
  throw DomainError("unknown mu policy '" + std::string(name) + "'");
}

nlohmann::json ClusterOptions::to_json() const {
  nlohmann::json j;
  j["ipm"] = {{"max_outer_iters", ipm.max_outer_iters}, {"outer_tol", ipm.outer_tol},
              {"inner_max_iters", ipm.inner_max_iters}, {"inner_tol", ipm.inner_tol},
              {"inner_rel_gap", ipm.inner_rel_gap},     {"n_restarts", ipm.n_restarts},
              {"seed", ipm.rng_seed},                   {"indicator_refresh", ipm.indicator_refresh}};
  j["lanczos"] = {{"basis_size", lanczos.basis_size},
                  {"max_restarts", lanczos.max_restarts},
                  {"tolerance", lanczos.tolerance},
                  {"seed", lanczos.seed}};
  j["exact_cap"] = exact_cap;
  j["pair_budget"] = pair_budget;
  j["max_pairs_per_incidence"] = max_pairs_per_incidence;
  j["mu"] = std::string(edvw::to_string(mu));
  j["cardinality_kappa"] = cardinality_kappa ? nlohmann::json(std::string(edvw::to_string(*cardinality_kappa)))
                                             : nlohmann::json("keep");
  return j;
}

nlohmann::json to_json(const ClusteringReport& r) {
  nlohmann::json j;
  j["method"] = r.method;
  j["alpha"] = r.alpha;
  j["n_vertices"] = r.n_vertices;
  j["n_hyperedges"] = r.n_hyperedges;
  j["operator"] = r.operator_kind;
  j["expansion_pairs"] = r.expansion_pairs;
  j["ncc"] = r.ncc;
  j["ncc_edvw"] = r.ncc_edvw;
  j["cut_weight"] = r.cut_weight;
  j["vol_s"] = r.vol_s;
  j["vol_sbar"] = r.vol_sbar;
  j["size_s"] = r.size_s;
  j["threshold"] = r.threshold;
  j["clustering_error"] = r.clustering_error ? nlohmann::json(*r.clustering_error) : nlohmann::json(nullptr);
  j["lambda"] = r.lambda;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["inner_converged"] = r.inner_converged;
  j["restart_index"] = r.restart_index;
  j["restart_ncc"] = r.restart_ncc;
  if (!r.eigenvector.empty()) j["eigenvector"] = r.eigenvector;
  if (!r.partition.empty()) j["partition"] = r.partition;
  if (!r.timings.empty()) j["timings"] = r.timings;
  j["config"] = r.config;
  j["provenance"] = r.provenance;
  return j;
}

double clustering_error(std::span<const std::uint8_t> side_of, std::span<const int> labels) {
  if (side_of.size() != labels.size()) throw DomainError("clustering_error: label length mismatch");
  if (labels.empty()) throw DomainError("clustering_error: no vertices");
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) throw DomainError("clustering_error: labels must be binary");
    if ((side_of[i] != 0) != (labels[i] == 1)) ++mismatches;
  }
  const std::size_t best = std::min(mismatches, labels.size() - mismatches);
  return static_cast<double>(best) / static_cast<double>(labels.size());
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

EdvwHypergraph apply_mu(const EdvwHypergraph& hg, const SubmodularWeightSpec& spec, const ClusterOptions& o) {
  switch (o.mu) {
    case MuPolicy::degree: return with_degree_weights(hg, spec, o.exact_cap);
    case MuPolicy::ones: return hg.with_mu(std::vector<double>(hg.n_vertices(), 1.0));
    case MuPolicy::given: return hg;
  }
  return hg;
}

void fill_partition(ClusteringReport& r, const Partition& p) {
  r.ncc = p.ncc;
  r.cut_weight = p.cut_weight;
  r.vol_s = p.vol_s;
  r.vol_sbar = p.vol_sbar;
  r.size_s = p.size_s();
}

}  // namespace

ClusteringReport run_method(const EdvwHypergraph& hg, Method method, const ClusterOptions& options,
                            std::span<const int> labels, double alpha, const nlohmann::json& provenance) {
  options.ipm.validate();
  if (!labels.empty() && labels.size() != hg.n_vertices())
    throw DomainError("labels need one entry per vertex");
  const auto start = Clock::now();
  const SubmodularWeightSpec spec{HKind::identity, GKind::clique};

  ClusteringReport r;
  r.method = std::string(to_string(method));
  r.alpha = alpha;
  r.n_vertices = hg.n_vertices();
  r.n_hyperedges = hg.n_hyperedges();
  r.config = options.to_json();
  r.provenance = provenance;

  auto t = Clock::now();
  const EdvwHypergraph reference = apply_mu(hg, spec, options);
  Partition partition;
  if (method == Method::rw_2lap) {
    r.timings["setup"] = seconds_since(t);
    t = Clock::now();
    auto rw = rw_cluster(reference, spec, options.lanczos);
    r.timings["solve"] = seconds_since(t);
    r.operator_kind = "random-walk";
    r.lambda = rw.eigenvalue;
    r.iterations = rw.matvecs;
    r.converged = true;
    r.threshold = rw.threshold;
    partition = std::move(rw.partition);
    fill_partition(r, partition);
    if (options.include_vector) r.eigenvector = std::move(rw.embedding);
  } else {
    const EdvwHypergraph own = method == Method::cardinality_1lap
                                   ? apply_mu(cardinality_variant(hg, options.cardinality_kappa), spec, options)
                                   : reference;
    r.expansion_pairs = expansion_pair_count(own);
    EigResult eig;
    const bool sparse_enough = static_cast<double>(r.expansion_pairs) <=
                               options.max_pairs_per_incidence * static_cast<double>(own.n_incidences());
    if (r.expansion_pairs <= options.pair_budget && sparse_enough) {
      const WeightedGraph graph = clique_expand(own, spec, options.pair_budget);
      r.timings["setup"] = seconds_since(t);
      r.operator_kind = "explicit-graph";
      t = Clock::now();
      eig = ipm_second_eigvec(graph, options.ipm);
    } else {
      const CliqueOperator op(own, spec);
      const CliqueTvOperator tv(op);
      r.timings["setup"] = seconds_since(t);
      r.operator_kind = "implicit-clique";
      t = Clock::now();
      eig = ipm_second_eigvec(tv, options.ipm);
    }
    r.timings["solve"] = seconds_since(t);
    r.lambda = eig.lambda;
    r.iterations = eig.iters;
    r.converged = eig.converged;
    r.restart_index = eig.restart_index;
    for (const auto& run : eig.runs) {
      r.restart_ncc.push_back(run.split.ncc);
      if (&run == &eig.runs[eig.restart_index]) r.inner_converged = run.inner_converged;
    }
    r.threshold = eig.split.threshold;
    partition = make_partition(own, spec, eig.split.side_of);
    fill_partition(r, partition);
    if (options.include_vector) r.eigenvector = std::move(eig.x);
  }
  r.ncc_edvw = method == Method::cardinality_1lap ? ncc(reference, spec, partition.side_of) : r.ncc;
  if (!labels.empty()) r.clustering_error = clustering_error(partition.side_of, labels);
  if (options.include_partition) r.partition = partition.side_of;
  r.timings["total"] = seconds_since(start);
  if (!options.emit_timings) r.timings.clear();
  return r;
}

SweepRow sweep_row(const ClusteringReport& r) {
  return SweepRow{r.alpha, r.method, r.clustering_error, r.ncc, r.ncc_edvw, r.lambda, r.iterations, r.converged};
}

namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

}  // namespace

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::ostringstream out;
  out << "alpha,method,error,ncc,ncc_edvw,lambda,iterations,converged\n";
  for (const auto& r : rows) {
    out << fmt(r.alpha) << ',' << r.method << ',' << (r.error ? fmt(*r.error) : std::string()) << ','
        << fmt(r.ncc) << ',' << fmt(r.ncc_edvw) << ',' << fmt(r.lambda) << ',' << r.iterations << ','
        << (r.converged ? "true" : "false") << '\n';
  }
  return out.str();
}

nlohmann::json sweep_json(std::span<const SweepRow> rows) {
  auto out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"alpha", r.alpha},
                   {"method", r.method},
                   {"error", r.error ? nlohmann::json(*r.error) : nlohmann::json(nullptr)},
                   {"ncc", r.ncc},
                   {"ncc_edvw", r.ncc_edvw},
                   {"lambda", r.lambda},
                   {"iterations", r.iterations},
                   {"converged", r.converged}});
  }
  return out;
}

std::vector<ClusteringReport> run_sweep(const DatasetBuilder& build, std::span<const double> alphas,
                                        std::span<const Method> methods, const ClusterOptions& options,
                                        std::size_t workers) {
  std::vector<DatasetBuild> builds;
  builds.reserve(alphas.size());
  for (double a : alphas) builds.push_back(build(a));

  struct Job {
    std::size_t alpha_index;
    Method method;
    std::size_t source;  // index of the job whose result is reused, or itself
  };
  std::vector<Job> jobs;
  std::vector<std::optional<EdvwHypergraph>> variants(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    for (Method m : methods) {
      Job job{i, m, jobs.size()};
      if (m == Method::cardinality_1lap) {
        variants[i] = cardinality_variant(builds[i].hypergraph, options.cardinality_kappa);
        for (std::size_t k = 0; k < jobs.size(); ++k) {
          const auto& other = jobs[k];
          if (other.method == m && other.source == k &&
              *variants[other.alpha_index] == *variants[i] &&
              builds[other.alpha_index].labels == builds[i].labels) {
            job.source = other.source;
            break;
          }
        }
      }
      jobs.push_back(job);
    }
  }

  std::vector<ClusteringReport> reports(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  auto run = [&](std::size_t k) {
    if (jobs[k].source != k) return;
    try {
      const auto& b = builds[jobs[k].alpha_index];
      reports[k] = run_method(b.hypergraph, jobs[k].method, options, b.labels, alphas[jobs[k].alpha_index],
                              b.provenance);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };
  workers = std::max<std::size_t>(1, std::min(workers, jobs.size()));
  if (workers == 1) {
    for (std::size_t k = 0; k < jobs.size(); ++k) run(k);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < jobs.size(); k += workers) run(k);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    if (jobs[k].source == k) continue;
    reports[k] = reports[jobs[k].source];
    reports[k].alpha = alphas[jobs[k].alpha_index];
    reports[k].provenance = builds[jobs[k].alpha_index].provenance;
  }
  return reports;
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 8; ++i) grid.push_back(0.25 * i);
  return grid;
}

}  // namespace edvw

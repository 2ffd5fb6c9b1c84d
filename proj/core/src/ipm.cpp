#include "edvw/ipm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "edvw/errors.hpp"
#include "edvw/lanczos.hpp"
#include "edvw/median.hpp"
#include "edvw/random.hpp"

namespace edvw {

void IpmConfig::validate() const {
  if (max_outer_iters < 1) throw DomainError("max_outer_iters must be at least 1");
  if (inner_max_iters < 1) throw DomainError("inner_max_iters must be at least 1");
  if (n_restarts < 1) throw DomainError("n_restarts must be at least 1");
  if (!(outer_tol > 0.0)) throw DomainError("outer_tol must be positive");
  if (!(inner_tol > 0.0)) throw DomainError("inner_tol must be positive");
  if (!(inner_rel_gap >= 0.0)) throw DomainError("inner_rel_gap must be non-negative");
  if (threads < 1) throw DomainError("threads must be at least 1");
}

namespace {

constexpr std::size_t kCheckEvery = 10;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Subtracts the mu-weighted median and scales to unit 2-norm. Returns false
// for (numerically) constant input.
bool center_normalize(std::vector<double>& x, std::span<const double> mu) {
  const double c = weighted_median(x, mu).center;
  for (double& v : x) v -= c;
  const double n = norm2(x);
  if (!(n > 0.0) || !std::isfinite(n)) return false;
  for (double& v : x) v /= n;
  return true;
}

// mu(v) sign(x_v - c*) with the zero entries filled so that the vector sums
// to zero; valid because c* is a weighted median.
std::vector<double> median_subgradient(std::span<const double> x, std::span<const double> mu) {
  const double c = weighted_median(x, mu).center;
  std::vector<double> v(x.size(), 0.0);
  double signed_sum = 0.0;
  double tied = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > c) {
      v[i] = mu[i];
    } else if (x[i] < c) {
      v[i] = -mu[i];
    } else {
      tied += mu[i];
      continue;
    }
    signed_sum += v[i];
  }
  if (tied > 0.0) {
    const double fill = std::clamp(-signed_sum / tied, -1.0, 1.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == c) v[i] = fill * mu[i];
    }
  }
  return v;
}

void project_ball(std::vector<double>& x) {
  const double n = norm2(x);
  if (n > 1.0) {
    for (double& v : x) v /= n;
  }
}

struct Tracker {
  std::vector<double> best_x;
  double best_obj;
  double best_dual = -std::numeric_limits<double>::infinity();

  Tracker(std::span<const double> x_prev, double obj_prev)
      : best_x(x_prev.begin(), x_prev.end()), best_obj(obj_prev) {}

  void offer(const std::vector<double>& x, double obj) {
    if (obj < best_obj) {
      best_obj = obj;
      best_x = x;
    }
  }
  double gap() const { return std::max(best_obj - best_dual, 0.0); }

  bool done(const IpmConfig& cfg, double scale) const {
    const double g = gap();
    if (g <= cfg.inner_tol * scale) return true;
    return best_obj < 0.0 && g <= cfg.inner_rel_gap * std::abs(best_obj);
  }
};

InnerResult finish(Tracker& tr, double obj_prev, std::size_t iters, bool converged) {
  InnerResult out;
  out.descended = tr.best_obj < 0.0 && tr.best_obj < obj_prev;
  out.objective = tr.best_obj;
  out.gap = tr.gap();
  out.iterations = iters;
  out.converged = converged;
  out.x = std::move(tr.best_x);
  return out;
}

struct GraphState final : TvOperator::State {
  std::vector<double> alpha;
};

struct CliqueState final : TvOperator::State {
  CliqueOperator::Workspace ws;
  double eps = 0.0;
};

class NormalizedLaplacian final : public SymmetricOperator {
 public:
  explicit NormalizedLaplacian(const TvOperator& op)
      : op_(op), degree_(op.adjacency_degree()), inv_sqrt_mu_(op.size()), scratch_(op.size()),
        product_(op.size()) {
    auto mu = op.mu();
    for (std::size_t i = 0; i < mu.size(); ++i) inv_sqrt_mu_[i] = 1.0 / std::sqrt(mu[i]);
    // Gershgorin bound with |M_uv| = A_uv / sqrt(mu_u mu_v).
    op_.apply_adjacency(inv_sqrt_mu_, product_);
    for (std::size_t i = 0; i < mu.size(); ++i) {
      bound_ = std::max(bound_, degree_[i] / mu[i] + product_[i] * inv_sqrt_mu_[i]);
    }
  }

  std::size_t size() const override { return op_.size(); }
  double norm_bound() const override { return bound_; }
  void apply(std::span<const double> in, std::span<double> out) const override {
    for (std::size_t i = 0; i < in.size(); ++i) scratch_[i] = in[i] * inv_sqrt_mu_[i];
    op_.apply_adjacency(scratch_, product_);
    for (std::size_t i = 0; i < in.size(); ++i) {
      out[i] = (degree_[i] * scratch_[i] - product_[i]) * inv_sqrt_mu_[i];
    }
  }

  std::vector<double> kernel() const {
    std::vector<double> k(op_.size());
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = 1.0 / inv_sqrt_mu_[i];
    return k;
  }
  std::span<const double> inv_sqrt_mu() const { return inv_sqrt_mu_; }

 private:
  const TvOperator& op_;
  std::vector<double> degree_;
  std::vector<double> inv_sqrt_mu_;
  mutable std::vector<double> scratch_;
  mutable std::vector<double> product_;
  double bound_ = 0.0;
};

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> x(n);
  for (double& v : x) v = uniform(rng, -1.0, 1.0);
  return x;
}

}  // namespace

// ---------------------------------------------------------------------------

GraphTvOperator::GraphTvOperator(const WeightedGraph& graph) : graph_(graph) {
  std::vector<double> sq(graph.n_vertices(), 0.0);
  for (const auto& e : graph.edges()) {
    sq[e.u] += e.weight * e.weight;
    sq[e.v] += e.weight * e.weight;
  }
  lipschitz_ = 2.0 * *std::max_element(sq.begin(), sq.end());
  if (!(lipschitz_ > 0.0)) lipschitz_ = 1.0;
}

double GraphTvOperator::total_variation(std::span<const double> x) const {
  return graph_total_variation(graph_, x);
}

ThresholdSplit GraphTvOperator::best_threshold(std::span<const double> x) const {
  return sweep_threshold(x, graph_);
}

void GraphTvOperator::apply_adjacency(std::span<const double> in, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& e : graph_.edges()) {
    out[e.u] += e.weight * in[e.v];
    out[e.v] += e.weight * in[e.u];
  }
}

std::vector<double> GraphTvOperator::adjacency_degree() const {
  std::vector<double> d(graph_.n_vertices(), 0.0);
  for (const auto& e : graph_.edges()) {
    d[e.u] += e.weight;
    d[e.v] += e.weight;
  }
  return d;
}

std::unique_ptr<TvOperator::State> GraphTvOperator::make_state() const {
  return std::make_unique<GraphState>();
}

InnerResult GraphTvOperator::solve_inner(std::span<const double> v, double lambda,
                                         std::span<const double> x_prev, const IpmConfig& cfg,
                                         State& state_base) const {
  auto& state = dynamic_cast<GraphState&>(state_base);
  const auto edges = graph_.edges();
  const std::size_t n = graph_.n_vertices();
  const double obj_prev = total_variation(x_prev) - lambda * dot(v, x_prev);
  Tracker tr(x_prev, obj_prev);
  if (!(lambda > 0.0)) {
    tr.best_dual = 0.0;
    return finish(tr, obj_prev, 0, true);
  }
  const double scale = std::max(lambda * norm2(v), std::numeric_limits<double>::min());

  auto& alpha = state.alpha;
  if (alpha.size() != edges.size()) {
    alpha.resize(edges.size());
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const double d = x_prev[edges[k].u] - x_prev[edges[k].v];
      alpha[k] = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
    }
  }
  std::vector<double> y = alpha;
  std::vector<double> next(edges.size());
  std::vector<double> r(n);
  std::vector<double> x(n);
  auto residual = [&](const std::vector<double>& a) {
    for (std::size_t i = 0; i < n; ++i) r[i] = -lambda * v[i];
    for (std::size_t k = 0; k < edges.size(); ++k) {
      r[edges[k].u] += edges[k].weight * a[k];
      r[edges[k].v] -= edges[k].weight * a[k];
    }
  };

  const double step = 1.0 / lipschitz_;
  double t = 1.0;
  std::size_t it = 0;
  bool converged = false;
  while (it < cfg.inner_max_iters) {
    ++it;
    residual(y);
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const double g = edges[k].weight * (r[edges[k].u] - r[edges[k].v]);
      next[k] = std::clamp(y[k] - step * g, -1.0, 1.0);
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double beta = (t - 1.0) / t_next;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      y[k] = next[k] + beta * (next[k] - alpha[k]);
    }
    alpha.swap(next);
    t = t_next;

    if (it % kCheckEvery == 0 || it == cfg.inner_max_iters) {
      residual(alpha);
      const double nr = norm2(r);
      tr.best_dual = std::max(tr.best_dual, -nr);
      if (!(nr > 0.0)) {
        converged = true;
        break;
      }
      for (std::size_t i = 0; i < n; ++i) x[i] = -r[i] / nr;
      tr.offer(x, total_variation(x) - lambda * dot(v, x));
      if (tr.done(cfg, scale)) {
        converged = true;
        break;
      }
    }
  }
  return finish(tr, obj_prev, it, converged);
}

// ---------------------------------------------------------------------------

CliqueTvOperator::CliqueTvOperator(const CliqueOperator& op) : op_(op) {}

double CliqueTvOperator::total_variation(std::span<const double> x) const {
  auto ws = op_.make_workspace();
  return op_.total_variation(x, ws);
}

ThresholdSplit CliqueTvOperator::best_threshold(std::span<const double> x) const {
  return sweep_threshold(x, op_.hypergraph(), op_.spec());
}

void CliqueTvOperator::apply_adjacency(std::span<const double> in, std::span<double> out) const {
  op_.apply_adjacency(in, out);
}

std::vector<double> CliqueTvOperator::adjacency_degree() const {
  auto d = op_.adjacency_degree();
  return {d.begin(), d.end()};
}

std::unique_ptr<TvOperator::State> CliqueTvOperator::make_state() const {
  auto state = std::make_unique<CliqueState>();
  state->ws = op_.make_workspace();
  return state;
}

InnerResult CliqueTvOperator::solve_inner(std::span<const double> v, double lambda,
                                          std::span<const double> x_prev, const IpmConfig& cfg,
                                          State& state_base) const {
  auto& state = dynamic_cast<CliqueState&>(state_base);
  auto& ws = state.ws;
  const std::size_t n = op_.size();
  const double obj_prev = op_.total_variation(x_prev, ws) - lambda * dot(v, x_prev);
  Tracker tr(x_prev, obj_prev);
  if (!(lambda > 0.0)) {
    tr.best_dual = 0.0;
    return finish(tr, obj_prev, 0, true);
  }
  const double scale = std::max(lambda * norm2(v), std::numeric_limits<double>::min());
  const double unit = 1.0 / std::sqrt(static_cast<double>(n));
  const double eps_start = 0.1 * unit;
  const double eps_min = 1e-5 * unit;
  constexpr std::size_t kStage = 50;
  const double bound = std::max(op_.laplacian_norm_bound(), std::numeric_limits<double>::min());

  double eps = state.eps > 0.0 ? std::min(eps_start, 4.0 * state.eps) : eps_start;
  std::vector<double> x(x_prev.begin(), x_prev.end());
  std::vector<double> y = x;
  std::vector<double> next(n);
  std::vector<double> grad(n);
  double t = 1.0;
  std::size_t it = 0;
  bool converged = false;
  while (it < cfg.inner_max_iters) {
    ++it;
    const double step = eps / bound;
    op_.smoothed_gradient(y, eps, grad, ws);
    for (std::size_t i = 0; i < n; ++i) next[i] = y[i] - step * (grad[i] - lambda * v[i]);
    project_ball(next);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double beta = (t - 1.0) / t_next;
    for (std::size_t i = 0; i < n; ++i) y[i] = next[i] + beta * (next[i] - x[i]);
    x.swap(next);
    t = t_next;

    if (it % kCheckEvery == 0 || it == cfg.inner_max_iters) {
      tr.offer(x, op_.total_variation(x, ws) - lambda * dot(v, x));
      op_.smoothed_gradient(x, eps, grad, ws);
      for (std::size_t i = 0; i < n; ++i) grad[i] -= lambda * v[i];
      tr.best_dual = std::max(tr.best_dual, -norm2(grad));
      if (tr.done(cfg, scale)) {
        converged = true;
        break;
      }
    }
    if (it % kStage == 0 && eps > eps_min) {
      eps = std::max(0.5 * eps, eps_min);
      y = x;
      t = 1.0;
    }
  }
  state.eps = eps;
  return finish(tr, obj_prev, it, converged);
}

// ---------------------------------------------------------------------------

double r1_ratio(const TvOperator& op, std::span<const double> x) {
  const double denom = weighted_median(x, op.mu()).objective;
  if (!(denom > 0.0)) throw DegenerateInputError("R1: constant vector");
  return op.total_variation(x) / denom;
}

std::vector<double> spectral_initial_vector(const TvOperator& op, std::uint64_t seed) {
  NormalizedLaplacian lap(op);
  LanczosOptions opts;
  opts.tolerance = 1e-6;
  opts.max_restarts = 200;
  opts.seed = seed;
  auto kernel = lap.kernel();
  auto solve = smallest_eigenpairs(lap, 1, opts, kernel);
  std::vector<double> x = std::move(solve.vectors[0]);
  auto inv = lap.inv_sqrt_mu();
  for (std::size_t i = 0; i < x.size(); ++i) x[i] *= inv[i];
  return x;
}

IpmRun ipm_run(const TvOperator& op, std::span<const double> x0, const IpmConfig& cfg,
               std::size_t restart_index) {
  cfg.validate();
  if (x0.size() != op.size()) throw DomainError("ipm: initial vector has wrong length");
  auto mu = op.mu();
  IpmRun run;
  run.restart_index = restart_index;
  std::vector<double> x(x0.begin(), x0.end());
  if (!center_normalize(x, mu)) throw DegenerateInputError("ipm: constant initial vector");
  double lambda = r1_ratio(op, x);
  run.initial_lambda = lambda;
  run.split = op.best_threshold(x);
  run.trace.push_back(IpmIterate{lambda, run.split.ncc, 0, true, false});

  auto state = op.make_state();
  for (std::size_t k = 0; k < cfg.max_outer_iters; ++k) {
    const auto v = median_subgradient(x, mu);
    auto inner = op.solve_inner(v, lambda, x, cfg, *state);
    if (!inner.converged) run.inner_converged = false;
    if (!inner.descended) {
      run.converged = true;
      break;
    }
    std::vector<double> candidate = std::move(inner.x);
    if (!center_normalize(candidate, mu)) {
      run.converged = true;
      break;
    }
    double next_lambda = r1_ratio(op, candidate);
    auto split = op.best_threshold(candidate);
    bool refreshed = false;
    if (cfg.indicator_refresh && split.ncc < next_lambda) {
      std::vector<double> indicator(split.side_of.begin(), split.side_of.end());
      if (center_normalize(indicator, mu)) {
        const double indicator_lambda = r1_ratio(op, indicator);
        if (indicator_lambda < next_lambda) {
          candidate = std::move(indicator);
          next_lambda = indicator_lambda;
          split = op.best_threshold(candidate);
          refreshed = true;
        }
      }
    }
    if (next_lambda > lambda) {
      run.converged = true;
      break;
    }
    const double decrease = lambda > 0.0 ? (lambda - next_lambda) / lambda : 0.0;
    x = std::move(candidate);
    lambda = next_lambda;
    run.split = std::move(split);
    run.iters = k + 1;
    run.trace.push_back(IpmIterate{lambda, run.split.ncc, inner.iterations, inner.converged, refreshed});
    if (decrease < cfg.outer_tol) {
      run.converged = true;
      break;
    }
  }
  run.x = std::move(x);
  run.lambda = lambda;
  return run;
}

EigResult ipm_second_eigvec(const TvOperator& op, const IpmConfig& cfg) {
  cfg.validate();
  if (op.size() < 2) throw DomainError("ipm: need at least two vertices");
  if (!op.connected()) throw PreconditionError("ipm: graph is not connected");

  std::vector<IpmRun> runs(cfg.n_restarts);
  std::vector<std::exception_ptr> errors(cfg.n_restarts);
  auto task = [&](std::size_t i) {
    try {
      std::vector<double> x0;
      if (i == 0) {
        try {
          x0 = spectral_initial_vector(op, cfg.rng_seed);
        } catch (const SolverError&) {
          x0.clear();
        }
      }
      std::vector<double> probe = x0;
      if (x0.empty() || !center_normalize(probe, op.mu())) x0 = random_vector(op.size(), cfg.rng_seed + i);
      runs[i] = ipm_run(op, x0, cfg, i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const std::size_t workers = std::min(cfg.threads, cfg.n_restarts);
  if (workers <= 1) {
    for (std::size_t i = 0; i < cfg.n_restarts; ++i) task(i);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < cfg.n_restarts; i += workers) task(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (runs[i].split.ncc < runs[best].split.ncc) best = i;
  }
  EigResult out;
  out.x = runs[best].x;
  out.lambda = runs[best].lambda;
  out.iters = runs[best].iters;
  out.converged = runs[best].converged;
  out.restart_index = best;
  out.split = runs[best].split;
  out.runs = std::move(runs);
  return out;
}

EigResult ipm_second_eigvec(const WeightedGraph& graph, const IpmConfig& cfg) {
  GraphTvOperator op(graph);
  return ipm_second_eigvec(op, cfg);
}

InnerResult inner_tv_solve(const WeightedGraph& graph, std::span<const double> v, double lambda,
                           std::span<const double> x_prev, const IpmConfig& cfg) {
  if (v.size() != graph.n_vertices() || x_prev.size() != graph.n_vertices())
    throw DomainError("inner_tv_solve: vector has wrong length");
  if (lambda < 0.0) throw DomainError("inner_tv_solve: lambda must be non-negative");
  GraphTvOperator op(graph);
  auto state = op.make_state();
  return op.solve_inner(v, lambda, x_prev, cfg, *state);
}

}  // namespace edvw

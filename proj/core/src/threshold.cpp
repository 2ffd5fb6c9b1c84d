#include "edvw/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "edvw/errors.hpp"

namespace edvw {

namespace {

std::vector<VertexId> descending_order(std::span<const double> x) {
  std::vector<VertexId> order(x.size());
  std::iota(order.begin(), order.end(), 0U);
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    return x[a] > x[b] || (x[a] == x[b] && a < b);
  });
  return order;
}

class BestSplit {
 public:
  explicit BestSplit(double total_volume) : total_(total_volume) {}

  void offer(std::size_t prefix, double t, double cut, double vol_s) {
    const double vol_sbar = std::max(total_ - vol_s, 0.0);
    const double ncc = std::max(cut, 0.0) / std::min(vol_s, vol_sbar);
    const double imbalance = std::abs(vol_s - vol_sbar);
    if (found_ && !(ncc < ncc_ || (ncc == ncc_ && imbalance < imbalance_))) return;
    found_ = true;
    prefix_ = prefix;
    threshold_ = t;
    ncc_ = ncc;
    imbalance_ = imbalance;
  }

  bool found() const noexcept { return found_; }
  std::size_t prefix() const noexcept { return prefix_; }
  double threshold() const noexcept { return threshold_; }

 private:
  double total_;
  bool found_ = false;
  std::size_t prefix_ = 0;
  double threshold_ = 0.0;
  double ncc_ = 0.0;
  double imbalance_ = 0.0;
};

template <class AddVertex>
ThresholdSplit run_sweep(std::span<const double> x, std::span<const double> mu, AddVertex&& add) {
  const auto order = descending_order(x);
  const double total = std::accumulate(mu.begin(), mu.end(), 0.0);
  BestSplit best(total);
  double cut = 0.0;
  double vol_s = 0.0;
  for (std::size_t j = 0; j + 1 < order.size(); ++j) {
    const VertexId v = order[j];
    cut += add(v);
    vol_s += mu[v];
    const double next = x[order[j + 1]];
    if (x[v] != next) best.offer(j + 1, next + (x[v] - next) / 2.0, cut, vol_s);
  }
  if (!best.found()) throw DegenerateInputError("threshold sweep: vector is constant");

  ThresholdSplit split;
  split.threshold = best.threshold();
  split.side_of.assign(x.size(), 0);
  for (std::size_t j = 0; j < best.prefix(); ++j) split.side_of[order[j]] = 1;
  return split;
}

void fill_volumes(ThresholdSplit& split, std::span<const double> mu) {
  split.vol_s = 0.0;
  split.vol_sbar = 0.0;
  for (std::size_t v = 0; v < mu.size(); ++v) (split.side_of[v] ? split.vol_s : split.vol_sbar) += mu[v];
  split.ncc = split.cut_weight / std::min(split.vol_s, split.vol_sbar);
}

}  // namespace

ThresholdSplit sweep_threshold(std::span<const double> x, const EdvwHypergraph& hg,
                               const SubmodularWeightSpec& spec) {
  if (x.size() != hg.n_vertices()) throw DomainError("threshold sweep: vector has wrong length");
  std::vector<double> mass(hg.n_hyperedges(), 0.0);
  std::vector<double> scale(hg.n_hyperedges());
  for (EdgeId e = 0; e < hg.n_hyperedges(); ++e) scale[e] = spec.h(hg.kappa(e));
  auto flat_gamma = hg.flat_gamma();

  auto split = run_sweep(x, hg.mu(), [&](VertexId v) {
    double delta = 0.0;
    for (const auto& inc : hg.incident(v)) {
      const double total = hg.gamma_total(inc.edge);
      double& a = mass[inc.edge];
      const double before = spec.g(a, total);
      a += flat_gamma[inc.slot];
      delta += scale[inc.edge] * (spec.g(a, total) - before);
    }
    return delta;
  });
  split.cut_weight = cut_weight(hg, spec, split.side_of);
  fill_volumes(split, hg.mu());
  return split;
}

ThresholdSplit sweep_threshold(std::span<const double> x, const WeightedGraph& graph) {
  if (x.size() != graph.n_vertices()) throw DomainError("threshold sweep: vector has wrong length");
  std::vector<std::uint8_t> inside(graph.n_vertices(), 0);
  auto split = run_sweep(x, graph.mu(), [&](VertexId v) {
    double delta = 0.0;
    for (const auto& nb : graph.neighbors(v)) delta += inside[nb.vertex] ? -nb.weight : nb.weight;
    inside[v] = 1;
    return delta;
  });
  split.cut_weight = graph_cut(graph, split.side_of);
  fill_volumes(split, graph.mu());
  return split;
}

Partition optimal_threshold(std::span<const double> x, const EdvwHypergraph& hg,
                            const SubmodularWeightSpec& spec) {
  auto split = sweep_threshold(x, hg, spec);
  return make_partition(hg, spec, std::move(split.side_of));
}

}  // namespace edvw

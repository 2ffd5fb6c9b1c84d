#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "edvw/clique_expansion.hpp"
#include "edvw/hypergraph.hpp"
#include "edvw/submodular.hpp"

namespace edvw {

// Best level set S = {v : x_v > t} found by a threshold sweep.
struct ThresholdSplit {
  std::vector<std::uint8_t> side_of;
  double threshold = 0.0;
  double cut_weight = 0.0;
  double vol_s = 0.0;
  double vol_sbar = 0.0;
  double ncc = 0.0;
};

// Sweeps the N-1 (or fewer, with ties) level sets of x in decreasing order of
// x and keeps the one with smallest cut / min(vol S, vol S-bar). Ties go to the
// split with the more balanced volumes, then to the earlier threshold. Only
// splits between distinct values of x are candidates. Throws
// DegenerateInputError for constant x.
ThresholdSplit sweep_threshold(std::span<const double> x, const EdvwHypergraph& hg,
                               const SubmodularWeightSpec& spec);
ThresholdSplit sweep_threshold(std::span<const double> x, const WeightedGraph& graph);

// Hypergraph sweep followed by an exact recomputation of the winner's terms.
Partition optimal_threshold(std::span<const double> x, const EdvwHypergraph& hg,
                            const SubmodularWeightSpec& spec);

}  // namespace edvw

#pragma once

#include <optional>

#include "edvw/datasets.hpp"
#include "edvw/hypergraph.hpp"

namespace edvw {

// Same incidence and mu with every EDVW set to 1. kappa is kept unless a
// rule is given, in which case it is recomputed from the unit EDVWs.
EdvwHypergraph cardinality_variant(const EdvwHypergraph& hg,
                                   std::optional<KappaRule> recompute_kappa = std::nullopt);

// gamma -> gamma^alpha for every member (alpha >= 0), kappa and mu kept.
EdvwHypergraph with_gamma_power(const EdvwHypergraph& hg, double alpha);

}  // namespace edvw

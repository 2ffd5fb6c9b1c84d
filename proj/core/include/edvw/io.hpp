#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "edvw/hypergraph.hpp"

namespace edvw {

// Text format (1-based vertices, '#' starts a comment):
//
//   N M
//   kappa v:gamma v:gamma ...      (M lines)
//   mu                              (optional, followed by N values)
//   labels                          (optional, followed by N integers)
//
// The JSON mirror is
//   {"n_vertices": N, "hyperedges": [{"kappa": k, "vertices": [...], "gamma": [...]}],
//    "mu": [...], "labels": [...]}
// with 1-based vertices; "mu" and "labels" are optional.
struct HypergraphFile {
  EdvwHypergraph hypergraph;
  bool has_mu = false;
  std::vector<int> labels;
};

HypergraphFile read_hypergraph_text(std::istream& in);
HypergraphFile read_hypergraph_json(std::istream& in);
HypergraphFile hypergraph_from_json(const nlohmann::json& doc);
// Dispatches on the extension: ".json" is JSON, anything else text.
HypergraphFile read_hypergraph(const std::filesystem::path& path);

void write_hypergraph_text(std::ostream& out, const EdvwHypergraph& hg, bool include_mu = true,
                           std::span<const int> labels = {});
nlohmann::json hypergraph_to_json(const EdvwHypergraph& hg, bool include_mu = true,
                                  std::span<const int> labels = {});
void write_hypergraph(const std::filesystem::path& path, const EdvwHypergraph& hg, bool include_mu = true,
                      std::span<const int> labels = {});

// Writes `text` to `path` through a temporary file in the same directory and
// a rename, so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view text);

}  // namespace edvw

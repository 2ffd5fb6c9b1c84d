#include "edvw/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "edvw/diagnostics.hpp"
#include "edvw/errors.hpp"

namespace edvw {

std::string_view to_string(KappaRule rule) noexcept {
  return rule == KappaRule::std_all_vertices ? "std-all-vertices" : "std-members-only";
}

KappaRule parse_kappa_rule(std::string_view name) {
  if (name == "std-all-vertices" || name == "all") return KappaRule::std_all_vertices;
  if (name == "std-members-only" || name == "members") return KappaRule::std_members_only;
  throw DomainError("unknown kappa rule '" + std::string(name) + "'");
}

namespace {

double edvw_std(std::span<const double> member_gamma, std::size_t n_vertices, KappaRule rule) {
  const std::size_t k = member_gamma.size();
  if (k == 0) throw DomainError("kappa_from_std: hyperedge has no members");
  if (rule == KappaRule::std_all_vertices && n_vertices < k)
    throw DomainError("kappa_from_std: more members than vertices");
  const double count = rule == KappaRule::std_all_vertices ? static_cast<double>(n_vertices)
                                                           : static_cast<double>(k);
  const double mean = std::accumulate(member_gamma.begin(), member_gamma.end(), 0.0) / count;
  double ss = 0.0;
  for (double g : member_gamma) ss += (g - mean) * (g - mean);
  if (rule == KappaRule::std_all_vertices) ss += static_cast<double>(n_vertices - k) * mean * mean;
  return std::sqrt(ss / count);
}

}  // namespace

double kappa_from_std(std::span<const double> member_gamma, std::size_t n_vertices, KappaRule rule) {
  const double sd = edvw_std(member_gamma, n_vertices, rule);
  if (!(sd > kKappaFloor)) {
    warn("kappa: EDVW standard deviation is " + std::to_string(sd) + ", floored at 1e-12");
    return kKappaFloor;
  }
  return sd;
}

// --- assembly --------------------------------------------------------------

DatasetBuild assemble_dataset(std::size_t n_vertices, std::vector<HyperedgeInput> hyperedges,
                              std::vector<std::string> names, std::vector<int> labels,
                              KappaRule rule) {
  if (names.size() != hyperedges.size()) throw DomainError("assemble_dataset: one name per hyperedge");
  if (labels.size() != n_vertices) throw DomainError("assemble_dataset: one label per vertex");
  nlohmann::json prov;

  std::size_t small = 0;
  {
    std::vector<HyperedgeInput> kept;
    std::vector<std::string> kept_names;
    for (std::size_t i = 0; i < hyperedges.size(); ++i) {
      if (hyperedges[i].members.size() < 2) {
        ++small;
        continue;
      }
      kept.push_back(std::move(hyperedges[i]));
      kept_names.push_back(std::move(names[i]));
    }
    hyperedges = std::move(kept);
    names = std::move(kept_names);
  }
  prov["dropped_hyperedges_below_two_members"] = small;
  if (hyperedges.empty()) throw DegenerateInputError("dataset has no hyperedge with two members");

  auto comp = hyperedge_components(n_vertices, hyperedges);
  const std::uint32_t n_comp = *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<std::size_t> comp_size(n_comp, 0);
  for (auto c : comp) ++comp_size[c];
  const auto largest = static_cast<std::uint32_t>(
      std::max_element(comp_size.begin(), comp_size.end()) - comp_size.begin());
  prov["components"] = n_comp;
  prov["dropped_vertices"] = n_vertices - comp_size[largest];
  if (n_comp > 1) {
    warn("dataset is disconnected (" + std::to_string(n_comp) + " components); keeping the largest with " +
         std::to_string(comp_size[largest]) + " of " + std::to_string(n_vertices) + " vertices");
  }

  std::vector<VertexId> remap(n_vertices, UINT32_MAX);
  std::vector<int> kept_labels;
  for (std::size_t v = 0; v < n_vertices; ++v) {
    if (comp[v] == largest) {
      remap[v] = static_cast<VertexId>(kept_labels.size());
      kept_labels.push_back(labels[v]);
    }
  }
  const std::size_t n = kept_labels.size();
  std::vector<HyperedgeInput> final_edges;
  std::vector<std::string> final_names;
  std::size_t floored = 0;
  for (std::size_t i = 0; i < hyperedges.size(); ++i) {
    auto& e = hyperedges[i];
    if (comp[e.members[0]] != largest) continue;
    for (auto& v : e.members) v = remap[v];
    const double sd = edvw_std(e.gamma, n, rule);
    e.kappa = sd > kKappaFloor ? sd : kKappaFloor;
    if (!(sd > kKappaFloor)) ++floored;
    final_edges.push_back(std::move(e));
    final_names.push_back(std::move(names[i]));
  }
  if (floored > 0) {
    warn("kappa: " + std::to_string(floored) + " hyperedge(s) with zero EDVW standard deviation, floored at 1e-12");
  }
  prov["kappa_rule"] = std::string(to_string(rule));
  prov["kappa_floored"] = floored;
  prov["n_vertices"] = n;
  prov["n_hyperedges"] = final_edges.size();

  return DatasetBuild{EdvwHypergraph(n, std::move(final_edges)), std::move(kept_labels),
                      std::move(final_names), std::move(prov)};
}

// --- 20 Newsgroups ---------------------------------------------------------

void CorpusSpec::validate() const {
  if (category_a.empty() || category_b.empty() || category_a == category_b)
    throw DomainError("corpus spec needs two distinct categories");
  if (vocab_size < 1) throw DomainError("vocab_size must be at least 1");
  if (!(min_doc_freq > 0.0 && min_doc_freq < 1.0) || !(max_doc_freq > 0.0 && max_doc_freq < 1.0))
    throw DomainError("document-frequency bounds must lie in (0, 1)");
  if (min_doc_freq > max_doc_freq) throw DomainError("min_doc_freq exceeds max_doc_freq");
}

std::vector<NewsDocument> read_newsgroups_tab(std::istream& in) {
  std::vector<NewsDocument> docs;
  std::string line;
  for (int header = 0; header < 3; ++header) {
    if (!std::getline(in, line)) throw SchemaError("newsgroups file: truncated header");
    if (header == 0 && line.rfind("Category\tText", 0) != 0)
      throw SchemaError("newsgroups file: expected 'Category<TAB>Text' header");
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw SchemaError("newsgroups file: row without a tab");
    docs.push_back(NewsDocument{line.substr(0, tab), line.substr(tab + 1)});
  }
  return docs;
}

std::vector<NewsDocument> read_newsgroups_tab(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " (run `edvw fetch newsgroups` first)");
  return read_newsgroups_tab(in);
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string word;
  auto flush = [&] {
    if (word.size() >= 2 && !is_stopword(word)) out.push_back(word);
    word.clear();
  };
  for (char c : text) {
    if (c >= 'A' && c <= 'Z') {
      word.push_back(static_cast<char>(c - 'A' + 'a'));
    } else if (c >= 'a' && c <= 'z') {
      word.push_back(c);
    } else {
      flush();
    }
  }
  flush();
  return out;
}

DatasetBuild build_newsgroups_hypergraph(std::span<const NewsDocument> corpus, const CorpusSpec& spec,
                                         double alpha) {
  spec.validate();
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be non-negative");

  std::vector<std::vector<std::string>> tokens;
  std::vector<int> labels;
  for (const auto& doc : corpus) {
    int label = doc.category == spec.category_a ? 0 : (doc.category == spec.category_b ? 1 : -1);
    if (label < 0) continue;
    tokens.push_back(tokenize(doc.text));
    labels.push_back(label);
  }
  const std::size_t n_docs = tokens.size();
  if (n_docs == 0) throw IoError("corpus holds no documents of the requested categories");

  std::map<std::string, std::pair<std::size_t, std::size_t>> stats;  // word -> (df, total count)
  for (auto& doc : tokens) {
    std::vector<std::string> distinct = doc;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (const auto& w : distinct) ++stats[w].first;
    for (const auto& w : doc) ++stats[w].second;
  }
  const double n = static_cast<double>(n_docs);
  std::vector<std::pair<std::string, std::size_t>> candidates;
  for (const auto& [word, s] : stats) {
    const double df = static_cast<double>(s.first);
    if (df > spec.max_doc_freq * n || df < spec.min_doc_freq * n) continue;
    candidates.emplace_back(word, spec.ranking == VocabRanking::document_frequency ? s.first : s.second);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (candidates.size() > spec.vocab_size) candidates.resize(spec.vocab_size);
  std::unordered_map<std::string, std::size_t> vocab;
  for (std::size_t i = 0; i < candidates.size(); ++i) vocab.emplace(candidates[i].first, i);

  // Term counts restricted to the vocabulary; keep documents with enough hits.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> counts;  // per kept doc: (word, count)
  std::vector<int> kept_labels;
  std::vector<std::size_t> kept_index;
  for (std::size_t d = 0; d < n_docs; ++d) {
    std::map<std::size_t, std::size_t> c;
    std::size_t hits = 0;
    for (const auto& w : tokens[d]) {
      auto it = vocab.find(w);
      if (it == vocab.end()) continue;
      ++c[it->second];
      ++hits;
    }
    if (hits < spec.min_words_per_doc) continue;
    counts.emplace_back(c.begin(), c.end());
    kept_labels.push_back(labels[d]);
    kept_index.push_back(d);
  }
  const std::size_t n_kept = counts.size();
  if (n_kept < 2) throw DegenerateInputError("fewer than two documents survive filtering");

  std::vector<std::vector<VertexId>> members(candidates.size());
  std::vector<std::vector<double>> tf(candidates.size());
  for (std::size_t d = 0; d < n_kept; ++d) {
    for (auto [w, c] : counts[d]) {
      members[w].push_back(static_cast<VertexId>(d));
      tf[w].push_back(static_cast<double>(c));
    }
  }
  std::vector<double> idf(candidates.size(), 0.0);
  for (std::size_t w = 0; w < candidates.size(); ++w) {
    const std::size_t df = members[w].size();
    if (df >= 2 && df < n_kept) idf[w] = std::log(static_cast<double>(n_kept) / static_cast<double>(df));
  }
  std::vector<double> doc_norm(n_kept, 1.0);
  if (spec.tfidf == TfidfVariant::l2) {
    for (std::size_t d = 0; d < n_kept; ++d) {
      double sq = 0.0;
      for (auto [w, c] : counts[d]) sq += std::pow(static_cast<double>(c) * idf[w], 2);
      doc_norm[d] = sq > 0.0 ? std::sqrt(sq) : 1.0;
    }
  }

  std::vector<HyperedgeInput> edges;
  std::vector<std::string> names;
  std::size_t rare = 0;
  std::size_t ubiquitous = 0;
  for (std::size_t w = 0; w < candidates.size(); ++w) {
    const std::size_t df = members[w].size();
    if (df < 2) {
      ++rare;
      continue;
    }
    if (df == n_kept) {
      ++ubiquitous;  // idf would be zero
      continue;
    }
    HyperedgeInput e;
    e.members = members[w];
    for (std::size_t k = 0; k < tf[w].size(); ++k) {
      e.gamma.push_back(std::pow(tf[w][k] * idf[w] / doc_norm[members[w][k]], alpha));
    }
    edges.push_back(std::move(e));
    names.push_back(candidates[w].first);
  }

  auto build = assemble_dataset(n_kept, std::move(edges), std::move(names), std::move(kept_labels),
                                spec.kappa_rule);
  auto& p = build.provenance;
  p["dataset"] = "20newsgroups";
  p["alpha"] = alpha;
  p["categories"] = {spec.category_a, spec.category_b};
  p["documents_in_categories"] = n_docs;
  p["documents_retained"] = n_kept;
  p["vocabulary_candidates"] = stats.size();
  p["vocabulary_size"] = candidates.size();
  p["vocabulary_ranking"] = spec.ranking == VocabRanking::document_frequency ? "document-frequency"
                                                                              : "term-count";
  p["doc_freq_bounds"] = {spec.min_doc_freq, spec.max_doc_freq};
  p["min_words_per_doc"] = spec.min_words_per_doc;
  p["dropped_words_below_two_documents"] = rare;
  p["dropped_words_in_every_document"] = ubiquitous;
  p["tfidf"] = spec.tfidf == TfidfVariant::raw
                   ? "count * ln(N / df), computed on the retained documents"
                   : "count * ln(N / df), computed on the retained documents, L2-normalised per document";
  p["tokenizer"] = "lowercase ASCII letter runs, length >= 2, English stop words removed";
  return build;
}

// --- Covertype -------------------------------------------------------------

void BinningSpec::validate() const {
  if (bins_per_feature < 2) throw DomainError("bins_per_feature must be at least 2");
  if (cover_types.size() != 2 || cover_types[0] == cover_types[1])
    throw DomainError("binning spec needs two distinct cover types");
  if (n_features < 1) throw DomainError("n_features must be at least 1");
}

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool parse_number(std::string_view s, double& out) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '"')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '"' || s.back() == '\r')) s.remove_suffix(1);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

double median_of(std::vector<double> values) {
  const std::size_t k = values.size();
  auto mid = values.begin() + static_cast<std::ptrdiff_t>(k / 2);
  std::nth_element(values.begin(), mid, values.end());
  double hi = *mid;
  if (k % 2 == 1) return hi;
  double lo = *std::max_element(values.begin(), mid);
  return 0.5 * (lo + hi);
}

}  // namespace

CovertypeTable read_covertype_csv(std::istream& in, std::size_t n_features) {
  static const std::vector<std::string> kUciNames = {
      "Elevation", "Aspect", "Slope", "Horizontal_Distance_To_Hydrology",
      "Vertical_Distance_To_Hydrology", "Horizontal_Distance_To_Roadways", "Hillshade_9am",
      "Hillshade_Noon", "Hillshade_3pm", "Horizontal_Distance_To_Fire_Points"};
  CovertypeTable table;
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("covertype file is empty");
  auto first = split_commas(line);
  double probe = 0.0;
  std::size_t label_col = first.size() - 1;
  const bool headerless = parse_number(first[0], probe);
  if (headerless) {
    if (first.size() != 55) throw SchemaError("headerless covertype file must have 55 columns");
    if (n_features > kUciNames.size()) throw SchemaError("covertype: too many features requested");
    table.feature_names.assign(kUciNames.begin(), kUciNames.begin() + static_cast<std::ptrdiff_t>(n_features));
  } else {
    auto it = std::find_if(first.begin(), first.end(), [](std::string_view s) {
      return s.find("Cover_Type") != std::string_view::npos || s == "class" || s == "target";
    });
    if (it == first.end()) throw SchemaError("covertype file: no Cover_Type column");
    label_col = static_cast<std::size_t>(it - first.begin());
    if (first.size() < n_features + 1 || label_col < n_features)
      throw SchemaError("covertype file: expected " + std::to_string(n_features) +
                        " quantitative columns before the label");
    for (std::size_t f = 0; f < n_features; ++f) table.feature_names.emplace_back(first[f]);
  }
  table.features.assign(n_features, {});

  std::size_t row = 0;
  auto consume = [&](std::string_view text) {
    auto cells = split_commas(text);
    ++row;
    if (cells.size() <= label_col || cells.size() < n_features)
      throw SchemaError("covertype file: row " + std::to_string(row) + " has too few columns");
    double value = 0.0;
    for (std::size_t f = 0; f < n_features; ++f) {
      if (!parse_number(cells[f], value))
        throw SchemaError("covertype file: non-numeric feature in row " + std::to_string(row));
      table.features[f].push_back(value);
    }
    if (!parse_number(cells[label_col], value))
      throw SchemaError("covertype file: non-numeric cover type in row " + std::to_string(row));
    table.cover_type.push_back(static_cast<int>(value));
  };
  if (headerless) consume(line);
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    consume(line);
  }
  return table;
}

CovertypeTable read_covertype_csv(const std::filesystem::path& path, std::size_t n_features) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " (run `edvw fetch covertype` first)");
  return read_covertype_csv(in, n_features);
}

DatasetBuild build_covertype_hypergraph(const CovertypeTable& table, const BinningSpec& spec,
                                        double alpha) {
  spec.validate();
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be non-negative");
  if (table.features.size() < spec.n_features) throw SchemaError("covertype table lacks feature columns");

  std::vector<std::size_t> rows;
  std::vector<int> labels;
  for (std::size_t r = 0; r < table.cover_type.size(); ++r) {
    const int t = table.cover_type[r];
    if (t == spec.cover_types[0] || t == spec.cover_types[1]) {
      rows.push_back(r);
      labels.push_back(t == spec.cover_types[0] ? 0 : 1);
    }
  }
  if (rows.size() < 2) throw DegenerateInputError("fewer than two rows of the requested cover types");

  std::vector<HyperedgeInput> edges;
  std::vector<std::string> names;
  std::size_t empty_bins = 0;
  std::size_t single_bins = 0;
  const std::size_t bins = spec.bins_per_feature;
  for (std::size_t f = 0; f < spec.n_features; ++f) {
    const auto& column = table.features[f];
    double lo = INFINITY;
    double hi = -INFINITY;
    for (auto r : rows) {
      lo = std::min(lo, column[r]);
      hi = std::max(hi, column[r]);
    }
    const double width = (hi - lo) / static_cast<double>(bins);
    std::vector<std::vector<VertexId>> bin_members(bins);
    for (std::size_t v = 0; v < rows.size(); ++v) {
      std::size_t b = 0;
      if (width > 0.0) {
        b = static_cast<std::size_t>(std::floor((column[rows[v]] - lo) / width));
        b = std::min(b, bins - 1);
      }
      bin_members[b].push_back(static_cast<VertexId>(v));
    }
    for (std::size_t b = 0; b < bins; ++b) {
      auto& m = bin_members[b];
      if (m.empty()) {
        ++empty_bins;
        continue;
      }
      if (m.size() == 1) ++single_bins;
      std::vector<double> values;
      values.reserve(m.size());
      for (auto v : m) values.push_back(column[rows[v]]);
      const double med = median_of(values);
      double max_dist = 0.0;
      for (double x : values) max_dist = std::max(max_dist, std::abs(x - med));
      HyperedgeInput e;
      e.members = m;
      for (double x : values) {
        const double d = max_dist > 0.0 ? std::abs(x - med) / max_dist : 0.0;
        e.gamma.push_back(std::exp(-alpha * d));
      }
      edges.push_back(std::move(e));
      names.push_back(table.feature_names[f] + "#" + std::to_string(b));
    }
  }
  const std::size_t non_empty = edges.size();

  auto build = assemble_dataset(rows.size(), std::move(edges), std::move(names), std::move(labels),
                                spec.kappa_rule);
  auto& p = build.provenance;
  p["dataset"] = "covertype";
  p["alpha"] = alpha;
  p["cover_types"] = spec.cover_types;
  p["rows_retained"] = rows.size();
  p["bins_per_feature"] = bins;
  p["features"] = std::vector<std::string>(table.feature_names.begin(),
                                           table.feature_names.begin() + static_cast<std::ptrdiff_t>(spec.n_features));
  p["binning"] = "equal width over the observed range of the retained rows";
  p["non_empty_bins"] = non_empty;
  p["empty_bins"] = empty_bins;
  p["single_member_bins"] = single_bins;
  return build;
}

}  // namespace edvw

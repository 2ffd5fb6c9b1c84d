#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "edvw/hypergraph.hpp"

namespace edvw {

// How kappa(e) is derived from the EDVWs of e.
enum class KappaRule {
  std_all_vertices,  // population std of (gamma_e(v))_{v in V}, zeros included
  std_members_only,  // population std over the members of e
};

std::string_view to_string(KappaRule rule) noexcept;
KappaRule parse_kappa_rule(std::string_view name);

inline constexpr double kKappaFloor = 1e-12;

// Floors at kKappaFloor and warns when the std vanishes.
double kappa_from_std(std::span<const double> member_gamma, std::size_t n_vertices,
                      KappaRule rule = KappaRule::std_all_vertices);

// A built dataset: the hypergraph plus everything needed to score and
// reproduce it.
struct DatasetBuild {
  EdvwHypergraph hypergraph;
  std::vector<int> labels;                   // 0/1 per vertex
  std::vector<std::string> hyperedge_names;
  nlohmann::json provenance;
};

// --- 20 Newsgroups --------------------------------------------------------

enum class VocabRanking { document_frequency, term_count };

// raw: term_count * ln(N / df). l2: the same, scaled to unit Euclidean norm
// per document over the vocabulary.
enum class TfidfVariant { raw, l2 };

struct CorpusSpec {
  std::string category_a = "rec.motorcycles";
  std::string category_b = "rec.sport.hockey";
  std::size_t vocab_size = 100;
  double max_doc_freq = 0.1;    // fraction of documents
  double min_doc_freq = 0.002;
  std::size_t min_words_per_doc = 5;  // occurrences of vocabulary words
  VocabRanking ranking = VocabRanking::document_frequency;
  TfidfVariant tfidf = TfidfVariant::l2;
  KappaRule kappa_rule = KappaRule::std_all_vertices;

  void validate() const;
};

struct NewsDocument {
  std::string category;
  std::string text;
};

// Orange tab format: a three-line header, then "category<TAB>text" rows.
std::vector<NewsDocument> read_newsgroups_tab(std::istream& in);
std::vector<NewsDocument> read_newsgroups_tab(const std::filesystem::path& path);

// Lower-cased maximal runs of ASCII letters of length >= 2, stop words removed.
std::vector<std::string> tokenize(std::string_view text);
// The shipped English stop-word list, sorted.
std::span<const std::string_view> english_stopwords() noexcept;
bool is_stopword(std::string_view word) noexcept;

// Documents of the two categories become vertices, vocabulary words become
// hyperedges, gamma = tfidf^alpha with tfidf built from count * ln(N / df)
// over the retained documents (see TfidfVariant).
DatasetBuild build_newsgroups_hypergraph(std::span<const NewsDocument> corpus,
                                         const CorpusSpec& spec, double alpha);

// --- Covertype ------------------------------------------------------------

struct BinningSpec {
  std::vector<int> cover_types{4, 5};
  std::size_t bins_per_feature = 20;
  std::size_t n_features = 10;  // leading quantitative columns
  KappaRule kappa_rule = KappaRule::std_all_vertices;

  void validate() const;
};

struct CovertypeTable {
  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> features;  // column-major
  std::vector<int> cover_type;
};

// Accepts the headered CSV (named columns, Cover_Type last) or the headerless
// 55-column UCI layout. Throws SchemaError on missing columns.
CovertypeTable read_covertype_csv(std::istream& in, std::size_t n_features = 10);
CovertypeTable read_covertype_csv(const std::filesystem::path& path, std::size_t n_features = 10);

// Rows of the kept cover types become vertices; every equal-width bin of a
// feature with at least two rows becomes a hyperedge with
// gamma = exp(-alpha * |x - bin median| / max distance in bin).
DatasetBuild build_covertype_hypergraph(const CovertypeTable& table, const BinningSpec& spec,
                                        double alpha);

// Drops hyperedges with fewer than two members, keeps the largest connected
// component (renumbering vertices), and sets kappa by `rule`. The returned
// provenance lists what was removed.
DatasetBuild assemble_dataset(std::size_t n_vertices, std::vector<HyperedgeInput> hyperedges,
                              std::vector<std::string> names, std::vector<int> labels,
                              KappaRule rule);

}  // namespace edvw

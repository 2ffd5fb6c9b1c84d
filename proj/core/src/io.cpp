#include "edvw/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>

#include "edvw/errors.hpp"

namespace edvw {

namespace {

class TokenStream {
 public:
  explicit TokenStream(std::istream& in) {
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream words(line);
      std::string w;
      while (words >> w) tokens_.push_back({w, number});
    }
  }

  bool done() const { return pos_ >= tokens_.size(); }
  const std::string& peek() const { return tokens_.at(pos_).text; }
  std::size_t line() const { return done() ? (tokens_.empty() ? 0 : tokens_.back().line) : tokens_[pos_].line; }
  std::string next(const char* what) {
    if (done()) fail(std::string("unexpected end of file, expected ") + what);
    return tokens_[pos_++].text;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SchemaError("hypergraph file, line " + std::to_string(line()) + ": " + msg);
  }

  template <class T>
  T number(std::string_view s, const char* what) const {
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail(std::string("bad ") + what + " '" + std::string(s) + "'");
    return value;
  }

 private:
  struct Token {
    std::string text;
    std::size_t line;
  };
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

HypergraphFile read_hypergraph_text(std::istream& in) {
  TokenStream ts(in);
  const auto n = ts.number<std::size_t>(ts.next("vertex count"), "vertex count");
  const auto m = ts.number<std::size_t>(ts.next("hyperedge count"), "hyperedge count");
  std::vector<HyperedgeInput> edges(m);
  for (std::size_t e = 0; e < m; ++e) {
    edges[e].kappa = ts.number<double>(ts.next("kappa"), "kappa");
    while (!ts.done() && ts.peek().find(':') != std::string::npos) {
      const std::string pair = ts.next("member");
      const auto colon = pair.find(':');
      const auto v = ts.number<std::size_t>(std::string_view(pair).substr(0, colon), "vertex id");
      const auto g = ts.number<double>(std::string_view(pair).substr(colon + 1), "gamma");
      if (v < 1 || v > n) ts.fail("vertex id " + std::to_string(v) + " outside 1.." + std::to_string(n));
      edges[e].members.push_back(static_cast<VertexId>(v - 1));
      edges[e].gamma.push_back(g);
    }
  }
  std::vector<double> mu;
  std::vector<int> labels;
  bool has_mu = false;
  while (!ts.done()) {
    const std::string section = ts.next("section");
    if (section == "mu" && !has_mu) {
      has_mu = true;
      for (std::size_t v = 0; v < n; ++v) mu.push_back(ts.number<double>(ts.next("mu value"), "mu value"));
    } else if (section == "labels" && labels.empty()) {
      for (std::size_t v = 0; v < n; ++v) labels.push_back(ts.number<int>(ts.next("label"), "label"));
    } else {
      ts.fail("unexpected token '" + section + "'");
    }
  }
  return HypergraphFile{EdvwHypergraph(n, std::move(edges), std::move(mu)), has_mu, std::move(labels)};
}

HypergraphFile hypergraph_from_json(const nlohmann::json& doc) {
  try {
    const auto n = doc.at("n_vertices").get<std::size_t>();
    std::vector<HyperedgeInput> edges;
    for (const auto& item : doc.at("hyperedges")) {
      HyperedgeInput e;
      e.kappa = item.value("kappa", 1.0);
      for (const auto& v : item.at("vertices")) {
        const auto id = v.get<std::size_t>();
        if (id < 1 || id > n) throw SchemaError("hypergraph JSON: vertex id out of range");
        e.members.push_back(static_cast<VertexId>(id - 1));
      }
      if (item.contains("gamma")) {
        e.gamma = item.at("gamma").get<std::vector<double>>();
      } else {
        e.gamma.assign(e.members.size(), 1.0);
      }
      edges.push_back(std::move(e));
    }
    std::vector<double> mu;
    if (doc.contains("mu")) mu = doc.at("mu").get<std::vector<double>>();
    std::vector<int> labels;
    if (doc.contains("labels")) labels = doc.at("labels").get<std::vector<int>>();
    if (!labels.empty() && labels.size() != n) throw SchemaError("hypergraph JSON: labels need one entry per vertex");
    const bool has_mu = !mu.empty();
    return HypergraphFile{EdvwHypergraph(n, std::move(edges), std::move(mu)), has_mu, std::move(labels)};
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("hypergraph JSON: ") + e.what());
  }
}

HypergraphFile read_hypergraph_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("hypergraph JSON: ") + e.what());
  }
  return hypergraph_from_json(doc);
}

HypergraphFile read_hypergraph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return path.extension() == ".json" ? read_hypergraph_json(in) : read_hypergraph_text(in);
}

void write_hypergraph_text(std::ostream& out, const EdvwHypergraph& hg, bool include_mu,
                           std::span<const int> labels) {
  if (!labels.empty() && labels.size() != hg.n_vertices()) throw DomainError("labels need one entry per vertex");
  out << hg.n_vertices() << ' ' << hg.n_hyperedges() << '\n';
  for (EdgeId e = 0; e < hg.n_hyperedges(); ++e) {
    out << format_double(hg.kappa(e));
    auto members = hg.members(e);
    auto gamma = hg.gamma(e);
    for (std::size_t i = 0; i < members.size(); ++i) out << ' ' << (members[i] + 1) << ':' << format_double(gamma[i]);
    out << '\n';
  }
  if (include_mu) {
    out << "mu\n";
    for (std::size_t v = 0; v < hg.n_vertices(); ++v) out << format_double(hg.mu()[v]) << (v + 1 < hg.n_vertices() ? ' ' : '\n');
  }
  if (!labels.empty()) {
    out << "labels\n";
    for (std::size_t v = 0; v < labels.size(); ++v) out << labels[v] << (v + 1 < labels.size() ? ' ' : '\n');
  }
}

nlohmann::json hypergraph_to_json(const EdvwHypergraph& hg, bool include_mu, std::span<const int> labels) {
  if (!labels.empty() && labels.size() != hg.n_vertices()) throw DomainError("labels need one entry per vertex");
  nlohmann::json doc;
  doc["n_vertices"] = hg.n_vertices();
  auto& edges = doc["hyperedges"] = nlohmann::json::array();
  for (EdgeId e = 0; e < hg.n_hyperedges(); ++e) {
    std::vector<std::size_t> ids;
    for (VertexId v : hg.members(e)) ids.push_back(v + 1);
    auto gamma = hg.gamma(e);
    edges.push_back({{"kappa", hg.kappa(e)},
                     {"vertices", ids},
                     {"gamma", std::vector<double>(gamma.begin(), gamma.end())}});
  }
  if (include_mu) doc["mu"] = std::vector<double>(hg.mu().begin(), hg.mu().end());
  if (!labels.empty()) doc["labels"] = std::vector<int>(labels.begin(), labels.end());
  return doc;
}

void write_hypergraph(const std::filesystem::path& path, const EdvwHypergraph& hg, bool include_mu,
                      std::span<const int> labels) {
  std::ostringstream out;
  if (path.extension() == ".json") {
    out << hypergraph_to_json(hg, include_mu, labels).dump() << '\n';
  } else {
    write_hypergraph_text(out, hg, include_mu, labels);
  }
  write_file_atomic(path, out.str());
}

void write_file_atomic(const std::filesystem::path& path, std::string_view text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move " + tmp.string() + " into place");
  }
}

}  // namespace edvw

#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "morphochain/corpus.hpp"
#include "morphochain/error.hpp"

namespace morphochain {

/// Word vectors read from word2vec text output.
class EmbeddingTable {
 public:
  static constexpr double kDefaultOovCosine = -0.5;

  EmbeddingTable() = default;
  explicit EmbeddingTable(std::size_t dimension, double oov_cosine = kDefaultOovCosine)
      : dimension_(dimension), oov_cosine_(oov_cosine) {
    if (dimension == 0) throw DataError("embedding dimension must be positive");
  }

  /// Adds or replaces a vector. Throws DataError on a length mismatch.
  void add(std::string word, std::vector<double> vec) {
    if (dimension_ == 0) {
      if (vec.empty()) throw DataError("embedding dimension must be positive");
      dimension_ = vec.size();
    }
    if (vec.size() != dimension_)
      throw DataError("vector for '" + word + "' has length " + std::to_string(vec.size()) +
                      ", expected " + std::to_string(dimension_));
    double sq = 0.0;
    for (double v : vec) sq += v * v;
    entries_[std::move(word)] = Entry{std::move(vec), std::sqrt(sq)};
  }

  bool contains(std::string_view word) const { return entries_.contains(std::string(word)); }
  const std::vector<double>* find(std::string_view word) const {
    auto it = entries_.find(std::string(word));
    return it == entries_.end() ? nullptr : &it->second.vec;
  }

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return entries_.size(); }
  double oov_cosine() const noexcept { return oov_cosine_; }
  void set_oov_cosine(double v) noexcept { oov_cosine_ = v; }

  /// Cosine between two words. Missing words and zero-norm vectors both map
  /// to the OOV constant.
  double cosine(std::string_view a, std::string_view b) const {
    auto ia = entries_.find(std::string(a));
    if (ia == entries_.end() || ia->second.norm == 0.0) return oov_cosine_;
    auto ib = entries_.find(std::string(b));
    if (ib == entries_.end() || ib->second.norm == 0.0) return oov_cosine_;
    const auto& va = ia->second.vec;
    const auto& vb = ib->second.vec;
    double dot = 0.0;
    for (std::size_t i = 0; i < dimension_; ++i) dot += va[i] * vb[i];
    return dot / (ia->second.norm * ib->second.norm);
  }

 private:
  struct Entry {
    std::vector<double> vec;
    double norm = 0.0;
  };
  std::size_t dimension_ = 0;
  double oov_cosine_ = kDefaultOovCosine;
  std::unordered_map<std::string, Entry> entries_;
};

inline double cosine_similarity(const EmbeddingTable& table, std::string_view a, std::string_view b) {
  return table.cosine(a, b);
}

namespace detail {

inline std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    auto b = line.find_first_not_of(" \t", pos);
    if (b == std::string_view::npos) break;
    auto e = line.find_first_of(" \t", b);
    if (e == std::string_view::npos) e = line.size();
    out.push_back(line.substr(b, e - b));
    pos = e;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view tok, T& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

}  // namespace detail

/// Reads word2vec text format: an optional `count dim` header followed by
/// `word v1 ... vd` lines. Without a header the first vector fixes the
/// dimension.
inline EmbeddingTable parse_vectors(std::istream& in, const LoadOptions& opts = {}) {
  EmbeddingTable table;
  std::size_t header_dim = 0;
  std::string raw;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = detail::strip_cr(raw);
    if (detail::is_blank(line)) continue;
    auto toks = detail::split_spaces(line);
    if (first) {
      first = false;
      std::size_t n = 0, d = 0;
      if (toks.size() == 2 && detail::parse_number(toks[0], n) && detail::parse_number(toks[1], d)) {
        if (d == 0) throw ParseError("header dimension must be positive", lineno);
        header_dim = d;
        continue;
      }
    }
    if (toks.size() < 2) throw ParseError("expected word followed by vector components", lineno);
    std::vector<double> vec;
    vec.reserve(toks.size() - 1);
    for (std::size_t i = 1; i < toks.size(); ++i) {
      double v = 0.0;
      if (!detail::parse_number(toks[i], v) || !std::isfinite(v))
        throw ParseError("non-numeric component '" + std::string(toks[i]) + "'", lineno);
      vec.push_back(v);
    }
    std::size_t expected = header_dim ? header_dim : table.dimension();
    if (expected != 0 && vec.size() != expected)
      throw ParseError("vector has " + std::to_string(vec.size()) + " components, expected " +
                           std::to_string(expected),
                       lineno);
    std::string word(toks[0]);
    if (opts.lowercase) word = utf8::lowercase(word);
    table.add(std::move(word), std::move(vec));
  }
  if (table.dimension() == 0) {
    if (header_dim == 0) throw ParseError("no vectors found");
    return EmbeddingTable(header_dim);
  }
  return table;
}

inline EmbeddingTable load_vectors(const std::filesystem::path& path, const LoadOptions& opts = {}) {
  auto in = detail::open_input(path);
  return parse_vectors(in, opts);
}

}  // namespace morphochain

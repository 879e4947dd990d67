#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "morphochain/corpus.hpp"
#include "morphochain/error.hpp"
#include "morphochain/model.hpp"

// Versioned, tab-separated model file:
//
//   morphochain-model  1
//   dimension  <d>
//   lambda  <x>
//   neighborhood_k  <k>
//   min_parent_ratio  <r>
//   transformations_require_vocab  <0|1>
//   embeddings  <path>
//   [weights]  <d>          then d lines  feature-name  weight
//   [suffixes]  <n>         then n lines  affix  support
//   [prefixes]  <n>
//   [correlations]  <n>     then n lines  suffix|prefix  a  b   (a < b)
//   [vocabulary]  <n>       then n lines  word  count
//
// Reals use the shortest representation that round-trips exactly.
namespace morphochain {

inline constexpr int kModelFormatVersion = 1;

inline std::string format_real(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

inline void write_model(std::ostream& out, const Model& model) {
  model.validate();
  out << "morphochain-model\t" << kModelFormatVersion << '\n';
  out << "dimension\t" << model.index.size() << '\n';
  out << "lambda\t" << format_real(model.lambda) << '\n';
  out << "neighborhood_k\t" << model.neighborhood_k << '\n';
  out << "min_parent_ratio\t" << format_real(model.config.min_parent_ratio) << '\n';
  out << "transformations_require_vocab\t" << (model.config.transformations_require_vocab ? 1 : 0) << '\n';
  out << "embeddings\t" << model.embeddings_path << '\n';
  out << "[weights]\t" << model.theta.size() << '\n';
  for (std::size_t i = 0; i < model.theta.size(); ++i)
    out << model.index.name(static_cast<FeatureId>(i)) << '\t' << format_real(model.theta[i]) << '\n';
  for (AffixSide side : {AffixSide::Suffix, AffixSide::Prefix}) {
    const auto& list = model.inventory.list(side);
    out << (side == AffixSide::Suffix ? "[suffixes]\t" : "[prefixes]\t") << list.size() << '\n';
    for (const auto& [a, n] : list) out << a << '\t' << n << '\n';
  }
  std::vector<std::string> corr;
  for (AffixSide side : {AffixSide::Suffix, AffixSide::Prefix})
    for (const auto& [a, partners] : model.correlations.pairs(side))
      for (const auto& b : partners)
        if (a < b) corr.push_back(std::string(side == AffixSide::Suffix ? "suffix" : "prefix") + '\t' + a + '\t' + b);
  out << "[correlations]\t" << corr.size() << '\n';
  for (const auto& line : corr) out << line << '\n';
  out << "[vocabulary]\t" << model.vocab.size() << '\n';
  for (const auto& [w, c] : model.vocab) out << w << '\t' << c << '\n';
}

inline void save_model(const std::filesystem::path& path, const Model& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  write_model(out, model);
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

namespace detail {

class ModelReader {
 public:
  explicit ModelReader(std::istream& in) : in_(in) {}

  std::vector<std::string> fields(std::size_t expected) {
    std::string raw;
    if (!std::getline(in_, raw)) throw ParseError("unexpected end of model file", line_ + 1);
    ++line_;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
      auto tab = raw.find('\t', pos);
      out.push_back(raw.substr(pos, tab == std::string::npos ? std::string::npos : tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    if (out.size() != expected)
      throw ParseError("expected " + std::to_string(expected) + " fields, found " + std::to_string(out.size()), line_);
    return out;
  }

  std::string value(std::string_view key) {
    auto f = fields(2);
    if (f[0] != key) throw ParseError("expected '" + std::string(key) + "', found '" + f[0] + "'", line_);
    return f[1];
  }

  template <typename T>
  T number(const std::string& s) {
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("bad number '" + s + "'", line_);
    return v;
  }

  std::size_t section(std::string_view name) { return number<std::size_t>(value(name)); }

  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

}  // namespace detail

inline Model read_model(std::istream& in) {
  detail::ModelReader r(in);
  Model m;
  auto version = r.number<int>(r.value("morphochain-model"));
  if (version != kModelFormatVersion)
    throw ParseError("unsupported model format version " + std::to_string(version), r.line());
  const auto dim = r.section("dimension");
  m.lambda = r.number<double>(r.value("lambda"));
  m.neighborhood_k = r.number<std::size_t>(r.value("neighborhood_k"));
  m.config.min_parent_ratio = r.number<double>(r.value("min_parent_ratio"));
  m.config.transformations_require_vocab = r.number<int>(r.value("transformations_require_vocab")) != 0;
  m.embeddings_path = r.value("embeddings");

  const auto nweights = r.section("[weights]");
  if (nweights != dim) throw ParseError("weight count does not match dimension", r.line());
  m.theta.reserve(nweights);
  for (std::size_t i = 0; i < nweights; ++i) {
    auto f = r.fields(2);
    if (m.index.lookup(f[0])) throw ParseError("duplicate feature '" + f[0] + "'", r.line());
    m.index.add(f[0]);
    m.theta.push_back(r.number<double>(f[1]));
  }
  m.index.freeze();
  for (auto* list : {&m.inventory.suffixes, &m.inventory.prefixes}) {
    const auto n = r.section(list == &m.inventory.suffixes ? "[suffixes]" : "[prefixes]");
    for (std::size_t i = 0; i < n; ++i) {
      auto f = r.fields(2);
      list->emplace_back(f[0], r.number<std::int64_t>(f[1]));
    }
  }
  const auto ncorr = r.section("[correlations]");
  for (std::size_t i = 0; i < ncorr; ++i) {
    auto f = r.fields(3);
    if (f[0] != "suffix" && f[0] != "prefix") throw ParseError("bad correlation side '" + f[0] + "'", r.line());
    m.correlations.add(f[0] == "suffix" ? AffixSide::Suffix : AffixSide::Prefix, f[1], f[2]);
  }
  const auto nvocab = r.section("[vocabulary]");
  for (std::size_t i = 0; i < nvocab; ++i) {
    auto f = r.fields(2);
    m.vocab.insert(f[0], r.number<std::int64_t>(f[1]));
  }
  m.config.alphabet = induce_alphabet(m.vocab);
  m.config.validate();
  m.validate();
  return m;
}

inline Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model '" + path.string() + "'");
  return read_model(in);
}

}  // namespace morphochain

#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "morphochain/error.hpp"
#include "morphochain/utf8.hpp"

namespace morphochain {

/// Vocabulary with positive integer frequencies. Ordered so that every
/// traversal is deterministic.
class WordList {
 public:
  using Map = std::map<std::string, std::int64_t, std::less<>>;

  WordList() = default;

  /// Adds a new word; throws DataError on duplicates or non-positive counts.
  void insert(std::string word, std::int64_t count) {
    if (word.empty()) throw DataError("empty word in wordlist");
    if (count < 1) throw DataError("count for '" + word + "' must be >= 1");
    auto [it, fresh] = entries_.emplace(std::move(word), count);
    if (!fresh) throw DataError("duplicate word '" + it->first + "'");
    total_ += count;
  }

  bool contains(std::string_view word) const { return entries_.find(word) != entries_.end(); }

  std::optional<std::int64_t> count(std::string_view word) const {
    auto it = entries_.find(word);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::int64_t total() const noexcept { return total_; }
  const Map& entries() const noexcept { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  friend bool operator==(const WordList&, const WordList&) = default;

 private:
  Map entries_;
  std::int64_t total_ = 0;
};

/// Gold analyses: each word maps to one or more alternatives, each an
/// ordered list of surface morphs.
struct GoldSegmentations {
  using Analysis = std::vector<std::string>;
  std::map<std::string, std::vector<Analysis>, std::less<>> entries;

  std::size_t size() const noexcept { return entries.size(); }
  bool empty() const noexcept { return entries.empty(); }
};

struct LoadOptions {
  bool lowercase = false;
};

namespace detail {

inline std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

inline bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

inline std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(' ');
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(' ');
  return s.substr(b, e - b + 1);
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace detail

/// Parses `word<TAB>count` lines. Blank lines are skipped. With
/// `lowercase`, words that collide after folding have their counts summed.
inline WordList parse_wordlist(std::istream& in, const LoadOptions& opts = {}) {
  WordList out;
  std::map<std::string, std::int64_t, std::less<>> folded;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = detail::strip_cr(raw);
    if (detail::is_blank(line)) continue;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw ParseError("expected word<TAB>count", lineno);
    std::string_view word = line.substr(0, tab);
    std::string_view num = line.substr(tab + 1);
    if (word.empty()) throw ParseError("empty word", lineno);
    std::int64_t count = 0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), count);
    if (ec != std::errc() || ptr != num.data() + num.size())
      throw ParseError("count '" + std::string(num) + "' is not an integer", lineno);
    if (count < 1) throw ParseError("count must be >= 1", lineno);
    try {
      utf8::decode(word);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno);
    }
    if (opts.lowercase) {
      folded[utf8::lowercase(word)] += count;
    } else {
      out.insert(std::string(word), count);
    }
  }
  if (opts.lowercase)
    for (auto& [w, c] : folded) out.insert(w, c);
  return out;
}

inline WordList load_wordlist(const std::filesystem::path& path, const LoadOptions& opts = {}) {
  auto in = detail::open_input(path);
  return parse_wordlist(in, opts);
}

/// Parses `word<TAB>morph morph, morph morph` lines. Alternatives keep file
/// order; each must concatenate back to the word.
inline GoldSegmentations parse_gold(std::istream& in, const LoadOptions& opts = {}) {
  GoldSegmentations gold;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = detail::strip_cr(raw);
    if (detail::is_blank(line)) continue;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw ParseError("expected word<TAB>analysis", lineno);
    std::string word(line.substr(0, tab));
    if (word.empty()) throw ParseError("empty word", lineno);
    if (opts.lowercase) word = utf8::lowercase(word);
    std::vector<GoldSegmentations::Analysis> alternatives;
    std::string_view rest = line.substr(tab + 1);
    while (true) {
      auto comma = rest.find(',');
      std::string_view chunk = detail::trim(rest.substr(0, comma));
      GoldSegmentations::Analysis morphs;
      std::size_t pos = 0;
      while (pos < chunk.size()) {
        auto sp = chunk.find(' ', pos);
        if (sp == std::string_view::npos) sp = chunk.size();
        if (sp > pos) {
          std::string morph(chunk.substr(pos, sp - pos));
          morphs.push_back(opts.lowercase ? utf8::lowercase(morph) : morph);
        }
        pos = sp + 1;
      }
      if (morphs.empty()) throw ParseError("empty analysis for '" + word + "'", lineno);
      std::string joined;
      for (const auto& m : morphs) joined += m;
      if (joined != word)
        throw DataError("line " + std::to_string(lineno) + ": analysis of '" + word +
                        "' concatenates to '" + joined + "'");
      alternatives.push_back(std::move(morphs));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    auto [it, fresh] = gold.entries.emplace(word, std::move(alternatives));
    if (!fresh) throw DataError("line " + std::to_string(lineno) + ": duplicate gold word '" + word + "'");
  }
  return gold;
}

inline GoldSegmentations load_gold(const std::filesystem::path& path, const LoadOptions& opts = {}) {
  auto in = detail::open_input(path);
  return parse_gold(in, opts);
}

/// Training vocabulary: train words with count >= min_freq, plus every gold
/// word (count 1 when absent from train). Shared words keep the train count.
inline WordList prepare_training_vocabulary(const WordList& train, const GoldSegmentations& gold,
                                            std::int64_t min_freq) {
  if (min_freq < 1) throw ConfigError("min_freq must be >= 1");
  WordList out;
  for (const auto& [word, count] : train)
    if (count >= min_freq || gold.entries.contains(word)) out.insert(word, count);
  for (const auto& [word, analyses] : gold.entries)
    if (!out.contains(word)) out.insert(word, train.count(word).value_or(1));
  if (out.empty()) throw ConfigError("training vocabulary is empty after thresholding at " + std::to_string(min_freq));
  return out;
}

}  // namespace morphochain

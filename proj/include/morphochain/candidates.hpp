#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "morphochain/corpus.hpp"
#include "morphochain/error.hpp"
#include "morphochain/utf8.hpp"

namespace morphochain {

enum class CandidateType : std::uint8_t { Stop, Suffix, Prefix, Repeat, Delete, Modify };

inline constexpr std::string_view to_string(CandidateType t) {
  switch (t) {
    case CandidateType::Stop: return "Stop";
    case CandidateType::Suffix: return "Suffix";
    case CandidateType::Prefix: return "Prefix";
    case CandidateType::Repeat: return "Repeat";
    case CandidateType::Delete: return "Delete";
    case CandidateType::Modify: return "Modify";
  }
  return "?";
}

inline std::optional<CandidateType> parse_candidate_type(std::string_view s) {
  for (auto t : {CandidateType::Stop, CandidateType::Suffix, CandidateType::Prefix, CandidateType::Repeat,
                 CandidateType::Delete, CandidateType::Modify})
    if (to_string(t) == s) return t;
  return std::nullopt;
}

/// Transformations and suffix additions attach on the right edge.
inline constexpr bool is_suffix_side(CandidateType t) {
  return t == CandidateType::Suffix || t == CandidateType::Repeat || t == CandidateType::Delete ||
         t == CandidateType::Modify;
}

inline constexpr bool is_transformation(CandidateType t) {
  return t == CandidateType::Repeat || t == CandidateType::Delete || t == CandidateType::Modify;
}

/// A (parent, type) pair proposed for a word.
///
/// `affix` is the surface material the child adds around the (possibly
/// altered) parent. For transformations, `changed` holds the parent
/// character involved and, for Modify only, the child's replacement
/// character; the replacement is empty for Repeat and Delete.
struct Candidate {
  std::string parent;
  CandidateType type = CandidateType::Stop;
  std::string affix;
  std::pair<std::string, std::string> changed;

  static Candidate stop() { return Candidate{}; }

  friend bool operator==(const Candidate&, const Candidate&) = default;
  friend auto operator<=>(const Candidate& a, const Candidate& b) {
    return std::tie(a.parent, a.type, a.affix, a.changed) <=> std::tie(b.parent, b.type, b.affix, b.changed);
  }
};

struct CandidateConfig {
  double min_parent_ratio = 0.5;
  bool transformations_require_vocab = true;
  std::set<char32_t> alphabet;

  void validate() const {
    if (!(min_parent_ratio > 0.0 && min_parent_ratio <= 1.0))
      throw ConfigError("min_parent_ratio must lie in (0, 1]");
  }
};

inline std::set<char32_t> induce_alphabet(const WordList& words) {
  std::set<char32_t> out;
  for (const auto& [w, c] : words)
    for (char32_t cp : utf8::decode(w)) out.insert(cp);
  return out;
}

/// Smallest admissible parent length for a word of `n` characters.
inline std::size_t min_parent_length(std::size_t n, double ratio) {
  auto m = static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(n) - 1e-9));
  return m < 1 ? 1 : m;
}

/// Enumerates C(word). Stop comes first, then for each split length from
/// longest to shortest: Suffix, Prefix, Repeat, Delete, Modify.
inline std::vector<Candidate> generate_candidates(std::string_view word, const WordList& vocab,
                                                  const CandidateConfig& config) {
  const std::u32string w = utf8::decode(word);
  const std::size_t n = w.size();
  std::vector<Candidate> out;
  out.push_back(Candidate::stop());
  if (n < 2) return out;
  const std::size_t lo = min_parent_length(n, config.min_parent_ratio);
  std::set<std::pair<std::string, CandidateType>> seen;
  auto emit = [&](std::string parent, CandidateType type, std::u32string_view affix,
                  std::pair<std::string, std::string> changed = {}) {
    if (!seen.emplace(parent, type).second) return;
    out.push_back(Candidate{std::move(parent), type, utf8::encode(affix), std::move(changed)});
  };
  const std::u32string_view wv(w);
  for (std::size_t len = n - 1; len >= lo && len >= 1; --len) {
    const std::u32string_view stem = wv.substr(0, len);
    const std::u32string_view tail = wv.substr(len);
    emit(utf8::encode(stem), CandidateType::Suffix, tail);
    emit(utf8::encode(wv.substr(n - len)), CandidateType::Prefix, wv.substr(0, n - len));

    // ...xx|affix  ->  parent ...x
    if (len >= 2 && len - 1 >= lo && stem[len - 1] == stem[len - 2]) {
      std::string parent = utf8::encode(stem.substr(0, len - 1));
      if (!config.transformations_require_vocab || vocab.contains(parent))
        emit(std::move(parent), CandidateType::Repeat, tail, {utf8::encode(stem[len - 1]), ""});
    }
    // stem|affix -> parent stem+c
    if (len + 1 < n) {
      std::string base = utf8::encode(stem);
      for (char32_t c : config.alphabet) {
        std::string parent = base + utf8::encode(c);
        if (vocab.contains(parent))
          emit(std::move(parent), CandidateType::Delete, tail, {utf8::encode(c), ""});
      }
    }
    // st|affix with last(stem) replaced -> parent s+c
    if (len >= 2) {
      std::string base = utf8::encode(stem.substr(0, len - 1));
      for (char32_t c : config.alphabet) {
        if (c == stem[len - 1]) continue;
        std::string parent = base + utf8::encode(c);
        if (vocab.contains(parent))
          emit(std::move(parent), CandidateType::Modify, tail, {utf8::encode(c), utf8::encode(stem[len - 1])});
      }
    }
    if (len == 1) break;
  }
  return out;
}

/// Reconstructs the candidate that derives `word` from `parent` under `type`,
/// or nullopt when the edge is not derivable. Ignores length ratio and
/// vocabulary constraints; only the string relation is checked.
inline std::optional<Candidate> derive_candidate(std::string_view word, std::string_view parent, CandidateType type) {
  if (type == CandidateType::Stop) {
    if (!parent.empty()) return std::nullopt;
    return Candidate::stop();
  }
  const std::u32string w = utf8::decode(word);
  const std::u32string p = utf8::decode(parent);
  const std::size_t n = w.size(), m = p.size();
  if (m == 0 || m >= n) return std::nullopt;
  const std::u32string_view wv(w), pv(p);
  Candidate c{std::string(parent), type, {}, {}};
  switch (type) {
    case CandidateType::Suffix:
      if (wv.substr(0, m) != pv) return std::nullopt;
      c.affix = utf8::encode(wv.substr(m));
      return c;
    case CandidateType::Prefix:
      if (wv.substr(n - m) != pv) return std::nullopt;
      c.affix = utf8::encode(wv.substr(0, n - m));
      return c;
    case CandidateType::Repeat:
      if (m + 2 > n || wv.substr(0, m) != pv || w[m] != p[m - 1]) return std::nullopt;
      c.affix = utf8::encode(wv.substr(m + 1));
      c.changed = {utf8::encode(p[m - 1]), ""};
      return c;
    case CandidateType::Delete:
      if (m < 2 || wv.substr(0, m - 1) != pv.substr(0, m - 1)) return std::nullopt;
      c.affix = utf8::encode(wv.substr(m - 1));
      c.changed = {utf8::encode(p[m - 1]), ""};
      return c;
    case CandidateType::Modify:
      if (m < 2 || wv.substr(0, m - 1) != pv.substr(0, m - 1) || w[m - 1] == p[m - 1]) return std::nullopt;
      c.affix = utf8::encode(wv.substr(m));
      c.changed = {utf8::encode(p[m - 1]), utf8::encode(w[m - 1])};
      return c;
    case CandidateType::Stop:
      break;
  }
  return std::nullopt;
}

/// Contrastive neighbourhood: single adjacent transpositions inside the first
/// or last `k` characters, plus simultaneous non-overlapping pairs (one from
/// each end). Distinct strings in generation order, original word last.
inline std::vector<std::string> generate_neighbors(std::string_view word, std::size_t k) {
  if (k < 1) throw ConfigError("neighbourhood size k must be >= 1");
  const std::u32string w = utf8::decode(word);
  const std::size_t n = w.size();
  std::vector<std::size_t> front, back;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (i + 1 < k) front.push_back(i);
    if (i + k >= n) back.push_back(i);
  }
  std::vector<std::string> out;
  std::set<std::u32string> seen{w};
  auto emit = [&](std::u32string s) {
    if (seen.insert(s).second) out.push_back(utf8::encode(s));
  };
  std::set<std::size_t> singles(front.begin(), front.end());
  singles.insert(back.begin(), back.end());
  for (std::size_t i : singles) {
    std::u32string s = w;
    std::swap(s[i], s[i + 1]);
    emit(std::move(s));
  }
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i : front)
    for (std::size_t j : back)
      if (i + 1 < j || j + 1 < i) pairs.emplace(std::min(i, j), std::max(i, j));
  for (auto [i, j] : pairs) {
    std::u32string s = w;
    std::swap(s[i], s[i + 1]);
    std::swap(s[j], s[j + 1]);
    emit(std::move(s));
  }
  out.push_back(std::string(word));
  return out;
}

}  // namespace morphochain

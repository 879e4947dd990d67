#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "morphochain/candidates.hpp"
#include "morphochain/corpus.hpp"
#include "morphochain/utf8.hpp"

namespace morphochain {

enum class AffixSide : std::uint8_t { Suffix, Prefix };

using AffixCount = std::pair<std::string, std::int64_t>;

/// Frequent affixes ranked by support (descending, ties lexicographic).
struct AffixInventory {
  std::vector<AffixCount> suffixes;
  std::vector<AffixCount> prefixes;

  const std::vector<AffixCount>& list(AffixSide side) const {
    return side == AffixSide::Suffix ? suffixes : prefixes;
  }

  bool contains(AffixSide side, std::string_view affix) const {
    const auto& l = list(side);
    return std::any_of(l.begin(), l.end(), [&](const AffixCount& a) { return a.first == affix; });
  }

  bool empty() const noexcept { return suffixes.empty() && prefixes.empty(); }

  friend bool operator==(const AffixInventory&, const AffixInventory&) = default;
};

/// Symmetric same-side relation between inventory affixes.
struct AffixCorrelations {
  std::map<std::string, std::set<std::string>, std::less<>> suffix_pairs;
  std::map<std::string, std::set<std::string>, std::less<>> prefix_pairs;

  const std::map<std::string, std::set<std::string>, std::less<>>& pairs(AffixSide side) const {
    return side == AffixSide::Suffix ? suffix_pairs : prefix_pairs;
  }
  std::map<std::string, std::set<std::string>, std::less<>>& pairs(AffixSide side) {
    return side == AffixSide::Suffix ? suffix_pairs : prefix_pairs;
  }

  void add(AffixSide side, const std::string& a, const std::string& b) {
    pairs(side)[a].insert(b);
    pairs(side)[b].insert(a);
  }

  const std::set<std::string>* partners(AffixSide side, std::string_view affix) const {
    const auto& m = pairs(side);
    auto it = m.find(affix);
    return it == m.end() ? nullptr : &it->second;
  }

  friend bool operator==(const AffixCorrelations&, const AffixCorrelations&) = default;
};

namespace detail {

inline std::vector<AffixCount> top_affixes(const std::map<std::string, std::int64_t>& tally, std::size_t k) {
  std::vector<AffixCount> out(tally.begin(), tally.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const AffixCount& a, const AffixCount& b) { return a.second > b.second; });
  if (out.size() > k) out.resize(k);
  return out;
}

}  // namespace detail

/// Tallies string differences between words and their in-vocabulary split
/// parents. A word adds at most one to any given affix.
inline AffixInventory induce_affix_inventory(const WordList& vocab, const CandidateConfig& config,
                                             std::size_t max_suffixes, std::size_t max_prefixes) {
  if (max_suffixes < 1 || max_prefixes < 1) throw ConfigError("affix list sizes must be >= 1");
  std::map<std::string, std::int64_t> suffixes, prefixes;
  for (const auto& [word, count] : vocab) {
    const std::u32string w = utf8::decode(word);
    const std::size_t n = w.size();
    if (n < 2) continue;
    const std::size_t lo = min_parent_length(n, config.min_parent_ratio);
    std::set<std::string> suf, pre;
    for (std::size_t len = lo; len < n; ++len) {
      std::u32string_view wv(w);
      if (vocab.contains(utf8::encode(wv.substr(0, len)))) suf.insert(utf8::encode(wv.substr(len)));
      if (vocab.contains(utf8::encode(wv.substr(n - len)))) pre.insert(utf8::encode(wv.substr(0, n - len)));
    }
    for (const auto& a : suf) ++suffixes[a];
    for (const auto& a : pre) ++prefixes[a];
  }
  return AffixInventory{detail::top_affixes(suffixes, max_suffixes), detail::top_affixes(prefixes, max_prefixes)};
}

/// Two same-side inventory affixes are correlated when at least
/// `min_shared_stems` stems form words with both of them.
inline AffixCorrelations build_affix_correlations(const AffixInventory& inventory, const WordList& vocab,
                                                  const CandidateConfig& config, std::size_t min_shared_stems) {
  AffixCorrelations out;
  for (AffixSide side : {AffixSide::Suffix, AffixSide::Prefix}) {
    const auto& affixes = inventory.list(side);
    std::map<std::string, std::size_t> slot;
    for (std::size_t i = 0; i < affixes.size(); ++i) slot.emplace(affixes[i].first, i);
    // stem -> inventory affixes it combines with
    std::map<std::string, std::vector<std::size_t>> stems;
    for (const auto& [word, count] : vocab) {
      const std::u32string w = utf8::decode(word);
      const std::size_t n = w.size();
      if (n < 2) continue;
      const std::size_t lo = min_parent_length(n, config.min_parent_ratio);
      std::u32string_view wv(w);
      for (std::size_t len = lo; len < n; ++len) {
        std::string stem, affix;
        if (side == AffixSide::Suffix) {
          stem = utf8::encode(wv.substr(0, len));
          affix = utf8::encode(wv.substr(len));
        } else {
          stem = utf8::encode(wv.substr(n - len));
          affix = utf8::encode(wv.substr(0, n - len));
        }
        auto it = slot.find(affix);
        if (it != slot.end()) stems[stem].push_back(it->second);
      }
    }
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> shared;
    for (auto& [stem, ids] : stems) {
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j) ++shared[{ids[i], ids[j]}];
    }
    for (const auto& [pair, n] : shared)
      if (n >= min_shared_stems) out.add(side, affixes[pair.first].first, affixes[pair.second].first);
  }
  return out;
}

}  // namespace morphochain

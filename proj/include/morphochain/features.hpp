#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "morphochain/affixes.hpp"
#include "morphochain/candidates.hpp"
#include "morphochain/corpus.hpp"
#include "morphochain/embeddings.hpp"
#include "morphochain/error.hpp"

namespace morphochain {

using FeatureId = std::uint32_t;

/// Interned feature names. Ids are contiguous from 0; once frozen the index
/// never grows and unknown names are dropped by `lookup`.
class FeatureIndex {
 public:
  FeatureIndex() = default;

  /// Builds a frozen index with ids assigned in lexicographic name order.
  static FeatureIndex from_names(const std::set<std::string>& names) {
    FeatureIndex idx;
    for (const auto& n : names) idx.add(n);
    idx.freeze();
    return idx;
  }

  FeatureId add(const std::string& name) {
    if (auto it = ids_.find(name); it != ids_.end()) return it->second;
    if (frozen_) throw ContractViolation("cannot add '" + name + "' to a frozen feature index");
    auto id = static_cast<FeatureId>(names_.size());
    ids_.emplace(name, id);
    names_.push_back(name);
    return id;
  }

  std::optional<FeatureId> lookup(std::string_view name) const {
    auto it = ids_.find(std::string(name));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& name(FeatureId id) const { return names_.at(id); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::size_t size() const noexcept { return names_.size(); }
  bool frozen() const noexcept { return frozen_; }
  void freeze() noexcept { frozen_ = true; }

  friend bool operator==(const FeatureIndex& a, const FeatureIndex& b) {
    return a.names_ == b.names_ && a.frozen_ == b.frozen_;
  }

 private:
  std::unordered_map<std::string, FeatureId> ids_;
  std::vector<std::string> names_;
  bool frozen_ = false;
};

/// Sparse vector sorted by id, without explicit zeros.
struct FeatureVector {
  std::vector<std::pair<FeatureId, double>> entries;

  bool empty() const noexcept { return entries.empty(); }
  std::size_t size() const noexcept { return entries.size(); }
  double get(FeatureId id) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), id,
                               [](const auto& e, FeatureId v) { return e.first < v; });
    return (it != entries.end() && it->first == id) ? it->second : 0.0;
  }
  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Feature name/value pairs before interning, in emission order.
using NamedFeatures = std::vector<std::pair<std::string, double>>;

/// Everything feature extraction reads. All pointers must outlive the context.
struct FeatureContext {
  const WordList* vocab = nullptr;
  const EmbeddingTable* embeddings = nullptr;
  const AffixInventory* inventory = nullptr;
  const AffixCorrelations* correlations = nullptr;
  const CandidateConfig* config = nullptr;
};

namespace features {

inline constexpr std::string_view kCos = "cos";
inline constexpr std::string_view kWordFreq = "wordfreq";
inline constexpr std::string_view kOov = "oov";
inline constexpr int kMaxCosBins = 20;

inline std::string format_tenths(int tenths) {
  // -10 -> "-1.0", 5 -> "0.5"
  std::string out = tenths < 0 ? "-" : "";
  int a = std::abs(tenths);
  out += std::to_string(a / 10) + "." + std::to_string(a % 10);
  return out;
}

/// Name of the width-0.1 bin over [-1, 1] holding `v`; 1.0 falls in the top bin.
inline std::string maxcos_bin(double v) {
  int bin = static_cast<int>(std::floor((v + 1.0) * 10.0 + 1e-9));
  bin = std::clamp(bin, 0, kMaxCosBins - 1);
  int lo = bin - 10;
  return "maxcos\xE2\x88\x88[" + format_tenths(lo) + "," + format_tenths(lo + 1) + ")";
}

inline std::string affix_name(AffixSide side, std::string_view affix) {
  return std::string(side == AffixSide::Suffix ? "suffix=" : "prefix=") + std::string(affix);
}

inline std::string unk_name(AffixSide side) { return side == AffixSide::Suffix ? "suffix=UNK" : "prefix=UNK"; }

/// Prefix-side correlation names mark affixes with a trailing hyphen.
inline std::string correlation_name(AffixSide side, std::string_view a, std::string_view b) {
  if (side == AffixSide::Suffix) return "affixcorr:" + std::string(a) + ":" + std::string(b);
  return "affixcorr:" + std::string(a) + "-:" + std::string(b) + "-";
}

inline std::string transformation_name(CandidateType t, const std::pair<std::string, std::string>& chars) {
  return "type=" + std::string(to_string(t)) + "\xC3\x97" + "chars=(" + chars.first + "," +
         (chars.second.empty() ? "-" : chars.second) + ")";
}

inline void check_context(const FeatureContext& ctx) {
  if (!ctx.vocab || !ctx.embeddings || !ctx.inventory || !ctx.correlations || !ctx.config)
    throw ContractViolation("feature context is incomplete");
}

inline NamedFeatures stop_features(std::string_view word, double max_cos) {
  NamedFeatures out;
  const std::u32string w = utf8::decode(word);
  const std::size_t n = w.size();
  if (n >= 1) {
    out.emplace_back("begin=" + utf8::encode(w.front()), 1.0);
    if (n >= 2) out.emplace_back("begin=" + utf8::encode(std::u32string_view(w).substr(0, 2)), 1.0);
    out.emplace_back("end=" + utf8::encode(w.back()), 1.0);
    if (n >= 2) out.emplace_back("end=" + utf8::encode(std::u32string_view(w).substr(n - 2)), 1.0);
  }
  out.emplace_back("len=" + std::to_string(n), 1.0);
  out.emplace_back(maxcos_bin(max_cos), 1.0);
  return out;
}

inline NamedFeatures parent_features(std::string_view word, const Candidate& cand, const FeatureContext& ctx) {
  NamedFeatures out;
  const AffixSide side = is_suffix_side(cand.type) ? AffixSide::Suffix : AffixSide::Prefix;

  out.emplace_back(kCos, ctx.embeddings->cosine(word, cand.parent));

  if (ctx.inventory->contains(side, cand.affix))
    out.emplace_back(affix_name(side, cand.affix), 1.0);
  else
    out.emplace_back(unk_name(side), 1.0);

  if (const auto* partners = ctx.correlations->partners(side, cand.affix)) {
    for (const auto& b : *partners) {
      std::string sibling = side == AffixSide::Suffix ? cand.parent + b : b + cand.parent;
      if (ctx.vocab->contains(sibling)) out.emplace_back(correlation_name(side, cand.affix, b), 1.0);
    }
  }

  if (auto count = ctx.vocab->count(cand.parent))
    out.emplace_back(kWordFreq, std::log(static_cast<double>(*count)));
  else
    out.emplace_back(kOov, 1.0);

  if (is_transformation(cand.type)) out.emplace_back(transformation_name(cand.type, cand.changed), 1.0);
  return out;
}

inline void drop_zeros(NamedFeatures& f) {
  std::erase_if(f, [](const auto& e) { return e.second == 0.0; });
}

}  // namespace features

/// Highest cosine between `word` and any non-Stop candidate parent; the OOV
/// constant when there is none.
inline double max_parent_cosine(std::string_view word, const std::vector<Candidate>& cands,
                                const EmbeddingTable& embeddings) {
  bool any = false;
  double best = 0.0;
  for (const auto& c : cands) {
    if (c.type == CandidateType::Stop) continue;
    double v = embeddings.cosine(word, c.parent);
    if (!any || v > best) best = v;
    any = true;
  }
  return any ? best : embeddings.oov_cosine();
}

/// Named features for one candidate. `max_cos` is only read for Stop.
inline NamedFeatures extract_named_features(std::string_view word, const Candidate& cand, const FeatureContext& ctx,
                                            double max_cos) {
  features::check_context(ctx);
  auto derived = derive_candidate(word, cand.parent, cand.type);
  if (!derived || derived->affix != cand.affix || derived->changed != cand.changed)
    throw ContractViolation("candidate (" + cand.parent + ", " + std::string(to_string(cand.type)) +
                            ") is not derivable from '" + std::string(word) + "'");
  NamedFeatures out = cand.type == CandidateType::Stop ? features::stop_features(word, max_cos)
                                                       : features::parent_features(word, cand, ctx);
  features::drop_zeros(out);
  return out;
}

/// Named features for one candidate; the Stop max-cosine is computed from a
/// fresh candidate set.
inline NamedFeatures extract_named_features(std::string_view word, const Candidate& cand, const FeatureContext& ctx) {
  features::check_context(ctx);
  double max_cos = ctx.embeddings->oov_cosine();
  if (cand.type == CandidateType::Stop)
    max_cos = max_parent_cosine(word, generate_candidates(word, *ctx.vocab, *ctx.config), *ctx.embeddings);
  return extract_named_features(word, cand, ctx, max_cos);
}

namespace features {

template <typename Resolve>
FeatureVector intern(const NamedFeatures& named, Resolve&& resolve) {
  std::vector<std::pair<FeatureId, double>> raw;
  raw.reserve(named.size());
  for (const auto& [name, value] : named)
    if (std::optional<FeatureId> id = resolve(name)) raw.emplace_back(*id, value);
  std::stable_sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  FeatureVector fv;
  for (const auto& e : raw) {
    if (!fv.entries.empty() && fv.entries.back().first == e.first)
      fv.entries.back().second += e.second;
    else
      fv.entries.push_back(e);
  }
  std::erase_if(fv.entries, [](const auto& e) { return e.second == 0.0; });
  return fv;
}

}  // namespace features

/// Interns named features, growing an unfrozen index. Repeated names are summed.
inline FeatureVector to_vector(const NamedFeatures& named, FeatureIndex& index) {
  return features::intern(named, [&](const std::string& name) -> std::optional<FeatureId> {
    return index.frozen() ? index.lookup(name) : std::optional<FeatureId>(index.add(name));
  });
}

/// Interns against a frozen index; unknown names are dropped.
inline FeatureVector to_vector(const NamedFeatures& named, const FeatureIndex& index) {
  if (!index.frozen()) throw ContractViolation("const feature lookup requires a frozen index");
  return features::intern(named, [&](const std::string& name) { return index.lookup(name); });
}

inline FeatureVector extract_features(std::string_view word, const Candidate& cand, const FeatureContext& ctx,
                                      const FeatureIndex& index) {
  return to_vector(extract_named_features(word, cand, ctx), index);
}

/// Feature vectors for a whole candidate list, sharing one max-cosine pass.
inline std::vector<FeatureVector> extract_all(std::string_view word, const std::vector<Candidate>& cands,
                                              const FeatureContext& ctx, const FeatureIndex& index) {
  features::check_context(ctx);
  const double max_cos = max_parent_cosine(word, cands, *ctx.embeddings);
  std::vector<FeatureVector> out;
  out.reserve(cands.size());
  for (const auto& c : cands) out.push_back(to_vector(extract_named_features(word, c, ctx, max_cos), index));
  return out;
}

/// Collects every feature name reachable from the vocabulary and all
/// neighbourhood strings, plus the fixed families, and freezes the result.
inline FeatureIndex build_feature_index(const WordList& vocab, const FeatureContext& ctx, std::size_t neighborhood_k) {
  features::check_context(ctx);
  std::set<std::string> names{std::string(features::kCos), std::string(features::kWordFreq),
                              std::string(features::kOov), features::unk_name(AffixSide::Suffix),
                              features::unk_name(AffixSide::Prefix)};
  for (AffixSide side : {AffixSide::Suffix, AffixSide::Prefix})
    for (const auto& [a, n] : ctx.inventory->list(side)) names.insert(features::affix_name(side, a));
  std::set<std::string> visited;
  for (const auto& [word, count] : vocab) {
    for (const auto& s : generate_neighbors(word, neighborhood_k)) {
      if (!visited.insert(s).second) continue;
      auto cands = generate_candidates(s, *ctx.vocab, *ctx.config);
      const double max_cos = max_parent_cosine(s, cands, *ctx.embeddings);
      for (const auto& c : cands)
        for (auto& [name, value] : extract_named_features(s, c, ctx, max_cos)) names.insert(std::move(name));
    }
  }
  return FeatureIndex::from_names(names);
}

}  // namespace morphochain

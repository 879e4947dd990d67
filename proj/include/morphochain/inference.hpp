#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "morphochain/candidates.hpp"
#include "morphochain/embeddings.hpp"
#include "morphochain/error.hpp"
#include "morphochain/features.hpp"
#include "morphochain/model.hpp"
#include "morphochain/utf8.hpp"

namespace morphochain {

struct ChainStep {
  std::string word;
  CandidateType type = CandidateType::Stop;
  friend bool operator==(const ChainStep&, const ChainStep&) = default;
};

/// Base word first (type Stop), each later step derived from the previous one.
struct Chain {
  std::vector<ChainStep> steps;
  const std::string& word() const { return steps.back().word; }
  friend bool operator==(const Chain&, const Chain&) = default;
};

/// Boundary offsets are in characters, strictly increasing, inside (0, length).
struct Segmentation {
  std::string word;
  std::vector<std::size_t> boundaries;

  std::vector<std::string> segments() const {
    const std::u32string w = utf8::decode(word);
    std::vector<std::string> out;
    std::size_t prev = 0;
    for (std::size_t b : boundaries) {
      out.push_back(utf8::encode(std::u32string_view(w).substr(prev, b - prev)));
      prev = b;
    }
    out.push_back(utf8::encode(std::u32string_view(w).substr(prev)));
    return out;
  }

  friend bool operator==(const Segmentation&, const Segmentation&) = default;
};

namespace detail {

// Lower is preferred on equal scores: Stop, then shorter affix, then parent
// string, then type.
inline auto tie_key(const Candidate& c) {
  return std::make_tuple(c.type == CandidateType::Stop ? 0 : 1, utf8::length(c.affix), c.parent, c.type);
}

}  // namespace detail

/// Highest-scoring candidate. The Stop candidate seeds the search with its own
/// score because linear scores may be negative.
inline Candidate predict_parent(const Model& model, const EmbeddingTable& embeddings, std::string_view word) {
  auto cands = generate_candidates(word, model.vocab, model.config);
  auto fvs = extract_all(word, cands, model.context(embeddings), model.index);
  std::size_t best = 0;
  double best_score = score_candidate(model, fvs[0]);
  for (std::size_t i = 1; i < cands.size(); ++i) {
    double s = score_candidate(model, fvs[i]);
    if (s > best_score || (s == best_score && detail::tie_key(cands[i]) < detail::tie_key(cands[best]))) {
      best = i;
      best_score = s;
    }
  }
  return cands[best];
}

/// Repeatedly predicts parents until Stop. Parents are strictly shorter than
/// their children, so the loop terminates.
inline Chain predict_chain(const Model& model, const EmbeddingTable& embeddings, std::string_view word) {
  std::vector<ChainStep> reversed;
  std::string current(word);
  while (true) {
    Candidate c = predict_parent(model, embeddings, current);
    if (c.type == CandidateType::Stop) {
      reversed.push_back({current, CandidateType::Stop});
      break;
    }
    reversed.push_back({current, c.type});
    current = c.parent;
  }
  return Chain{{reversed.rbegin(), reversed.rend()}};
}

/// Where a single edge places its boundary, in the child's coordinates.
/// Repeat keeps the doubled letter with the stem; Delete shortens the stem
/// segment; Modify keeps the altered stem.
inline std::size_t edge_boundary(CandidateType type, std::size_t parent_len, std::size_t child_len) {
  switch (type) {
    case CandidateType::Suffix: return parent_len;
    case CandidateType::Prefix: return child_len - parent_len;
    case CandidateType::Repeat: return parent_len + 1;
    case CandidateType::Delete: return parent_len - 1;
    case CandidateType::Modify: return parent_len;
    case CandidateType::Stop: break;
  }
  throw ContractViolation("Stop edge has no boundary");
}

/// Maps every chain edge to a surface boundary in the final word.
inline Segmentation chain_to_segmentation(const Chain& chain) {
  if (chain.steps.empty() || chain.steps.front().type != CandidateType::Stop)
    throw ContractViolation("chain must start with a Stop step");
  std::set<std::size_t> bounds;
  for (std::size_t i = 1; i < chain.steps.size(); ++i) {
    const auto& parent = chain.steps[i - 1].word;
    const auto& step = chain.steps[i];
    if (step.type == CandidateType::Stop) throw ContractViolation("Stop may only open a chain");
    if (!derive_candidate(step.word, parent, step.type))
      throw ContractViolation("'" + step.word + "' is not derivable from '" + parent + "' by " +
                              std::string(to_string(step.type)));
    const std::size_t plen = utf8::length(parent), clen = utf8::length(step.word);
    const std::size_t cut = edge_boundary(step.type, plen, clen);
    if (step.type == CandidateType::Prefix) {
      std::set<std::size_t> shifted;
      for (std::size_t b : bounds) shifted.insert(b + cut);
      bounds = std::move(shifted);
    }
    bounds.insert(cut);
    std::erase_if(bounds, [&](std::size_t b) { return b == 0 || b >= clen; });
  }
  return Segmentation{chain.word(), {bounds.begin(), bounds.end()}};
}

inline Segmentation segment_word(const Model& model, const EmbeddingTable& embeddings, std::string_view word) {
  return chain_to_segmentation(predict_chain(model, embeddings, word));
}

inline std::string format_chain(const Chain& chain) {
  std::string out;
  for (const auto& s : chain.steps) {
    if (!out.empty()) out += ' ';
    out += s.word + ":" + std::string(to_string(s.type));
  }
  return out;
}

inline std::string format_segments(const Segmentation& seg) {
  std::string out;
  for (const auto& s : seg.segments()) {
    if (!out.empty()) out += ' ';
    out += s;
  }
  return out;
}

}  // namespace morphochain

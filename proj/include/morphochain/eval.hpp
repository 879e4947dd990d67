#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <iterator>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "morphochain/corpus.hpp"
#include "morphochain/inference.hpp"
#include "morphochain/model.hpp"
#include "morphochain/parallel.hpp"

namespace morphochain {

/// Micro-averaged boundary precision/recall/F1.
struct BoundaryScore {
  std::int64_t true_positives = 0;
  std::int64_t predicted_positives = 0;
  std::int64_t gold_positives = 0;
  double precision = 1.0;
  double recall = 1.0;
  double f1 = 1.0;

  static BoundaryScore from_counts(std::int64_t tp, std::int64_t pred, std::int64_t gold) {
    BoundaryScore s{tp, pred, gold, 1.0, 1.0, 1.0};
    s.precision = pred == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(pred);
    s.recall = gold == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(gold);
    // from raw counts: 2PR/(P+R) == 2tp/(pred+gold) whenever both are defined
    const double sum = s.precision + s.recall;
    s.f1 = sum == 0.0 ? 0.0 : 2.0 * s.precision * s.recall / sum;
    return s;
  }
};

/// Boundary offsets (in characters) implied by an ordered list of morphs.
inline std::vector<std::size_t> analysis_boundaries(const GoldSegmentations::Analysis& morphs) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  for (std::size_t i = 0; i + 1 < morphs.size(); ++i) {
    pos += utf8::length(morphs[i]);
    out.push_back(pos);
  }
  return out;
}

inline std::int64_t count_matches(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return static_cast<std::int64_t>(common.size());
}

/// Index of the gold alternative with the highest per-word F1 (first on ties).
inline std::size_t best_alternative(const std::vector<std::size_t>& predicted,
                                    const std::vector<GoldSegmentations::Analysis>& alternatives) {
  std::size_t best = 0;
  double best_f1 = -1.0;
  for (std::size_t i = 0; i < alternatives.size(); ++i) {
    auto gold = analysis_boundaries(alternatives[i]);
    auto s = BoundaryScore::from_counts(count_matches(predicted, gold), static_cast<std::int64_t>(predicted.size()),
                                        static_cast<std::int64_t>(gold.size()));
    if (s.f1 > best_f1) {
      best_f1 = s.f1;
      best = i;
    }
  }
  return best;
}

/// Scores predictions against every gold word, honouring the best-matching
/// alternative per word.
inline BoundaryScore evaluate_boundaries(const std::map<std::string, Segmentation, std::less<>>& predictions,
                                         const GoldSegmentations& gold) {
  std::int64_t tp = 0, pred = 0, ref = 0;
  for (const auto& [word, alternatives] : gold.entries) {
    auto it = predictions.find(word);
    if (it == predictions.end()) throw ContractViolation("no prediction for gold word '" + word + "'");
    const auto& predicted = it->second.boundaries;
    auto chosen = analysis_boundaries(alternatives[best_alternative(predicted, alternatives)]);
    tp += count_matches(predicted, chosen);
    pred += static_cast<std::int64_t>(predicted.size());
    ref += static_cast<std::int64_t>(chosen.size());
  }
  return BoundaryScore::from_counts(tp, pred, ref);
}

struct Diagnostics {
  double avg_max_prob = 0.0;
  /// Mean entropy of P(z|w), in nats.
  double avg_entropy = 0.0;
  double avg_candidates = 0.0;
};

inline Diagnostics distribution_diagnostics(const Model& model, const EmbeddingTable& embeddings,
                                            const WordList& words, std::size_t jobs = 1) {
  std::vector<std::string> list;
  for (const auto& [w, c] : words) list.push_back(w);
  std::vector<std::tuple<double, double, double>> per(list.size());
  parallel_for(list.size(), jobs, [&](std::size_t i) {
    auto p = candidate_distribution(model, embeddings, list[i]);
    double h = 0.0, mx = 0.0;
    for (double v : p) {
      if (v > 0.0) h -= v * std::log(v);
      mx = std::max(mx, v);
    }
    per[i] = {mx, h, static_cast<double>(p.size())};
  });
  Diagnostics d;
  if (list.empty()) return d;
  for (const auto& [mx, h, n] : per) {
    d.avg_max_prob += mx;
    d.avg_entropy += h;
    d.avg_candidates += n;
  }
  const auto n = static_cast<double>(list.size());
  d.avg_max_prob /= n;
  d.avg_entropy /= n;
  d.avg_candidates /= n;
  return d;
}

/// Affix strings on every non-Stop chain edge, most frequent first (ties
/// lexicographic). Prefixes are written with a trailing hyphen.
inline std::vector<std::pair<std::string, std::int64_t>> affix_frequency_profile(
    const std::map<std::string, std::pair<Segmentation, Chain>, std::less<>>& predictions) {
  std::map<std::string, std::int64_t> tally;
  for (const auto& [word, pc] : predictions) {
    const auto& steps = pc.second.steps;
    for (std::size_t i = 1; i < steps.size(); ++i) {
      auto c = derive_candidate(steps[i].word, steps[i - 1].word, steps[i].type);
      if (!c) throw ContractViolation("chain for '" + word + "' has a non-derivable edge");
      ++tally[c->type == CandidateType::Prefix ? c->affix + "-" : c->affix];
    }
  }
  std::vector<std::pair<std::string, std::int64_t>> out(tally.begin(), tally.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

/// Segments every gold word, in parallel when jobs > 1.
inline std::map<std::string, std::pair<Segmentation, Chain>, std::less<>> predict_all(
    const Model& model, const EmbeddingTable& embeddings, const std::vector<std::string>& words, std::size_t jobs = 1) {
  std::vector<Chain> chains(words.size());
  parallel_for(words.size(), jobs, [&](std::size_t i) { chains[i] = predict_chain(model, embeddings, words[i]); });
  std::map<std::string, std::pair<Segmentation, Chain>, std::less<>> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto seg = chain_to_segmentation(chains[i]);
    out.emplace(words[i], std::make_pair(std::move(seg), std::move(chains[i])));
  }
  return out;
}

inline std::vector<std::string> gold_words(const GoldSegmentations& gold) {
  std::vector<std::string> out;
  for (const auto& [w, a] : gold.entries) out.push_back(w);
  return out;
}

inline BoundaryScore evaluate_model(const Model& model, const EmbeddingTable& embeddings,
                                    const GoldSegmentations& gold, std::size_t jobs = 1) {
  auto preds = predict_all(model, embeddings, gold_words(gold), jobs);
  std::map<std::string, Segmentation, std::less<>> segs;
  for (auto& [w, pc] : preds) segs.emplace(w, pc.first);
  return evaluate_boundaries(segs, gold);
}

struct SweepRow {
  std::int64_t threshold = 1;
  std::size_t vocab_size = 0;
  BoundaryScore score;
  TrainReport report;
};

/// Train/segment/evaluate once per frequency threshold.
inline std::vector<SweepRow> sweep_frequency_threshold(const WordList& train_words, const GoldSegmentations& gold,
                                                       const EmbeddingTable& embeddings,
                                                       const std::vector<std::int64_t>& thresholds,
                                                       const TrainOptions& opts) {
  if (thresholds.empty()) throw ConfigError("threshold list is empty");
  std::vector<SweepRow> rows;
  for (std::int64_t t : thresholds) {
    WordList vocab = prepare_training_vocabulary(train_words, gold, t);
    auto [model, report] = train(vocab, embeddings, opts);
    rows.push_back(SweepRow{t, vocab.size(), evaluate_model(model, embeddings, gold, opts.jobs), report});
  }
  return rows;
}

}  // namespace morphochain

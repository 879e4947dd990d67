#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "morphochain/affixes.hpp"
#include "morphochain/candidates.hpp"
#include "morphochain/corpus.hpp"
#include "morphochain/embeddings.hpp"
#include "morphochain/error.hpp"
#include "morphochain/features.hpp"
#include "morphochain/lbfgs.hpp"
#include "morphochain/parallel.hpp"

namespace morphochain {

/// Trained log-linear parent model.
///
/// Besides the weights the model carries everything candidate generation and
/// feature extraction need except the embeddings: the training vocabulary,
/// affix inventory, correlations and candidate configuration.
struct Model {
  std::vector<double> theta;
  FeatureIndex index;
  AffixInventory inventory;
  AffixCorrelations correlations;
  CandidateConfig config;
  WordList vocab;
  double lambda = 1.0;
  std::size_t neighborhood_k = 5;
  /// Where the training embeddings came from; informational.
  std::string embeddings_path;

  FeatureContext context(const EmbeddingTable& embeddings) const {
    return FeatureContext{&vocab, &embeddings, &inventory, &correlations, &config};
  }

  void validate() const {
    if (theta.size() != index.size())
      throw ContractViolation("theta has " + std::to_string(theta.size()) + " weights for " +
                              std::to_string(index.size()) + " features");
    if (!(lambda >= 0.0)) throw ConfigError("lambda must be >= 0");
  }
};

struct TrainReport {
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  /// Full objective: contrastive term minus the L2 penalty.
  double final_objective = 0.0;
  double contrastive_term = 0.0;
  double penalty = 0.0;
  double gradient_norm = 0.0;
  bool converged = false;
};

/// theta . phi, no exponentiation.
inline double score_candidate(std::span<const double> theta, const FeatureVector& fv) {
  double s = 0.0;
  for (const auto& [id, v] : fv.entries) {
    if (id >= theta.size()) throw ContractViolation("feature id " + std::to_string(id) + " out of range");
    s += theta[id] * v;
  }
  return s;
}

inline double score_candidate(const Model& model, const FeatureVector& fv) { return score_candidate(model.theta, fv); }

/// log sum exp with max subtraction; -inf for an empty range.
inline double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) return -std::numeric_limits<double>::infinity();
  double m = *std::max_element(xs.begin(), xs.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

/// Softmax of raw scores with max subtraction.
inline std::vector<double> distribution_from_scores(std::span<const double> scores) {
  std::vector<double> p(scores.begin(), scores.end());
  if (p.empty()) return p;
  double m = *std::max_element(p.begin(), p.end());
  double z = 0.0;
  for (double& v : p) z += (v = std::exp(v - m));
  for (double& v : p) v /= z;
  return p;
}

/// P(z | word) over the given candidate set.
inline std::vector<double> candidate_distribution(const Model& model, const EmbeddingTable& embeddings,
                                                  std::string_view word, const std::vector<Candidate>& cands) {
  if (cands.empty()) throw ContractViolation("candidate set must be nonempty");
  auto fvs = extract_all(word, cands, model.context(embeddings), model.index);
  std::vector<double> scores;
  scores.reserve(fvs.size());
  for (const auto& fv : fvs) scores.push_back(score_candidate(model, fv));
  return distribution_from_scores(scores);
}

inline std::vector<double> candidate_distribution(const Model& model, const EmbeddingTable& embeddings,
                                                  std::string_view word) {
  return candidate_distribution(model, embeddings, word, generate_candidates(word, model.vocab, model.config));
}

/// Precomputed feature vectors for every word of the training vocabulary and
/// its contrastive neighbourhood.
///
/// The objective maximised is
///   sum_w [ log sum_{z in C(w)} e^{theta.phi(w,z)}
///           - log sum_{v in N(w)} sum_{z in C(v)} e^{theta.phi(v,z)} ] - lambda |theta|^2.
/// The full likelihood over every string of the alphabet would need a
/// normaliser over an unbounded set; the neighbourhood replaces it.
class ContrastiveProblem {
 public:
  /// Builds the neighbourhoods and a frozen feature index from scratch.
  ContrastiveProblem(const WordList& words, const FeatureContext& ctx, std::size_t neighborhood_k, std::size_t jobs = 1)
      : jobs_(jobs) {
    features::check_context(ctx);
    collect(words, neighborhood_k);
    auto named = extract_named(ctx);
    std::set<std::string> names{std::string(features::kCos), std::string(features::kWordFreq),
                                std::string(features::kOov), features::unk_name(AffixSide::Suffix),
                                features::unk_name(AffixSide::Prefix)};
    for (AffixSide side : {AffixSide::Suffix, AffixSide::Prefix})
      for (const auto& [a, n] : ctx.inventory->list(side)) names.insert(features::affix_name(side, a));
    for (const auto& block : named)
      for (const auto& nf : block)
        for (const auto& [name, v] : nf) names.insert(name);
    index_ = FeatureIndex::from_names(names);
    intern(named);
  }

  /// Uses an existing frozen index; features outside it are dropped.
  ContrastiveProblem(const WordList& words, const FeatureContext& ctx, const FeatureIndex& index,
                     std::size_t neighborhood_k, std::size_t jobs = 1)
      : index_(index), jobs_(jobs) {
    features::check_context(ctx);
    if (!index.frozen()) throw ContractViolation("contrastive problem needs a frozen index");
    collect(words, neighborhood_k);
    auto named = extract_named(ctx);
    intern(named);
  }

  const FeatureIndex& index() const noexcept { return index_; }
  std::size_t dimension() const noexcept { return index_.size(); }
  std::size_t num_words() const noexcept { return words_.size(); }
  std::size_t num_strings() const noexcept { return strings_.size(); }

  /// |C(s)| for the word at position i and the summed neighbourhood size.
  std::pair<std::size_t, std::size_t> candidate_counts(std::size_t i) const {
    std::size_t den = 0;
    for (std::size_t b : words_[i].neighborhood) den += blocks_[b].size();
    return {blocks_[words_[i].self].size(), den};
  }

  struct Value {
    double contrastive = 0.0;
    double penalty = 0.0;
    double objective() const { return contrastive - penalty; }
  };

  /// Objective and its gradient (written to `grad`, resized to d). Per-word
  /// terms are reduced in vocabulary order, so the result is independent of
  /// the number of jobs.
  Value evaluate(std::span<const double> theta, double lambda, std::vector<double>& grad) const {
    const std::size_t d = dimension();
    if (theta.size() != d) throw ContractViolation("theta dimension mismatch");
    std::vector<std::vector<double>> scores(blocks_.size());
    std::vector<double> block_lse(blocks_.size());
    parallel_for(blocks_.size(), jobs_, [&](std::size_t b) {
      auto& s = scores[b];
      s.reserve(blocks_[b].size());
      for (const auto& fv : blocks_[b]) s.push_back(score_candidate(theta, fv));
      block_lse[b] = log_sum_exp(s);
    });

    struct WordTerm {
      double value = 0.0;
      std::vector<std::pair<FeatureId, double>> grad;
    };
    std::vector<WordTerm> terms(words_.size());
    parallel_for(words_.size(), jobs_, [&](std::size_t i) {
      const auto& w = words_[i];
      const double num = block_lse[w.self];
      std::vector<double> nb;
      nb.reserve(w.neighborhood.size());
      for (std::size_t b : w.neighborhood) nb.push_back(block_lse[b]);
      const double den = log_sum_exp(nb);
      std::vector<std::pair<FeatureId, double>> raw;
      accumulate(w.self, scores[w.self], num, 1.0, raw);
      for (std::size_t b : w.neighborhood) accumulate(b, scores[b], den, -1.0, raw);
      std::stable_sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      auto& out = terms[i].grad;
      for (const auto& e : raw) {
        if (!out.empty() && out.back().first == e.first)
          out.back().second += e.second;
        else
          out.push_back(e);
      }
      terms[i].value = num - den;
    });

    Value v;
    grad.assign(d, 0.0);
    for (const auto& t : terms) {
      v.contrastive += t.value;
      for (const auto& [id, g] : t.grad) grad[id] += g;
    }
    for (std::size_t j = 0; j < d; ++j) {
      v.penalty += lambda * theta[j] * theta[j];
      grad[j] -= 2.0 * lambda * theta[j];
    }
    return v;
  }

 private:
  struct WordEntry {
    std::size_t self = 0;
    std::vector<std::size_t> neighborhood;
  };

  void collect(const WordList& words, std::size_t k) {
    std::map<std::string, std::size_t, std::less<>> slot;
    auto block_of = [&](const std::string& s) {
      auto [it, fresh] = slot.emplace(s, strings_.size());
      if (fresh) strings_.push_back(s);
      return it->second;
    };
    for (const auto& [word, count] : words) {
      WordEntry e;
      e.self = block_of(word);
      for (const auto& s : generate_neighbors(word, k)) e.neighborhood.push_back(block_of(s));
      words_.push_back(std::move(e));
    }
  }

  std::vector<std::vector<NamedFeatures>> extract_named(const FeatureContext& ctx) const {
    std::vector<std::vector<NamedFeatures>> named(strings_.size());
    parallel_for(strings_.size(), jobs_, [&](std::size_t b) {
      const auto& s = strings_[b];
      auto cands = generate_candidates(s, *ctx.vocab, *ctx.config);
      const double max_cos = max_parent_cosine(s, cands, *ctx.embeddings);
      named[b].reserve(cands.size());
      for (const auto& c : cands) named[b].push_back(extract_named_features(s, c, ctx, max_cos));
    });
    return named;
  }

  void intern(const std::vector<std::vector<NamedFeatures>>& named) {
    blocks_.resize(named.size());
    parallel_for(named.size(), jobs_, [&](std::size_t b) {
      blocks_[b].reserve(named[b].size());
      for (const auto& nf : named[b]) blocks_[b].push_back(to_vector(nf, std::as_const(index_)));
    });
  }

  // Adds sign * P(z) * phi(z) for each candidate z of block b, where
  // P(z) = exp(score - normaliser).
  void accumulate(std::size_t b, const std::vector<double>& s, double normaliser, double sign,
                  std::vector<std::pair<FeatureId, double>>& raw) const {
    for (std::size_t z = 0; z < blocks_[b].size(); ++z) {
      const double p = std::exp(s[z] - normaliser);
      if (p == 0.0) continue;
      for (const auto& [id, v] : blocks_[b][z].entries) raw.emplace_back(id, sign * p * v);
    }
  }

  FeatureIndex index_;
  std::size_t jobs_ = 1;
  std::vector<std::string> strings_;
  std::vector<std::vector<FeatureVector>> blocks_;
  std::vector<WordEntry> words_;
};

/// Objective and gradient for a model over a vocabulary.
inline std::pair<double, std::vector<double>> ce_objective_and_gradient(const Model& model, const WordList& words,
                                                                       const EmbeddingTable& embeddings,
                                                                       std::size_t jobs = 1) {
  model.validate();
  ContrastiveProblem problem(words, model.context(embeddings), model.index, model.neighborhood_k, jobs);
  std::vector<double> grad;
  auto v = problem.evaluate(model.theta, model.lambda, grad);
  return {v.objective(), std::move(grad)};
}

struct TrainOptions {
  double lambda = 1.0;
  std::size_t neighborhood_k = 5;
  std::size_t max_iterations = 1000;
  double tolerance = 1e-5;
  double min_parent_ratio = 0.5;
  bool transformations_require_vocab = true;
  std::size_t max_suffixes = 100;
  std::size_t max_prefixes = 100;
  std::size_t min_shared_stems = 2;
  std::size_t jobs = 1;

  void validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ConfigError("lambda must be a finite value >= 0");
    if (neighborhood_k < 1) throw ConfigError("neighborhood_k must be >= 1");
    if (!(tolerance > 0.0)) throw ConfigError("tolerance must be > 0");
    if (!(min_parent_ratio > 0.0 && min_parent_ratio <= 1.0)) throw ConfigError("min_parent_ratio must lie in (0, 1]");
    if (max_suffixes < 1 || max_prefixes < 1) throw ConfigError("affix list sizes must be >= 1");
    if (jobs < 1) throw ConfigError("jobs must be >= 1");
  }
};

namespace detail {

inline Model skeleton(const WordList& vocab, const TrainOptions& opts) {
  Model m;
  m.vocab = vocab;
  m.lambda = opts.lambda;
  m.neighborhood_k = opts.neighborhood_k;
  m.config.min_parent_ratio = opts.min_parent_ratio;
  m.config.transformations_require_vocab = opts.transformations_require_vocab;
  m.config.alphabet = induce_alphabet(vocab);
  m.inventory = induce_affix_inventory(m.vocab, m.config, opts.max_suffixes, opts.max_prefixes);
  m.correlations = build_affix_correlations(m.inventory, m.vocab, m.config, opts.min_shared_stems);
  return m;
}

}  // namespace detail

/// Maximises the contrastive objective with L-BFGS from theta = 0.
inline std::pair<Model, TrainReport> train(const WordList& vocab, const EmbeddingTable& embeddings,
                                           const TrainOptions& opts = {}) {
  opts.validate();
  if (vocab.empty()) throw ConfigError("training vocabulary is empty");
  Model model = detail::skeleton(vocab, opts);
  ContrastiveProblem problem(model.vocab, model.context(embeddings), model.neighborhood_k, opts.jobs);
  model.index = problem.index();
  model.theta.assign(model.index.size(), 0.0);

  TrainReport report;
  ContrastiveProblem::Value last;
  auto negated = [&](const std::vector<double>& theta, std::vector<double>& grad) {
    last = problem.evaluate(theta, model.lambda, grad);
    const double f = -last.objective();
    if (!std::isfinite(f)) throw NumericError("objective became non-finite");
    for (double& g : grad) {
      if (!std::isfinite(g)) throw NumericError("gradient became non-finite");
      g = -g;
    }
    return f;
  };

  lbfgs::Options lopts;
  lopts.max_iterations = opts.max_iterations;
  lopts.gradient_tolerance = opts.tolerance;
  if (opts.max_iterations == 0) {
    std::vector<double> grad;
    last = problem.evaluate(model.theta, model.lambda, grad);
    double gn = 0.0;
    for (double g : grad) gn = std::max(gn, std::abs(g));
    report.final_objective = last.objective();
    report.contrastive_term = last.contrastive;
    report.penalty = last.penalty;
    report.gradient_norm = gn;
    report.evaluations = 1;
    return {std::move(model), report};
  }
  auto result = lbfgs::minimize(negated, model.theta, lopts);
  std::vector<double> grad;
  auto final_value = problem.evaluate(model.theta, model.lambda, grad);
  report.iterations = result.iterations;
  report.evaluations = result.evaluations;
  report.final_objective = final_value.objective();
  report.contrastive_term = final_value.contrastive;
  report.penalty = final_value.penalty;
  report.gradient_norm = result.gradient_inf_norm;
  report.converged = result.status == lbfgs::Status::Converged;
  return {std::move(model), report};
}

}  // namespace morphochain

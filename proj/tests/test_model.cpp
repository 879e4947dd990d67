#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "morphochain/model.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace morphochain;

namespace {

Model untrained(const WordList& vocab, const EmbeddingTable& emb, double lambda = 0.0) {
  TrainOptions opts;
  opts.lambda = lambda;
  Model m = detail::skeleton(vocab, opts);
  ContrastiveProblem problem(m.vocab, m.context(emb), m.neighborhood_k);
  m.index = problem.index();
  m.theta.assign(m.index.size(), 0.0);
  return m;
}

std::vector<double> random_theta(std::size_t d, unsigned seed, double scale) {
  std::mt19937 rng(seed);
  std::vector<double> t(d);
  for (auto& v : t) v = scale * (static_cast<double>(rng() % 2001) / 1000.0 - 1.0);
  return t;
}

}  // namespace

TEST(Score, DotProduct) {
  std::vector<double> theta{0.0, 0.0, 0.0};
  FeatureVector fv{{{0, 1.0}, {2, 0.5}}};
  EXPECT_EQ(score_candidate(theta, fv), 0.0);
  EXPECT_EQ(score_candidate(theta, FeatureVector{}), 0.0);
  theta[2] = 1.0;
  EXPECT_EQ(score_candidate(theta, FeatureVector{{{2, 1.0}}}), 1.0);
  EXPECT_THROW(score_candidate(theta, FeatureVector{{{3, 1.0}}}), ContractViolation);
}

TEST(Distribution, UniformAtZeroAndSingleton) {
  auto lang = synthetic::make_language();
  auto m = untrained(synthetic::toy_corpus(lang), lang.embeddings);
  auto p = candidate_distribution(m, lang.embeddings, "walkers");
  ASSERT_GT(p.size(), 1u);
  for (double v : p) EXPECT_DOUBLE_EQ(v, 1.0 / static_cast<double>(p.size()));
  EXPECT_EQ(candidate_distribution(m, lang.embeddings, "a"), std::vector<double>{1.0});
}

TEST(Distribution, ShiftInvariantAndOverflowSafe) {
  std::vector<double> s{1.0, -3.0, 2.5, 0.0};
  auto p = distribution_from_scores(s);
  for (double c : {-1e3, 7.0, 1e3}) {
    std::vector<double> t = s;
    for (double& v : t) v += c;
    auto q = distribution_from_scores(t);
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(p[i], q[i], 1e-12);
  }
  EXPECT_NEAR(log_sum_exp(std::vector<double>{1000.0, 1000.0}), 1000.0 + std::log(2.0), 1e-9);
}

TEST(Objective, ZeroWeightsMatchOracleCounts) {
  auto lang = synthetic::make_language();
  auto toy = synthetic::toy_corpus(lang);
  auto m = untrained(toy, lang.embeddings);
  auto [value, grad] = ce_objective_and_gradient(m, toy, lang.embeddings);
  EXPECT_NEAR(value, oracle::zero_weight_objective(toy, 5), 1e-9);
}

TEST(Objective, NonPositiveWithoutPenalty) {
  auto lang = synthetic::make_language();
  auto toy = synthetic::toy_corpus(lang);
  auto m = untrained(toy, lang.embeddings);
  for (unsigned seed : {1u, 2u, 3u}) {
    m.theta = random_theta(m.theta.size(), seed, 2.0);
    EXPECT_LE(ce_objective_and_gradient(m, toy, lang.embeddings).first, 0.0);
  }
}

TEST(Objective, GradientMatchesFiniteDifferences) {
  auto lang = synthetic::make_language();
  auto toy = synthetic::toy_corpus(lang);
  auto m = untrained(toy, lang.embeddings, 0.5);
  ASSERT_GE(m.index.size(), 40u);
  ContrastiveProblem problem(m.vocab, m.context(lang.embeddings), m.index, m.neighborhood_k);
  auto theta = random_theta(m.theta.size(), 9, 0.3);
  std::vector<double> grad;
  problem.evaluate(theta, m.lambda, grad);
  auto fd = oracle::finite_difference(
      [&](const std::vector<double>& t) {
        std::vector<double> g;
        return problem.evaluate(t, m.lambda, g).objective();
      },
      theta, 1e-5);
  for (std::size_t i = 0; i < grad.size(); ++i) {
    const double denom = std::max({std::abs(grad[i]), std::abs(fd[i]), 1e-3});
    EXPECT_LT(std::abs(grad[i] - fd[i]) / denom, 1e-4) << m.index.name(static_cast<FeatureId>(i));
  }
}

TEST(Objective, InvariantToFeaturePermutation) {
  auto lang = synthetic::make_language();
  auto toy = synthetic::toy_corpus(lang);
  auto m = untrained(toy, lang.embeddings, 0.3);
  m.theta = random_theta(m.theta.size(), 4, 0.5);
  const double base = ce_objective_and_gradient(m, toy, lang.embeddings).first;

  // reverse the id order
  Model r = m;
  r.index = FeatureIndex();
  const std::size_t d = m.index.size();
  for (std::size_t i = 0; i < d; ++i) r.index.add(m.index.name(static_cast<FeatureId>(d - 1 - i)));
  r.index.freeze();
  for (std::size_t i = 0; i < d; ++i) r.theta[i] = m.theta[d - 1 - i];
  EXPECT_NEAR(ce_objective_and_gradient(r, toy, lang.embeddings).first, base, 1e-9);
}

TEST(Objective, JobsDoNotChangeResult) {
  auto lang = synthetic::make_language();
  auto toy = synthetic::toy_corpus(lang);
  auto m = untrained(toy, lang.embeddings, 0.3);
  m.theta = random_theta(m.theta.size(), 8, 0.5);
  auto one = ce_objective_and_gradient(m, toy, lang.embeddings, 1);
  auto four = ce_objective_and_gradient(m, toy, lang.embeddings, 4);
  EXPECT_EQ(one.first, four.first);
  EXPECT_EQ(one.second, four.second);
}

TEST(Train, ZeroIterationsKeepsZeroWeights) {
  auto lang = synthetic::make_language();
  TrainOptions opts;
  opts.max_iterations = 0;
  auto [m, report] = train(synthetic::toy_corpus(lang), lang.embeddings, opts);
  EXPECT_FALSE(report.converged);
  EXPECT_EQ(report.iterations, 0u);
  EXPECT_TRUE(std::all_of(m.theta.begin(), m.theta.end(), [](double v) { return v == 0.0; }));
}

TEST(Train, ConvergesDeterministically) {
  auto lang = synthetic::make_language();
  auto [a, ra] = train(lang.words, lang.embeddings, {});
  auto [b, rb] = train(lang.words, lang.embeddings, {});
  EXPECT_TRUE(ra.converged);
  EXPECT_LE(ra.iterations, 500u);
  EXPECT_LE(ra.gradient_norm, 1e-5);
  EXPECT_EQ(a.theta, b.theta);
  EXPECT_EQ(a.index, b.index);
  EXPECT_NEAR(ra.final_objective, ra.contrastive_term - ra.penalty, 1e-9);
}

TEST(Train, RejectsBadOptions) {
  auto lang = synthetic::make_language();
  TrainOptions opts;
  opts.lambda = -1.0;
  EXPECT_THROW(train(lang.words, lang.embeddings, opts), ConfigError);
  EXPECT_THROW(train(WordList{}, lang.embeddings, {}), ConfigError);
}

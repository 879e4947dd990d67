#include <gtest/gtest.h>

#include <random>

#include "morphochain/inference.hpp"
#include "synthetic.hpp"

using namespace morphochain;

namespace {

Model zero_model(const WordList& vocab, const EmbeddingTable& emb) {
  Model m = detail::skeleton(vocab, {});
  m.index = build_feature_index(m.vocab, m.context(emb), m.neighborhood_k);
  m.theta.assign(m.index.size(), 0.0);
  return m;
}

void set_weight(Model& m, const std::string& name, double v) {
  auto id = m.index.lookup(name);
  ASSERT_TRUE(id) << name;
  m.theta[*id] = v;
}

Chain chain(std::initializer_list<std::pair<const char*, CandidateType>> steps) {
  Chain c;
  for (auto [w, t] : steps) c.steps.push_back({w, t});
  return c;
}

const Model& trained_synthetic(const synthetic::Language& lang) {
  static const Model m = train(lang.words, lang.embeddings, {}).first;
  return m;
}

}  // namespace

TEST(PredictParent, SingleCharacterIsStop) {
  auto lang = synthetic::make_language();
  auto m = zero_model(synthetic::toy_corpus(lang), lang.embeddings);
  EXPECT_EQ(predict_parent(m, lang.embeddings, "a"), Candidate::stop());
}

TEST(PredictParent, ZeroWeightsPreferStop) {
  auto lang = synthetic::make_language();
  auto m = zero_model(synthetic::toy_corpus(lang), lang.embeddings);
  for (const char* w : {"walkers", "planning", "baked"}) {
    EXPECT_GE(generate_candidates(w, m.vocab, m.config).size(), 2u);
    EXPECT_EQ(predict_parent(m, lang.embeddings, w), Candidate::stop()) << w;
  }
}

TEST(PredictParent, TrainedSyntheticModel) {
  auto lang = synthetic::make_language();
  const auto& m = trained_synthetic(lang);
  auto c = predict_parent(m, lang.embeddings, "walks");
  EXPECT_EQ(c.parent, "walk");
  EXPECT_EQ(c.type, CandidateType::Suffix);
  auto r = predict_parent(m, lang.embeddings, "planning");
  EXPECT_EQ(r.parent, "plan");
  EXPECT_EQ(r.type, CandidateType::Repeat);
}

TEST(PredictChain, HandWeightedModel) {
  WordList vocab;
  vocab.insert("play", 100);
  vocab.insert("playful", 50);
  vocab.insert("playfully", 10);
  EmbeddingTable emb(2);
  auto m = zero_model(vocab, emb);
  set_weight(m, "wordfreq", 1.0);
  set_weight(m, "oov", -5.0);
  set_weight(m, "suffix=ly", 2.0);
  auto c = predict_chain(m, emb, "playfully");
  EXPECT_EQ(c, chain({{"play", CandidateType::Stop}, {"playful", CandidateType::Suffix},
                      {"playfully", CandidateType::Suffix}}));
  auto seg = chain_to_segmentation(c);
  EXPECT_EQ(seg.boundaries, (std::vector<std::size_t>{4, 7}));
  EXPECT_EQ(format_segments(seg), "play ful ly");
  EXPECT_EQ(format_chain(c), "play:Stop playful:Suffix playfully:Suffix");
  EXPECT_EQ(predict_chain(m, emb, "play").steps.size(), 1u);
}

TEST(ChainToSegmentation, TransformationBoundaries) {
  auto rep = chain_to_segmentation(chain({{"plan", CandidateType::Stop}, {"planning", CandidateType::Repeat}}));
  EXPECT_EQ(rep.segments(), (std::vector<std::string>{"plann", "ing"}));
  auto del = chain_to_segmentation(chain({{"decide", CandidateType::Stop}, {"deciding", CandidateType::Delete}}));
  EXPECT_EQ(del.segments(), (std::vector<std::string>{"decid", "ing"}));
  auto mod = chain_to_segmentation(chain({{"carry", CandidateType::Stop}, {"carried", CandidateType::Modify}}));
  EXPECT_EQ(mod.segments(), (std::vector<std::string>{"carri", "ed"}));
}

TEST(ChainToSegmentation, PrefixShiftsEarlierBoundaries) {
  auto seg = chain_to_segmentation(chain({{"play", CandidateType::Stop},
                                          {"plays", CandidateType::Suffix},
                                          {"replays", CandidateType::Prefix}}));
  EXPECT_EQ(seg.segments(), (std::vector<std::string>{"re", "play", "s"}));
}

TEST(ChainToSegmentation, RejectsInconsistentChains) {
  EXPECT_THROW(chain_to_segmentation(chain({{"walk", CandidateType::Stop}, {"plays", CandidateType::Suffix}})),
               ContractViolation);
  EXPECT_THROW(chain_to_segmentation(chain({{"plays", CandidateType::Suffix}})), ContractViolation);
  EXPECT_THROW(chain_to_segmentation(Chain{}), ContractViolation);
}

TEST(PredictChain, FuzzedWordsTerminateWithValidSegmentations) {
  auto lang = synthetic::make_language();
  const auto& m = trained_synthetic(lang);
  std::mt19937 rng(17);
  const std::string letters = "abdegiklnoprstwy";
  for (int i = 0; i < 2000; ++i) {
    std::string w;
    for (std::size_t j = 0, n = 1 + rng() % 20; j < n; ++j) w += letters[rng() % letters.size()];
    auto c = predict_chain(m, lang.embeddings, w);
    ASSERT_EQ(c.word(), w);
    EXPECT_LE(c.steps.size(), w.size());
    for (std::size_t s = 1; s < c.steps.size(); ++s) EXPECT_LT(c.steps[s - 1].word.size(), c.steps[s].word.size());
    auto seg = chain_to_segmentation(c);
    std::string joined;
    for (const auto& part : seg.segments()) {
      EXPECT_FALSE(part.empty());
      joined += part;
    }
    EXPECT_EQ(joined, w);
    EXPECT_EQ(predict_chain(m, lang.embeddings, w), c);
  }
}

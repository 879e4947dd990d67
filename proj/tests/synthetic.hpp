#pragma once

// A small generated language with known morphology.
//
// 30 bases in three classes take 6 suffixes:
//   e-final bases      +s, +ed with the final e deleted      (bake -> baked)
//   doubling bases     +s, +ing with the last letter doubled, +ed, +er
//   plain bases        +s, +ing, +ed, +er, +er+s, +ly, +ness
// Counts follow a Zipf law over a fixed pseudo-random ranking. Each word's
// vector is its family axis plus a private axis at half weight, so relatives
// have cosine 0.8 and non-relatives 0.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "morphochain/corpus.hpp"
#include "morphochain/embeddings.hpp"

namespace synthetic {

struct Language {
  morphochain::WordList words;
  morphochain::GoldSegmentations gold;
  morphochain::EmbeddingTable embeddings;
  std::map<std::string, std::string> family;  // word -> base
  std::vector<std::string> suffixes{"s", "ing", "ed", "er", "ly", "ness"};
};

inline const std::vector<std::string>& e_final_bases() {
  static const std::vector<std::string> v{"bake", "dine", "glide", "smile", "trade",
                                          "shape", "store", "vote", "prime", "quote"};
  return v;
}

inline const std::vector<std::string>& doubling_bases() {
  static const std::vector<std::string> v{"plan", "stop", "grab", "drum", "skip", "chat", "trim", "blot", "scan", "knit"};
  return v;
}

inline const std::vector<std::string>& plain_bases() {
  static const std::vector<std::string> v{"walk", "play", "jump", "climb", "paint",
                                          "think", "hold", "mark", "frost", "swirl"};
  return v;
}

/// (word, morphs) for every form of every base, families in a fixed order.
inline std::vector<std::pair<std::string, std::vector<std::string>>> forms(const std::string& base, int cls) {
  std::vector<std::pair<std::string, std::vector<std::string>>> out{{base, {base}}, {base + "s", {base, "s"}}};
  const std::string stem = base.substr(0, base.size() - 1);
  if (cls == 0) {
    out.push_back({stem + "ed", {stem, "ed"}});
    return out;
  }
  if (cls == 1) {
    out.push_back({base + base.back() + "ing", {base + base.back(), "ing"}});
  } else {
    out.push_back({base + "ing", {base, "ing"}});
  }
  out.push_back({base + "ed", {base, "ed"}});
  out.push_back({base + "er", {base, "er"}});
  if (cls == 2) {
    out.push_back({base + "ers", {base, "er", "s"}});
    out.push_back({base + "ly", {base, "ly"}});
    out.push_back({base + "ness", {base, "ness"}});
  }
  return out;
}

inline Language make_language() {
  Language lang;
  std::vector<std::pair<std::string, std::vector<std::string>>> all;
  int family_index = 0;
  std::map<std::string, int> family_axis;
  for (int cls = 0; cls < 3; ++cls) {
    const auto& list = cls == 0 ? e_final_bases() : cls == 1 ? doubling_bases() : plain_bases();
    for (std::size_t b = 0; b < list.size(); ++b) {
      for (auto& f : forms(list[b], cls)) {
        lang.family[f.first] = list[b];
        if (b % 3 == 0) lang.gold.entries[f.first].push_back(f.second);
        all.push_back(std::move(f));
      }
      family_axis[list[b]] = family_index++;
    }
  }

  // Fisher-Yates with the raw engine output keeps the ranking identical on
  // every standard library.
  std::mt19937 rng(20150601u);
  std::vector<std::size_t> order(all.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[rng() % (i + 1)]);
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const auto count = static_cast<std::int64_t>(std::max(1.0, 300.0 / static_cast<double>(rank + 1)));
    lang.words.insert(all[order[rank]].first, count);
  }

  const std::size_t dim = static_cast<std::size_t>(family_index) + all.size();
  lang.embeddings = morphochain::EmbeddingTable(dim);
  for (std::size_t i = 0; i < all.size(); ++i) {
    std::vector<double> v(dim, 0.0);
    v[static_cast<std::size_t>(family_axis[lang.family[all[i].first]])] = 1.0;
    v[static_cast<std::size_t>(family_index) + i] = 0.5;
    lang.embeddings.add(all[i].first, std::move(v));
  }
  return lang;
}

/// 30 words from a handful of families, enough to exercise Suffix, Repeat,
/// Delete and Modify candidates.
inline morphochain::WordList toy_corpus(const Language& lang) {
  std::vector<std::string> picked;
  for (const auto& base : {"bake", "store", "plan", "stop", "walk", "play", "hold"}) {
    int cls = 0;
    for (const auto& b : doubling_bases()) cls = b == base ? 1 : cls;
    for (const auto& b : plain_bases()) cls = b == base ? 2 : cls;
    for (const auto& f : forms(base, cls)) picked.push_back(f.first);
  }
  picked.resize(30);
  morphochain::WordList out;
  for (const auto& w : picked) out.insert(w, *lang.words.count(w));
  return out;
}

/// Writes wordlist.tsv, vectors.txt and gold.tsv into dir.
inline void write_files(const Language& lang, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream w(dir / "wordlist.tsv");
  for (const auto& [word, count] : lang.words) w << word << '\t' << count << '\n';
  std::ofstream g(dir / "gold.tsv");
  for (const auto& [word, alts] : lang.gold.entries) {
    g << word << '\t';
    for (std::size_t a = 0; a < alts.size(); ++a) {
      if (a) g << ", ";
      for (std::size_t m = 0; m < alts[a].size(); ++m) g << (m ? " " : "") << alts[a][m];
    }
    g << '\n';
  }
  std::ofstream v(dir / "vectors.txt");
  v << lang.embeddings.size() << ' ' << lang.embeddings.dimension() << '\n';
  for (const auto& [word, count] : lang.words) {
    v << word;
    for (double x : *lang.embeddings.find(word)) v << ' ' << x;
    v << '\n';
  }
}

}  // namespace synthetic

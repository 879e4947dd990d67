#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "morphochain/morphochain.hpp"

// Command-line front end. `run_command` is the whole program; tools/ only
// forwards argv and the standard streams to it.
namespace morphochain::cli {

enum ExitCode : int { kOk = 0, kDataError = 1, kUsageError = 2 };

/// Every knob a subcommand may read. Defaults mirror TrainOptions.
struct RunConfig {
  std::string wordlist, gold, embeddings, model_in, model_out, input, out, predictions, diffs, affix_profile;
  double lambda = 1.0;
  std::size_t neighborhood_k = 5;
  double min_parent_ratio = 0.5;
  std::size_t max_suffixes = 100;
  std::size_t max_prefixes = 100;
  std::size_t min_shared_stems = 2;
  std::int64_t min_freq = 1;
  std::size_t max_iter = 1000;
  double tol = 1e-5;
  bool lowercase = false;
  bool no_transform_vocab_filter = false;
  std::size_t jobs = 1;
  std::vector<std::int64_t> thresholds;
  std::string side = "suffix";
  std::string word, parent, type;

  TrainOptions train_options() const {
    TrainOptions o;
    o.lambda = lambda;
    o.neighborhood_k = neighborhood_k;
    o.min_parent_ratio = min_parent_ratio;
    o.max_suffixes = max_suffixes;
    o.max_prefixes = max_prefixes;
    o.min_shared_stems = min_shared_stems;
    o.max_iterations = max_iter;
    o.tolerance = tol;
    o.transformations_require_vocab = !no_transform_vocab_filter;
    o.jobs = jobs;
    return o;
  }

  LoadOptions load_options() const { return LoadOptions{lowercase}; }
};

namespace detail {

class UsageError : public Error {
 public:
  using Error::Error;
};

inline std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

/// Reads `key = value` lines (`#` starts a comment) into command-line tokens.
inline std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    std::string line = trim(raw);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    std::replace(key.begin(), key.end(), '_', '-');
    if (key.empty()) throw UsageError(path + ":" + std::to_string(lineno) + ": empty key");
    out.emplace_back(key, value);
  }
  return out;
}

inline bool truthy(const std::string& v) { return v == "1" || v == "true" || v == "yes" || v == "on"; }

/// Output sink: `--out` file when given, otherwise the provided stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw DataError("cannot write '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

inline void echo_config(std::ostream& err, const std::string& cmd, const RunConfig& c) {
  err << "# effective configuration (" << cmd << ")\n";
  auto kv = [&](const char* k, const std::string& v) {
    if (!v.empty()) err << "#   " << k << " = " << v << '\n';
  };
  kv("wordlist", c.wordlist);
  kv("gold", c.gold);
  kv("embeddings", c.embeddings);
  kv("model", c.model_in);
  kv("model-out", c.model_out);
  kv("lambda", format_real(c.lambda));
  kv("neighborhood-k", std::to_string(c.neighborhood_k));
  kv("min-parent-ratio", format_real(c.min_parent_ratio));
  kv("max-suffixes", std::to_string(c.max_suffixes));
  kv("max-prefixes", std::to_string(c.max_prefixes));
  kv("min-shared-stems", std::to_string(c.min_shared_stems));
  kv("min-freq", std::to_string(c.min_freq));
  kv("max-iter", std::to_string(c.max_iter));
  kv("tol", format_real(c.tol));
  kv("lowercase", c.lowercase ? "true" : "false");
  kv("transformations-require-vocab", c.no_transform_vocab_filter ? "false" : "true");
  kv("jobs", std::to_string(c.jobs));
}

inline std::vector<std::string> read_words(std::istream& in) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t");
    std::string w = line.substr(b, e - b + 1);
    if (auto tab = w.find('\t'); tab != std::string::npos) w.erase(tab);
    words.push_back(std::move(w));
  }
  return words;
}

struct Loaded {
  Model model;
  EmbeddingTable embeddings;
};

inline Loaded load_model_and_embeddings(const RunConfig& c, std::ostream& err) {
  Loaded l{load_model(c.model_in), {}};
  std::string path = c.embeddings.empty() ? l.model.embeddings_path : c.embeddings;
  if (path.empty()) throw UsageError("no embeddings path given and none recorded in the model");
  l.embeddings = load_vectors(path, c.load_options());
  err << "# loaded model with " << l.model.index.size() << " features, " << l.model.vocab.size()
      << " vocabulary words; embeddings " << path << " (" << l.embeddings.size() << " x "
      << l.embeddings.dimension() << ")\n";
  return l;
}

inline WordList training_vocabulary(const RunConfig& c, std::ostream& err) {
  WordList train = load_wordlist(c.wordlist, c.load_options());
  GoldSegmentations gold;
  if (!c.gold.empty()) gold = load_gold(c.gold, c.load_options());
  WordList vocab = prepare_training_vocabulary(train, gold, c.min_freq);
  err << "# training vocabulary: " << vocab.size() << " words (" << train.size() << " in wordlist, " << gold.size()
      << " gold)\n";
  return vocab;
}

inline void write_report(std::ostream& err, const TrainReport& r) {
  err << "# iterations = " << r.iterations << ", evaluations = " << r.evaluations
      << ", objective = " << format_real(r.final_objective) << " (contrastive " << format_real(r.contrastive_term)
      << ", penalty " << format_real(r.penalty) << "), |grad|_inf = " << format_real(r.gradient_norm)
      << ", converged = " << (r.converged ? "true" : "false") << '\n';
}

inline void write_affix_profile(const std::string& path,
                                const std::map<std::string, std::pair<Segmentation, Chain>, std::less<>>& preds) {
  if (path.empty()) return;
  Sink sink(path, std::cout);
  for (const auto& [a, n] : affix_frequency_profile(preds)) sink.get() << a << '\t' << n << '\n';
}

// ---- subcommands ----------------------------------------------------------

inline int cmd_train(const RunConfig& c, std::ostream& out, std::ostream& err) {
  WordList vocab = training_vocabulary(c, err);
  EmbeddingTable emb = load_vectors(c.embeddings, c.load_options());
  auto [model, report] = train(vocab, emb, c.train_options());
  model.embeddings_path = std::filesystem::absolute(c.embeddings).lexically_normal().string();
  save_model(c.model_out, model);
  write_report(err, report);
  (void)out;
  return kOk;
}

inline int cmd_segment(const RunConfig& c, std::istream& in, std::ostream& out, std::ostream& err, bool chains) {
  auto l = load_model_and_embeddings(c, err);
  std::vector<std::string> words;
  if (c.input.empty()) {
    words = read_words(in);
  } else {
    std::ifstream f(c.input);
    if (!f) throw DataError("cannot open '" + c.input + "'");
    words = read_words(f);
  }
  std::vector<Chain> result(words.size());
  parallel_for(words.size(), c.jobs, [&](std::size_t i) { result[i] = predict_chain(l.model, l.embeddings, words[i]); });
  Sink sink(c.out, out);
  std::map<std::string, std::pair<Segmentation, Chain>, std::less<>> preds;
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto seg = chain_to_segmentation(result[i]);
    sink.get() << words[i] << '\t' << (chains ? format_chain(result[i]) : format_segments(seg)) << '\n';
    preds.emplace(words[i], std::make_pair(std::move(seg), result[i]));
  }
  write_affix_profile(c.affix_profile, preds);
  return kOk;
}

inline std::map<std::string, Segmentation, std::less<>> read_predictions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  GoldSegmentations as_gold = parse_gold(in);
  std::map<std::string, Segmentation, std::less<>> out;
  for (const auto& [w, alts] : as_gold.entries) {
    if (alts.size() != 1) throw DataError("prediction for '" + w + "' has several alternatives");
    out.emplace(w, Segmentation{w, analysis_boundaries(alts.front())});
  }
  return out;
}

inline int cmd_evaluate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  GoldSegmentations gold = load_gold(c.gold, c.load_options());
  std::map<std::string, Segmentation, std::less<>> segs;
  if (!c.predictions.empty()) {
    segs = read_predictions(c.predictions);
  } else {
    if (c.model_in.empty()) throw UsageError("evaluate needs --model or --predictions");
    auto l = load_model_and_embeddings(c, err);
    auto preds = predict_all(l.model, l.embeddings, gold_words(gold), c.jobs);
    for (const auto& [w, pc] : preds) segs.emplace(w, pc.first);
    write_affix_profile(c.affix_profile, preds);
  }
  BoundaryScore s = evaluate_boundaries(segs, gold);
  Sink sink(c.out, out);
  sink.get() << "P\tR\tF1\ttp\tpredicted\tgold\n"
             << fixed(s.precision) << '\t' << fixed(s.recall) << '\t' << fixed(s.f1) << '\t' << s.true_positives
             << '\t' << s.predicted_positives << '\t' << s.gold_positives << '\n';
  if (!c.diffs.empty()) {
    Sink diffs(c.diffs, out);
    for (const auto& [w, alts] : gold.entries) {
      const auto& pred = segs.at(w);
      const auto& best = alts[best_alternative(pred.boundaries, alts)];
      if (pred.boundaries == analysis_boundaries(best)) continue;
      std::string g;
      for (const auto& m : best) g += (g.empty() ? "" : " ") + m;
      diffs.get() << w << '\t' << format_segments(pred) << '\t' << g << '\n';
    }
  }
  return kOk;
}

inline int cmd_induce_affixes(const RunConfig& c, std::ostream& out, std::ostream& err) {
  WordList vocab = training_vocabulary(c, err);
  CandidateConfig cfg;
  cfg.min_parent_ratio = c.min_parent_ratio;
  auto inv = induce_affix_inventory(vocab, cfg, c.max_suffixes, c.max_prefixes);
  Sink sink(c.out, out);
  if (c.side == "suffix" || c.side == "both")
    for (const auto& [a, n] : inv.suffixes) sink.get() << (c.side == "both" ? "-" + a : a) << '\t' << n << '\n';
  if (c.side == "prefix" || c.side == "both")
    for (const auto& [a, n] : inv.prefixes) sink.get() << (c.side == "both" ? a + "-" : a) << '\t' << n << '\n';
  return kOk;
}

inline int cmd_dump_features(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto type = parse_candidate_type(c.type);
  if (!type) throw UsageError("unknown candidate type '" + c.type + "'");
  auto cand = derive_candidate(c.word, c.parent, *type);
  if (!cand)
    throw DataError("(" + c.parent + ", " + c.type + ") is not a candidate derivable from '" + c.word + "'");
  Model model;
  EmbeddingTable emb;
  if (!c.model_in.empty()) {
    auto l = load_model_and_embeddings(c, err);
    model = std::move(l.model);
    emb = std::move(l.embeddings);
  } else {
    if (c.wordlist.empty() || c.embeddings.empty())
      throw UsageError("dump-features needs --model or both --wordlist and --embeddings");
    emb = load_vectors(c.embeddings, c.load_options());
    model = morphochain::detail::skeleton(training_vocabulary(c, err), c.train_options());
  }
  NamedFeatures named = extract_named_features(c.word, *cand, model.context(emb));
  Sink sink(c.out, out);
  for (const auto& [name, value] : named) {
    sink.get() << name << '\t' << format_real(value);
    if (!model.theta.empty()) {
      auto id = model.index.lookup(name);
      sink.get() << '\t' << (id ? format_real(model.theta[*id]) : std::string("unindexed"));
    }
    sink.get() << '\n';
  }
  return kOk;
}

inline int cmd_diagnose(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto l = load_model_and_embeddings(c, err);
  WordList words = c.wordlist.empty() ? l.model.vocab : load_wordlist(c.wordlist, c.load_options());
  Diagnostics d = distribution_diagnostics(l.model, l.embeddings, words, c.jobs);
  Sink sink(c.out, out);
  sink.get() << "avg_max_prob\tavg_entropy\tavg_candidates\n"
             << fixed(d.avg_max_prob) << '\t' << fixed(d.avg_entropy) << '\t' << fixed(d.avg_candidates) << '\n';
  return kOk;
}

inline int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
  WordList train_words = load_wordlist(c.wordlist, c.load_options());
  GoldSegmentations gold = load_gold(c.gold, c.load_options());
  EmbeddingTable emb = load_vectors(c.embeddings, c.load_options());
  auto thresholds = c.thresholds.empty() ? std::vector<std::int64_t>{c.min_freq} : c.thresholds;
  auto rows = sweep_frequency_threshold(train_words, gold, emb, thresholds, c.train_options());
  Sink sink(c.out, out);
  sink.get() << "threshold\tvocab_size\tprecision\trecall\tf1\n";
  for (const auto& r : rows) {
    sink.get() << r.threshold << '\t' << r.vocab_size << '\t' << fixed(r.score.precision) << '\t'
               << fixed(r.score.recall) << '\t' << fixed(r.score.f1) << '\n';
    err << "# threshold " << r.threshold << ": ";
    write_report(err, r.report);
  }
  return kOk;
}

}  // namespace detail

/// Runs one subcommand. Returns 0 on success, 1 on data or parse errors and
/// 2 on usage errors; diagnostics go to `err`.
inline int run_command(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  using namespace detail;
  RunConfig c;
  CLI::App app{"Unsupervised morphological segmentation with morphological chains", "morphochain"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  std::string config_path;

  auto common = [&](CLI::App* s) {
    s->add_option("--config", config_path, "key = value file; command-line flags take precedence");
    s->add_option("--jobs", c.jobs, "worker threads for per-word work")->check(CLI::PositiveNumber);
    s->add_flag("--lowercase", c.lowercase, "lowercase every input word");
    s->add_option("--out", c.out, "write primary output here instead of stdout");
  };
  auto vocab_opts = [&](CLI::App* s, bool wordlist_required) {
    auto* o = s->add_option("--wordlist", c.wordlist, "word<TAB>count training list");
    if (wordlist_required) o->required();
    s->add_option("--gold", c.gold, "gold segmentations; their words join the training vocabulary");
    s->add_option("--min-freq", c.min_freq, "drop training words rarer than this (gold words are kept)")
        ->check(CLI::PositiveNumber);
  };
  auto model_opts = [&](CLI::App* s) {
    s->add_option("--lambda", c.lambda, "L2 penalty weight")->check(CLI::NonNegativeNumber);
    s->add_option("--neighborhood-k", c.neighborhood_k, "transpositions stay within the first/last k characters")
        ->check(CLI::PositiveNumber);
    s->add_option("--min-parent-ratio", c.min_parent_ratio, "parents must keep at least this fraction of the word")
        ->check(CLI::Range(1e-9, 1.0));
    s->add_option("--max-suffixes", c.max_suffixes, "size of the induced suffix list")->check(CLI::PositiveNumber);
    s->add_option("--max-prefixes", c.max_prefixes, "size of the induced prefix list")->check(CLI::PositiveNumber);
    s->add_option("--min-shared-stems", c.min_shared_stems, "stems two affixes must share to be correlated")
        ->check(CLI::PositiveNumber);
    s->add_option("--max-iter", c.max_iter, "optimizer iteration cap")->check(CLI::NonNegativeNumber);
    s->add_option("--tol", c.tol, "stop once the gradient infinity norm is below this")->check(CLI::PositiveNumber);
    s->add_flag("--no-transform-vocab-filter", c.no_transform_vocab_filter,
                "keep Repeat parents that are not vocabulary words");
  };
  auto model_in = [&](CLI::App* s, bool required) {
    auto* o = s->add_option("--model", c.model_in, "trained model file");
    if (required) o->required();
    s->add_option("--embeddings", c.embeddings, "word2vec text vectors (default: path recorded in the model)");
  };

  auto* train_cmd = app.add_subcommand("train", "fit the model and write it to --model-out");
  common(train_cmd);
  vocab_opts(train_cmd, true);
  model_opts(train_cmd);
  train_cmd->add_option("--embeddings", c.embeddings, "word2vec text vectors")->required();
  train_cmd->add_option("--model-out", c.model_out, "output model file")->required();

  auto* segment_cmd = app.add_subcommand("segment", "segment words (one per line) into morphs");
  common(segment_cmd);
  model_in(segment_cmd, true);
  segment_cmd->add_option("--input", c.input, "word file (default: stdin)");
  segment_cmd->add_option("--affix-profile", c.affix_profile, "also write affix<TAB>count for predicted edges");

  auto* chains_cmd = app.add_subcommand("chains", "print the predicted chain for each word");
  common(chains_cmd);
  model_in(chains_cmd, true);
  chains_cmd->add_option("--input", c.input, "word file (default: stdin)");
  chains_cmd->add_option("--affix-profile", c.affix_profile, "also write affix<TAB>count for predicted edges");

  auto* eval_cmd = app.add_subcommand("evaluate", "boundary precision/recall/F1 against gold segmentations");
  common(eval_cmd);
  model_in(eval_cmd, false);
  eval_cmd->add_option("--gold", c.gold, "gold segmentations")->required();
  eval_cmd->add_option("--predictions", c.predictions, "word<TAB>segments file to score instead of a model");
  eval_cmd->add_option("--diffs", c.diffs, "write word<TAB>predicted<TAB>gold for every mismatch");
  eval_cmd->add_option("--affix-profile", c.affix_profile, "write affix<TAB>count for predicted edges");

  auto* affix_cmd = app.add_subcommand("induce-affixes", "print the induced affix inventory");
  common(affix_cmd);
  vocab_opts(affix_cmd, true);
  affix_cmd->add_option("--min-parent-ratio", c.min_parent_ratio, "parents must keep this fraction of the word")
      ->check(CLI::Range(1e-9, 1.0));
  affix_cmd->add_option("--max-suffixes", c.max_suffixes, "size of the suffix list")->check(CLI::PositiveNumber);
  affix_cmd->add_option("--max-prefixes", c.max_prefixes, "size of the prefix list")->check(CLI::PositiveNumber);
  affix_cmd->add_option("--side", c.side, "suffix, prefix or both")
      ->check(CLI::IsMember({"suffix", "prefix", "both"}));

  auto* dump_cmd = app.add_subcommand("dump-features", "print the feature vector of one (word, parent, type)");
  common(dump_cmd);
  model_in(dump_cmd, false);
  vocab_opts(dump_cmd, false);
  model_opts(dump_cmd);
  dump_cmd->add_option("--word", c.word, "child word")->required();
  dump_cmd->add_option("--parent", c.parent, "parent word (omit for Stop)");
  dump_cmd->add_option("--type", c.type, "Suffix, Prefix, Repeat, Delete, Modify or Stop")->required();

  auto* diag_cmd = app.add_subcommand("diagnose", "average max probability, entropy and candidate count");
  common(diag_cmd);
  model_in(diag_cmd, true);
  diag_cmd->add_option("--wordlist", c.wordlist, "words to diagnose (default: the model vocabulary)");

  auto* sweep_cmd = app.add_subcommand("sweep", "retrain and evaluate at several frequency thresholds");
  common(sweep_cmd);
  model_opts(sweep_cmd);
  sweep_cmd->add_option("--wordlist", c.wordlist, "word<TAB>count training list")->required();
  sweep_cmd->add_option("--gold", c.gold, "gold segmentations")->required();
  sweep_cmd->add_option("--embeddings", c.embeddings, "word2vec text vectors")->required();
  sweep_cmd->add_option("--thresholds", c.thresholds, "comma-separated minimum frequencies")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  try {
    // Config values become tokens placed before the user's flags, so the
    // flags win under the take-last policy.
    if (!args.empty()) {
      for (std::size_t i = 1; i < args.size(); ++i) {
        std::string path;
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
        if (path.empty()) continue;
        CLI::App* sub = nullptr;
        try {
          sub = app.get_subcommand(args[0]);
        } catch (const CLI::OptionNotFound&) {
        }
        if (!sub) break;
        std::vector<std::string> injected;
        for (const auto& [key, value] : read_config_file(path)) {
          const CLI::Option* opt = sub->get_option_no_throw("--" + key);
          if (key == "transformations-require-vocab") {
            if (sub->get_option_no_throw("--no-transform-vocab-filter") && !truthy(value))
              injected.push_back("--no-transform-vocab-filter");
            continue;
          }
          if (!opt) {
            bool known = false;
            for (const auto* other : app.get_subcommands({}))
              known = known || other->get_option_no_throw("--" + key) != nullptr;
            if (!known) throw UsageError("unknown configuration key '" + key + "' in " + path);
            continue;
          }
          if (opt->get_expected_min() == 0) {
            if (truthy(value)) injected.push_back("--" + key);
          } else {
            injected.push_back("--" + key);
            injected.push_back(value);
          }
        }
        args.insert(args.begin() + 1, injected.begin(), injected.end());
        break;
      }
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  if (sub->get_help_ptr() && sub->get_help_ptr()->count()) {
    out << sub->help();
    return kOk;
  }
  echo_config(err, name, c);
  try {
    if (name == "train") return cmd_train(c, out, err);
    if (name == "segment") return cmd_segment(c, in, out, err, false);
    if (name == "chains") return cmd_segment(c, in, out, err, true);
    if (name == "evaluate") return cmd_evaluate(c, out, err);
    if (name == "induce-affixes") return cmd_induce_affixes(c, out, err);
    if (name == "dump-features") return cmd_dump_features(c, out, err);
    if (name == "diagnose") return cmd_diagnose(c, out, err);
    if (name == "sweep") return cmd_sweep(c, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  err << "error: unknown subcommand '" << name << "'\n";
  return kUsageError;
}

inline int run_command(int argc, char** argv, std::istream& in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_command(std::move(args), in, out, err);
}

}  // namespace morphochain::cli

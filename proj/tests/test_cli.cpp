#include <gtest/gtest.h>

#include <sstream>

#include "helpers.hpp"
#include "morphochain/cli.hpp"
#include "synthetic.hpp"

using namespace morphochain;
using testing_support::slurp;
using testing_support::TempDir;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cli::run_command(std::move(args), in, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new TempDir("cli");
    synthetic::write_files(synthetic::make_language(), dir_->path());
    auto r = run({"train", "--wordlist", path("wordlist.tsv"), "--embeddings", path("vectors.txt"), "--gold",
                  path("gold.tsv"), "--model-out", path("m.model")});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  static void TearDownTestSuite() { delete dir_; }
  static std::string path(const std::string& name) { return (dir_->path() / name).string(); }

  static TempDir* dir_;
};

TempDir* Cli::dir_ = nullptr;

}  // namespace

TEST_F(Cli, TrainWritesModelAndEchoesConfig) {
  auto r = run({"train", "--wordlist", path("wordlist.tsv"), "--embeddings", path("vectors.txt"), "--model-out",
                path("again.model")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("lambda = 1"), std::string::npos);
  EXPECT_NE(r.err.find("converged = true"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST_F(Cli, SegmentReadsStdin) {
  auto r = run({"segment", "--model", path("m.model")}, "walks\nplanning\n\nbake\n");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "walks\twalk s\nplanning\tplann ing\nbake\tbake\n");
  auto c = run({"chains", "--model", path("m.model")}, "walks\n");
  EXPECT_EQ(c.out, "walks\twalk:Stop walks:Suffix\n");
}

TEST_F(Cli, SegmentToFileWithProfile) {
  auto r = run({"segment", "--model", path("m.model"), "--embeddings", path("vectors.txt"), "--out", path("seg.tsv"),
                "--affix-profile", path("profile.tsv"), "--jobs", "3"},
               "walks\nplays\nwalking\n");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(slurp(path("seg.tsv")), "walks\twalk s\nplays\tplay s\nwalking\twalk ing\n");
  EXPECT_EQ(slurp(path("profile.tsv")).substr(0, 4), "s\t3\n");
}

TEST_F(Cli, EvaluatePrintsScoresAndCounts) {
  auto r = run({"evaluate", "--model", path("m.model"), "--gold", path("gold.tsv"), "--diffs", path("diffs.tsv")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "P\tR\tF1\ttp\tpredicted\tgold");
  auto p = run({"evaluate", "--gold", path("gold.tsv"), "--predictions", path("gold.tsv")});
  EXPECT_EQ(p.code, 0) << p.err;
  EXPECT_NE(p.out.find("1.000000\t1.000000\t1.000000"), std::string::npos);
}

TEST_F(Cli, InduceAffixesAndDumpFeatures) {
  auto a = run({"induce-affixes", "--wordlist", path("wordlist.tsv"), "--max-suffixes", "3"});
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, "s\t40\ned\t20\ner\t20\n");
  auto d = run({"dump-features", "--model", path("m.model"), "--word", "walks", "--parent", "walk", "--type",
                "Suffix"});
  EXPECT_EQ(d.code, 0) << d.err;
  EXPECT_NE(d.out.find("suffix=s\t1\t"), std::string::npos);
  EXPECT_NE(d.out.find("cos\t0.7999"), std::string::npos);
  auto bad = run({"dump-features", "--model", path("m.model"), "--word", "walks", "--parent", "talk", "--type",
                  "Suffix"});
  EXPECT_EQ(bad.code, 1);
}

TEST_F(Cli, DiagnoseAndSweep) {
  auto d = run({"diagnose", "--model", path("m.model")});
  EXPECT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(d.out.substr(0, d.out.find('\n')), "avg_max_prob\tavg_entropy\tavg_candidates");
  auto s = run({"sweep", "--wordlist", path("wordlist.tsv"), "--gold", path("gold.tsv"), "--embeddings",
                path("vectors.txt"), "--thresholds", "1,5"});
  EXPECT_EQ(s.code, 0) << s.err;
  std::istringstream rows(s.out);
  std::string line;
  int n = 0;
  while (std::getline(rows, line)) ++n;
  EXPECT_EQ(n, 3);
}

TEST_F(Cli, ConfigFileComposesWithFlags) {
  TempDir tmp("cfg");
  auto cfg = tmp.write("run.conf", "# defaults\nlambda = 0.5\nmax_iter = 3\nlowercase = true\n");
  auto r = run({"train", "--config", cfg.string(), "--wordlist", path("wordlist.tsv"), "--embeddings",
                path("vectors.txt"), "--model-out", (tmp / "m.model").string(), "--lambda", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("lambda = 2\n"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("max-iter = 3\n"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("lowercase = true\n"), std::string::npos) << r.err;
  auto bad = tmp.write("bad.conf", "lambda\n");
  EXPECT_EQ(run({"train", "--config", bad.string()}).code, 2);
  auto unknown = tmp.write("unknown.conf", "lamda = 1\n");
  EXPECT_EQ(run({"induce-affixes", "--config", unknown.string(), "--wordlist", path("wordlist.tsv")}).code, 2);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({"train", "--wordlist", path("wordlist.tsv"), "--embeddings", path("vectors.txt"), "--model-out",
                 path("x.model"), "--lambda", "-1"})
                .code,
            2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"segment", "--model", path("m.model"), "--bogus"}).code, 2);
  EXPECT_EQ(run({"induce-affixes", "--wordlist", path("wordlist.tsv"), "--min-freq", "100000"}).code, 2);
  auto help = run({"train", "--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("--neighborhood-k"), std::string::npos);
}

TEST_F(Cli, DataErrors) {
  TempDir tmp("data");
  auto wl = tmp.write("w.tsv", "walk\t1\nwalks\tmany\n");
  auto r = run({"induce-affixes", "--wordlist", wl.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
  EXPECT_EQ(run({"segment", "--model", (tmp / "missing.model").string()}, "x\n").code, 1);
}

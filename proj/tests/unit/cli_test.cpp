#include "hornpre/cli.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hornpre;
namespace fs = std::filesystem;

namespace {

const std::string kData = HORNPRE_DATA_DIR;
const std::string kDocs = HORNPRE_DOCS_DIR;

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  int code = cli::run_main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string &name) {
  fs::path d = fs::temp_directory_path() / ("hornpre_cli_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

} // namespace

TEST(Cli, RunningExampleOneShot) {
  auto r = run({kData + "/fig1.chc", "--trseq", "cs,pe"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("classification: optimal"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("iterations:     1\n"), std::string::npos);
  EXPECT_NE(r.out.find("time:"), std::string::npos);
}

TEST(Cli, NonTerminationIsPrinted) {
  auto r = run({kData + "/fig5.chc"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("psi_nonterm:    (A>=0, A=<10)"), std::string::npos) << r.out;
}

TEST(Cli, InputErrors) {
  fs::path d = scratch_dir("input");
  std::ofstream(d / "empty.chc").close();
  auto r = run({(d / "empty.chc").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("empty input"), std::string::npos) << r.err;

  std::ofstream(d / "bad.chc") << "init(A).\nerror :- A<, init(A).\n";
  r = run({(d / "bad.chc").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("bad.chc:2:"), std::string::npos) << r.err;

  EXPECT_EQ(run({(d / "missing.chc").string()}).code, 1);
  EXPECT_EQ(run({kData + "/fig1.chc", "--trseq", "cs,xx"}).code, 1);
  EXPECT_EQ(run({kData + "/fig1.chc", "--format", "yaml"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, StructuredOutputMatchesGolden) {
  auto r = run({kData + "/fig1.chc", "--trseq", "cs,pe", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  auto got = nlohmann::ordered_json::parse(r.out);
  auto want = nlohmann::ordered_json::parse(slurp(kDocs + "/golden/fig1_cs_pe.json"));
  got["file"] = want["file"];
  EXPECT_EQ(got.dump(2), want.dump(2));
}

TEST(Cli, StructuredOutputIsStable) {
  std::vector<std::string> args{kData + "/double_step.chc", "--format",
                                "structured", "--check"};
  auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, StagedPhases) {
  auto r = run({kData + "/fig1.chc", "--trseq", "pe", "--trseq", "cs",
                "--format", "json"});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["iterations"], 2);
  EXPECT_EQ(j["log"][0]["steps"], nlohmann::json({"pe"}));
  EXPECT_EQ(j["log"][1]["steps"], nlohmann::json({"cs"}));
}

TEST(Cli, CheckPassesOnCorpus) {
  for (const auto &e : fs::directory_iterator(kData)) {
    auto r = run({e.path().string(), "--check"});
    EXPECT_EQ(r.code, 0) << e.path() << "\n" << r.out;
    EXPECT_NE(r.out.find("check:          ok"), std::string::npos) << e.path();
  }
}

TEST(Cli, TimeoutHonoredWithSlack) {
  auto t0 = std::chrono::steady_clock::now();
  auto r = run({kData + "/double_step.chc", "--max-iters", "1000000",
                "--dnf-cap", "1000000", "--timeout", "0.5"});
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("stop reason:    timeout"), std::string::npos);
  EXPECT_NE(r.out.find("psi_safe:"), std::string::npos);
  EXPECT_LT(secs, 1.0);
}

TEST(Cli, DnfCapAborts) {
  auto r = run({kData + "/fig1.chc", "--dnf-cap", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("stop reason:    dnf_cap"), std::string::npos) << r.out;
}

TEST(Cli, HiddenSubcommands) {
  auto r = run({"oracle", kData + "/fig1.chc", "--init", "A=1,B=0", "--depth", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "derivable c3(c2(c1(c0)))\n");
  r = run({"oracle", kData + "/fig5.chc", "--init", "A=5", "--depth", "50"});
  EXPECT_EQ(r.out, "not_within_bound\n");
  r = run({"analyze", kData + "/fig1.chc", "--qa"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("error_q"), std::string::npos) << r.out;
}

TEST(Bench, Corpus) {
  auto s = cli::run_bench(kData, {}, 2);
  ASSERT_GE(s.rows.size(), 12u);
  EXPECT_EQ(s.errors, 0u);
  for (std::size_t i = 1; i < s.rows.size(); ++i)
    EXPECT_LT(s.rows[i - 1].name, s.rows[i].name);
  for (const auto &row : s.rows)
    if (row.name == "fig1.chc") EXPECT_EQ(row.classification, Classification::Optimal);
  unsigned sum = 0;
  for (const auto &c : s.per_iter) sum += c.total();
  EXPECT_EQ(sum, s.totals.total());
  EXPECT_EQ(s.totals.total() + s.totals.trivial, s.rows.size());
}

TEST(Bench, GoldenAndEdgeCases) {
  auto r = run({"--bench", kData, "--format", "json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, slurp(kDocs + "/golden/bench_data.json"));

  fs::path empty = scratch_dir("empty");
  r = run({"--bench", empty.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("programs: 0"), std::string::npos);

  fs::path d = scratch_dir("one_bad");
  std::ofstream(d / "broken.chc") << "init(A) :- .\n";
  auto s = cli::run_bench(d, {});
  ASSERT_EQ(s.rows.size(), 1u);
  EXPECT_TRUE(s.rows[0].error);
  EXPECT_EQ(s.errors, 1u);
  r = run({"--bench", d.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("broken.chc  error:"), std::string::npos) << r.out;
}

TEST(Bench, CountsFollowTableArithmetic) {
  cli::BenchCounts c;
  cli::BenchRow opt{.separating = true};
  cli::BenchRow s_only{.safe_nontrivial = true};
  cli::BenchRow both{.safe_nontrivial = true, .unsafe_nontrivial = true};
  cli::BenchRow none{};
  for (const auto &r : {opt, s_only, both, none}) c.add(r);
  EXPECT_EQ(c.opt, 1u);
  EXPECT_EQ(c.nt_safe, 2u);
  EXPECT_EQ(c.safe_weak, 1u);
  EXPECT_EQ(c.nt_unsafe, 1u);
  EXPECT_EQ(c.unsafe_weak, 0u);
  EXPECT_EQ(c.nt_both, 1u);
  EXPECT_EQ(c.trivial, 1u);
  EXPECT_EQ(c.total(), 3u);
}

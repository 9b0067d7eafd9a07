#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "peertrust/cli/commands.hpp"
#include "peertrust/sim/report.hpp"

namespace peertrust::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "peertrust");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("peertrust_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  fs::path write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p;
  }

 private:
  fs::path path_;
};

const fs::path kBundled = fs::path(PEERTRUST_SCENARIO_DIR) / "good_vs_bad.json";

TEST(CmdScore, Defaults) {
  const auto r = run_cli({"score"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("I = 0.7894\nPositive\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("I1 response_time  0.9656"), std::string::npos) << r.out;
}

TEST(CmdScore, IrrelevantWithoutAccess) {
  const auto r = run_cli({"score", "--relevance", "not_at_all", "--reciprocity", "0/10"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("I = 0.4194\nNegative\n"), std::string::npos) << r.out;
}

TEST(CmdScore, SpelledOutDefaultsMatch) {
  const auto plain = run_cli({"score"});
  const auto spelled = run_cli({"score", "--elapsed-hours", "10", "--gap-months", "5",
                                "--age-years", "1", "--reciprocity", "9/10", "--reciprocity-min",
                                "0", "--relevance", "fully", "--response-b", "500",
                                "--response-c", "0.5", "--gap-b", "10", "--gap-c", "0.25",
                                "--familiarity-b", "10", "--familiarity-c", "2.5", "--weights",
                                "0.2,0.1,0.3,0.3,0.1", "--threshold", "0.5"});
  EXPECT_EQ(spelled.code, kExitOk);
  EXPECT_EQ(plain.out, spelled.out);
}

TEST(CmdScore, BadFlagsNameTheFlag) {
  const struct {
    std::vector<std::string> args;
    std::string flag;
  } cases[] = {
      {{"score", "--elapsed-hours", "-1"}, "--elapsed-hours"},
      {{"score", "--relevance", "maybe"}, "--relevance"},
      {{"score", "--reciprocity", "11/10"}, "--reciprocity"},
      {{"score", "--reciprocity", "nine"}, "--reciprocity"},
      {{"score", "--weights", "0.5,0.5,0.5,0,0"}, "--weights"},
      {{"score", "--threshold", "2"}, "--threshold"},
      {{"score", "--gap-b", "0"}, "--gap-b"},
  };
  for (const auto& c : cases) {
    const auto r = run_cli(c.args);
    EXPECT_EQ(r.code, kExitInput) << c.flag;
    EXPECT_NE(r.err.find(c.flag), std::string::npos) << r.err;
  }
}

TEST(CmdScore, UnknownFlagIsInputError) {
  EXPECT_EQ(run_cli({"score", "--colour", "red"}).code, kExitInput);
  EXPECT_EQ(run_cli({}).code, kExitInput);
}

TEST(CmdScore, HelpShowsDefaults) {
  const auto r = run_cli({"score", "--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("500"), std::string::npos);
  EXPECT_NE(r.out.find("9/10"), std::string::npos);
}

const char* kTableHeader = "node,weight,opinion,positive,negative,total\n";
const char* kReports =
    "reporter,subject,opinion,weight\n"
    "a,k,0.8000,1.0000\n"
    "b,k,-0.4000,0.5000\n"
    "c,k,0.6000,0.0000\n";

TEST(CmdTrust, PersonalOnlyAtGate) {
  TempDir dir;
  const auto table = dir.write("t.csv", std::string(kTableHeader) + "k,0.4000,0.4000,3,1,5\n");
  const auto reports = dir.write("r.csv", kReports);
  const auto r = run_cli({"trust", "--table", table, "--reports", reports, "--t-min", "3"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("trust     0.4000\nbasis     personal_only\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("community -\n"), std::string::npos);
}

TEST(CmdTrust, CombinedWithoutHistory) {
  TempDir dir;
  const auto table = dir.write("t.csv", std::string(kTableHeader) + "k,0.0000,0.0000,0,0,0\n");
  const auto reports = dir.write("r.csv", kReports);
  const auto r = run_cli({"trust", "--table", table, "--reports", reports, "--t-min", "10"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("community 0.2000\ntrust     0.2000\nbasis     combined\nconflict  no\n"),
            std::string::npos)
      << r.out;
}

TEST(CmdTrust, ConflictIsPrinted) {
  TempDir dir;
  const auto table = dir.write("t.csv", std::string(kTableHeader) + "k,0.5000,0.5000,1,0,2\n");
  const auto reports = dir.write("r.csv", "reporter,subject,opinion,weight\na,k,-0.5000,1.0000\n");
  const auto r = run_cli({"trust", "--table", table, "--reports", reports, "--t-min", "10"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("trust     0.0000\nbasis     combined\nconflict  yes\n"), std::string::npos)
      << r.out;
}

TEST(CmdTrust, SubjectSelectionAndTrustorFilter) {
  TempDir dir;
  const auto table = dir.write("t.csv", std::string(kTableHeader) +
                                            "k,0.0000,0.0000,0,0,0\n"
                                            "m,1.0000,1.0000,2,0,2\n");
  const auto reports = dir.write("r.csv", "reporter,subject,opinion,weight\na,k,0.8000,1.0000\n");
  EXPECT_EQ(run_cli({"trust", "--table", table, "--reports", reports, "--t-min", "5"}).code,
            kExitInput);
  const auto r = run_cli(
      {"trust", "--table", table, "--reports", reports, "--t-min", "5", "--subject", "k"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("trust     0.8000"), std::string::npos) << r.out;
  const auto filtered = run_cli({"trust", "--table", table, "--reports", reports, "--t-min", "5",
                                 "--subject", "k", "--trustor", "a"});
  EXPECT_NE(filtered.out.find("trust     0.0000"), std::string::npos) << filtered.out;
}

TEST(CmdTrust, MalformedInputs) {
  TempDir dir;
  const auto table = dir.write("t.csv", std::string(kTableHeader) + "k,0.9,0.9,3,1,5\n");
  const auto reports = dir.write("r.csv", kReports);
  EXPECT_EQ(run_cli({"trust", "--table", table, "--reports", reports, "--t-min", "3"}).code,
            kExitInput);
  EXPECT_EQ(run_cli({"trust", "--table", dir.path() / "missing.csv", "--reports", reports,
                     "--t-min", "3"})
                .code,
            kExitInput);
  const auto good = dir.write("g.csv", std::string(kTableHeader) + "k,0.4000,0.4000,3,1,5\n");
  EXPECT_EQ(run_cli({"trust", "--table", good, "--reports", reports, "--t-min", "0"}).code,
            kExitInput);
}

TEST(CmdSimulate, BundledScenarioLimits) {
  TempDir dir;
  const auto r = run_cli({"simulate", kBundled, "--out", dir.path()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("alice -> good  opinion 1.0000"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("alice -> bad  opinion -1.0000"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("alice -> silent  opinion 0.0000"), std::string::npos) << r.out;
  for (const char* f : {"trace.jsonl", "trust_matrix.csv", "summary.json", "tables/alice.csv"}) {
    EXPECT_TRUE(fs::exists(dir.path() / f)) << f;
  }
}

TEST(CmdSimulate, SameInvocationSameDigest) {
  TempDir a;
  TempDir b;
  std::vector<sim::RunReport> reports;
  SimulateOptions opts;
  opts.scenario = kBundled;
  opts.out_dir = a.path();
  std::ostringstream out;
  std::ostringstream err;
  ASSERT_EQ(cmd_simulate(opts, out, err, &reports), kExitOk);
  opts.out_dir = b.path();
  ASSERT_EQ(cmd_simulate(opts, out, err, &reports), kExitOk);
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0].digest, reports[1].digest);

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  EXPECT_EQ(slurp(a.path() / "trace.jsonl"), slurp(b.path() / "trace.jsonl"));
  EXPECT_EQ(slurp(a.path() / "trust_matrix.csv"), slurp(b.path() / "trust_matrix.csv"));
}

TEST(CmdSimulate, ReplicatesOnThreadsMatchSerialRuns) {
  TempDir par;
  TempDir ser;
  std::vector<sim::RunReport> parallel;
  std::vector<sim::RunReport> serial;
  std::ostringstream sink;
  SimulateOptions opts;
  opts.scenario = kBundled;
  opts.replicates = 4;
  opts.seed = 100;
  opts.jobs = 4;
  opts.out_dir = par.path();
  ASSERT_EQ(cmd_simulate(opts, sink, sink, &parallel), kExitOk);
  opts.jobs = 1;
  opts.out_dir = ser.path();
  ASSERT_EQ(cmd_simulate(opts, sink, sink, &serial), kExitOk);
  ASSERT_EQ(parallel.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(parallel[i].digest, serial[i].digest);
  }
  EXPECT_TRUE(fs::exists(par.path() / "seed-103" / "trace.jsonl"));
}

TEST(CmdSimulate, UnknownNodeIsInputError) {
  TempDir dir;
  const auto scenario = dir.write("s.json", R"({
    "horizon_hours": 10, "seed": 1,
    "nodes": [{"id": "a", "t_min": 1, "wait_hours": 1, "disclosure_threshold": 1}],
    "schedule": [{"t": 0, "actor": "a", "action": "data_request", "target": "ghost"},
                 {"t": 1, "actor": "nobody", "action": "data_request", "target": "a"}]})");
  const auto r = run_cli({"simulate", scenario, "--out", dir.path() / "out"});
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(r.err.find("ghost"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("nobody"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(dir.path() / "out"));
}

TEST(CmdSimulate, UnwritableOutputIsIoError) {
  TempDir dir;
  const auto blocker = dir.write("file", "x");
  const auto r = run_cli({"simulate", kBundled, "--out", blocker / "sub"});
  EXPECT_EQ(r.code, kExitIo) << r.err;
}

}  // namespace
}  // namespace peertrust::cli

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lcap/cli.hpp"

using namespace lcap;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "lcap");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("lcap_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GenWritesEchoHeaderAndMetadata) {
  const auto r = run_cli({"--out-dir", dir_.string(), "gen", "--surface", "cap", "--res", "8", "--name", "c"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto obj = slurp(dir_ / "c.obj");
  EXPECT_EQ(obj.rfind("# lcap gen\n", 0), 0u) << obj.substr(0, 80);
  EXPECT_NE(obj.find("# res = 8"), std::string::npos);
  EXPECT_NE(obj.find("#@ domain"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "c.csv"));
  EXPECT_NE(r.out.find("# lcap gen"), std::string::npos);
}

TEST_F(CliTest, ObjRoundTripPreservesPositionsAndSupport) {
  ASSERT_EQ(run_cli({"--out-dir", dir_.string(), "gen", "--surface", "cap", "--res", "10", "--name", "c"}).code, 0);
  const auto g = cli::read_obj(dir_ / "c.obj");
  EXPECT_EQ(g.domain().rings, 10);
  ASSERT_TRUE(g.support().has_value());
  cli::write_text(dir_ / "again.obj", cli::obj_text(g, ""));
  const auto h = cli::read_obj(dir_ / "again.obj");
  ASSERT_EQ(g.vertex_count(), h.vertex_count());
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    EXPECT_EQ(g.positions()[i].x, h.positions()[i].x);
    EXPECT_EQ(g.positions()[i].y, h.positions()[i].y);
    EXPECT_EQ(g.positions()[i].z, h.positions()[i].z);
  }
}

TEST_F(CliTest, WaistDiscSolveIsAFixedPoint) {
  const auto r = run_cli({"--out-dir", dir_.string(), "solve", "--lambda", "0", "--init", "waist-disc", "--H", "0",
                          "--res", "12"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  for (const char* f : {"solve.obj", "solve_trace.csv", "solve_report.csv", "solve_summary.txt"})
    EXPECT_TRUE(fs::exists(dir_ / f)) << f;
}

TEST_F(CliTest, PseudosphereSolveClassifiesAsCap) {
  const auto r = run_cli({"--out-dir", dir_.string(), "solve", "--support", "pseudosphere", "--lambda", "1", "--seed",
                          "7", "--res", "16"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(slurp(dir_ / "solve_summary.txt").find("HyperbolicCap"), std::string::npos);
}

TEST_F(CliTest, InadmissibleLambdaIsAnError) {
  const auto r = run_cli({"--out-dir", dir_.string(), "solve", "--support", "plane", "--lambda", "-0.5", "--init",
                          "disc", "--H", "1"});
  EXPECT_EQ(r.code, cli::kExitError);
  EXPECT_NE(r.err.find("lambda"), std::string::npos);
}

TEST_F(CliTest, IterationLimitGivesExitTwo) {
  const auto r = run_cli({"--out-dir", dir_.string(), "solve", "--lambda", "1", "--amplitude", "0.02", "--seed", "3",
                          "--res", "16", "--max-iters", "1", "--tol", "1e-14"});
  EXPECT_EQ(r.code, cli::kExitNotConverged) << r.err;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run_cli({"verify", "nosuch"}).code, cli::kExitError);
  EXPECT_EQ(run_cli({"gen", "--res", "2"}).code, cli::kExitError);
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kExitError);
  EXPECT_EQ(run_cli({"--help"}).code, cli::kExitOk);
}

TEST_F(CliTest, OutputDirectoryFromEnvironment) {
  ::setenv("LCAP_OUTPUT_DIR", dir_.string().c_str(), 1);
  const auto r = run_cli({"gen", "--surface", "disc", "--res", "8", "--name", "env"});
  ::unsetenv("LCAP_OUTPUT_DIR");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "env.obj"));
}

TEST_F(CliTest, FlagOverridesEnvironment) {
  const fs::path other = dir_ / "flag";
  ::setenv("LCAP_OUTPUT_DIR", (dir_ / "env").string().c_str(), 1);
  const auto r = run_cli({"--out-dir", other.string(), "gen", "--res", "8", "--name", "x"});
  ::unsetenv("LCAP_OUTPUT_DIR");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(other / "x.obj"));
  EXPECT_FALSE(fs::exists(dir_ / "env" / "x.obj"));
}

TEST_F(CliTest, ConfigFileSection) {
  const fs::path cfg = dir_ / "run.ini";
  std::ofstream(cfg) << "[gen]\nsurface=disc\nres=9\nname=fromcfg\n";
  const auto r = run_cli({"--config", cfg.string(), "--out-dir", dir_.string(), "gen"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto obj = slurp(dir_ / "fromcfg.obj");
  EXPECT_NE(obj.find("# res = 9"), std::string::npos);
  EXPECT_NE(obj.find("# surface = disc"), std::string::npos);
}

TEST_F(CliTest, SolveOutputsAreDeterministic) {
  const std::vector<std::string> args = {"solve", "--lambda", "1", "--amplitude", "0.02", "--seed", "4", "--res", "16"};
  auto a = args, b = args;
  a.insert(a.begin(), {"--out-dir", (dir_ / "a").string()});
  b.insert(b.begin(), {"--out-dir", (dir_ / "b").string()});
  const auto ra = run_cli(a), rb = run_cli(b);
  ASSERT_EQ(ra.code, 0) << ra.err;
  ASSERT_EQ(rb.code, 0) << rb.err;
  for (const char* f : {"solve.obj", "solve_trace.csv", "solve_report.csv", "solve_summary.txt"})
    EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
}

TEST_F(CliTest, ExportAndReportReadSolvedMeshes) {
  ASSERT_EQ(run_cli({"--out-dir", dir_.string(), "gen", "--res", "12", "--name", "c"}).code, 0);
  const auto in = (dir_ / "c.obj").string();
  EXPECT_EQ(run_cli({"--out-dir", dir_.string(), "export", "--input", in, "--format", "profile"}).code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "export_profile.csv"));
  EXPECT_EQ(run_cli({"--out-dir", dir_.string(), "report", "--input", in}).code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "report_summary.txt"));
  EXPECT_EQ(run_cli({"export", "--input", (dir_ / "missing.obj").string()}).code, cli::kExitError);
}

TEST_F(CliTest, HopfWritesTable) {
  const auto r = run_cli({"--out-dir", dir_.string(), "hopf", "--rings", "16", "--sectors", "32"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "hopf.csv"));
}

TEST(CliSuites, NamesAndUnknown) {
  const auto names = cli::suite_names();
  EXPECT_NE(std::find(names.begin(), names.end(), "covering"), names.end());
  EXPECT_THROW(cli::run_suite("nosuch"), std::exception);
}

TEST(CliSuites, GradientSuitePasses) {
  for (const auto& v : cli::run_suite("gradients")) EXPECT_TRUE(v.pass) << format_verdict(v);
}

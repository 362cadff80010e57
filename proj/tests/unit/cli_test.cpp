#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bipara/trajectory_csv.hpp"
#include "bipara/verify.hpp"
#include "commands.hpp"
#include "problem_file.hpp"
#include "support.hpp"

namespace bipara::cli {
namespace {

namespace fs = std::filesystem;

std::string problem(const std::string& name) { return std::string(BIPARA_PROBLEM_DIR) + "/" + name; }
std::string fixture(const std::string& name) { return std::string(BIPARA_FIXTURE_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("bipara_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::ostringstream out_, err_;

 private:
  fs::path dir_;
};

TEST_F(Cli, DeriveOscillator) {
  ASSERT_EQ(cmd_derive(problem("oscillator.json"), out_, err_), kOk);
  const std::string text = out_.str();
  EXPECT_NE(text.find("# EL row A_1"), std::string::npos);
  EXPECT_NE(text.find("# EL row B_1"), std::string::npos);
  EXPECT_NE(text.find("xi1 = -j*zb1"), std::string::npos) << text;
  EXPECT_NE(text.find("xib1 = j*z1"), std::string::npos) << text;
}

TEST_F(Cli, DeriveHamiltonian) {
  ASSERT_EQ(cmd_derive(problem("hamiltonian_oscillator.json"), out_, err_), kOk);
  EXPECT_NE(out_.str().find("dz1/dt = -j*z1"), std::string::npos) << out_.str();
  EXPECT_NE(out_.str().find("dzb1/dt = j*zb1"), std::string::npos);
  EXPECT_NE(out_.str().find("D+ = "), std::string::npos);
}

TEST_F(Cli, IntegrateOscillatorEndsAtStart) {
  ASSERT_EQ(cmd_integrate(problem("oscillator.json"), {path("o.csv"), false}, out_, err_), kOk);
  std::ifstream in(path("o.csv"));
  const CsvTable t = read_csv(in);
  ASSERT_EQ(t.header.size(), 7u);
  const auto& last = t.rows.back();
  EXPECT_NEAR(last[0], 2 * 3.141592653589793, 1e-15);
  EXPECT_NEAR(last[1], 1.0, 1e-8);
  EXPECT_NEAR(last[2], 0.0, 1e-8);
  EXPECT_NEAR(last[3], 0.0, 1e-8);
  EXPECT_NEAR(last[4], 0.0, 1e-8);
  EXPECT_NE(out_.str().find("wrote 6285 samples"), std::string::npos) << out_.str();
}

TEST_F(Cli, IntegrateIsByteIdentical) {
  for (const auto& entry : fs::directory_iterator(BIPARA_PROBLEM_DIR)) {
    const std::string a = path("a.csv"), b = path("b.csv");
    ASSERT_EQ(cmd_integrate(entry.path().string(), {a, false}, out_, err_), kOk) << entry.path();
    ASSERT_EQ(cmd_integrate(entry.path().string(), {b, false}, out_, err_), kOk);
    EXPECT_EQ(slurp(a), slurp(b)) << entry.path();
  }
}

TEST_F(Cli, EveryProblemPassesDeriveIntegrateAudit) {
  for (const auto& entry : fs::directory_iterator(BIPARA_PROBLEM_DIR)) {
    const std::string file = entry.path().string();
    EXPECT_EQ(cmd_derive(file, out_, err_), kOk) << file << err_.str();
    EXPECT_EQ(cmd_integrate(file, {path("x.csv"), true}, out_, err_), kOk) << file << err_.str();
    EXPECT_EQ(cmd_audit(file, {100, 7, false}, out_, err_), kOk) << file << err_.str();
    EXPECT_EQ(cmd_audit(file, {20, 7, true}, out_, err_), kAuditBreach) << file;
  }
}

TEST_F(Cli, ResidualColumnIsSmall) {
  for (const char* name : {"oscillator.json", "conformal_lagrangian.json", "coupled_pair.json",
                           "hamiltonian_oscillator.json", "conformal_hamiltonian.json"}) {
    ASSERT_EQ(cmd_integrate(problem(name), {path("r.csv"), true}, out_, err_), kOk) << name;
    std::ifstream in(path("r.csv"));
    const CsvTable t = read_csv(in);
    const auto col = t.column("residual");
    ASSERT_GE(col, 0);
    const double limit = std::string(name).find("hamiltonian") == std::string::npos ? 1e-5 : 1e-10;
    for (const auto& row : t.rows) {
      if (!std::isnan(row[col])) EXPECT_LE(row[col], limit) << name;
    }
  }
}

TEST_F(Cli, ProblemsRoundTrip) {
  for (const auto& entry : fs::directory_iterator(BIPARA_PROBLEM_DIR)) {
    const ProblemFile f = load_problem(entry.path().string());
    EXPECT_NO_THROW(build_problem(f)) << entry.path();
    EXPECT_EQ(f.initial.z.size(), static_cast<std::size_t>(f.n));
  }
}

TEST_F(Cli, InputErrors) {
  EXPECT_EQ(cmd_derive(fixture("malformed.json"), out_, err_), kInputError);
  EXPECT_NE(err_.str().find("function"), std::string::npos) << err_.str();
  EXPECT_EQ(cmd_derive(fixture("unknown_key.json"), out_, err_), kInputError);
  EXPECT_NE(err_.str().find("lamda"), std::string::npos);
  EXPECT_EQ(cmd_integrate(path("missing.json"), {path("x.csv"), false}, out_, err_), kInputError);
  std::istringstream bad(R"({"n": 1, "kind": "lagrangian", "function": "z1*zb1", "lambda": "0",
      "initial": {"z": [[1, 0]], "zb": [[0, 0]]}, "t0": 0, "t1": 1, "integrator": "rk4", "tol": 1e-8})");
  EXPECT_THROW(read_problem(bad), InputError);
}

TEST_F(Cli, Singularities) {
  EXPECT_EQ(cmd_integrate(fixture("singular_lambda.json"), {path("s.csv"), false}, out_, err_),
            kSingularity);
  EXPECT_NE(err_.str().find("D-"), std::string::npos) << err_.str();
  EXPECT_NE(err_.str().find("t=0"), std::string::npos);
  err_.str("");
  EXPECT_EQ(cmd_integrate(fixture("degenerate.json"), {path("d.csv"), false}, out_, err_),
            kSingularity);
  EXPECT_EQ(cmd_derive(fixture("degenerate.json"), out_, err_), kSingularity);
}

TEST_F(Cli, SelftestAndSeed) {
  std::ostringstream a, b;
  EXPECT_EQ(cmd_selftest(5, a), kOk);
  EXPECT_EQ(cmd_selftest(5, b), kOk);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(a.str().find(", 0 failed (seed 5)"), std::string::npos);
  ::setenv("BPC_SEED", "77", 1);
  EXPECT_EQ(default_seed(), 77u);
  ::unsetenv("BPC_SEED");
  EXPECT_EQ(default_seed(), bipara::kDefaultSeed);
}

TEST_F(Cli, PlotWritesOnePolylinePerColumn) {
  ASSERT_EQ(cmd_integrate(problem("oscillator.json"), {path("o.csv"), false}, out_, err_), kOk);
  PlotOptions opts;
  opts.output = path("o.svg");
  opts.columns = {"z1_a", "zb1_b"};
  ASSERT_EQ(cmd_plot(path("o.csv"), opts, err_), kOk) << err_.str();
  const std::string svg = slurp(path("o.svg"));
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  std::vector<std::string> names;
  for (auto at = svg.find("<polyline"); at != std::string::npos; at = svg.find("<polyline", at + 1)) {
    const auto key = svg.find("data-name=\"", at) + 11;
    names.push_back(svg.substr(key, svg.find('"', key) - key));
  }
  EXPECT_EQ(names, opts.columns);

  opts.columns = {"nope"};
  EXPECT_EQ(cmd_plot(path("o.csv"), opts, err_), kInputError);
  opts.columns = {};
  opts.width = 10;
  EXPECT_EQ(cmd_plot(path("o.csv"), opts, err_), kInputError);
}

}  // namespace
}  // namespace bipara::cli

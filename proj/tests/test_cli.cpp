// Copyright 2026 The tomokit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "tomokit/io.hpp"

using namespace tomokit;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

size_t count_lines(const std::string& s) { return static_cast<size_t>(std::count(s.begin(), s.end(), '\n')); }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("tomokit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST(CliParse, States) {
  EXPECT_TRUE(std::holds_alternative<state::Fock>(cli::parse_state("vacuum").spec));
  EXPECT_EQ(std::get<state::Fock>(cli::parse_state("fock:3").spec).n, 3);
  EXPECT_EQ(std::get<state::Coherent>(cli::parse_state("coherent:1:0.5").spec).alpha, Complex(1.0, 0.5));
  EXPECT_EQ(std::get<state::Coherent>(cli::parse_state("coherent:0.2").spec).alpha, Complex(0.2, 0.0));
  EXPECT_EQ(std::get<state::Thermal>(cli::parse_state("thermal:0.3").spec).nbar, 0.3);
  EXPECT_EQ(std::get<state::SqueezedVacuum>(cli::parse_state("squeezed:0.4").spec).r, 0.4);
  EXPECT_TRUE(cli::parse_state("thermal:0.3").gaussian.has_value());
  EXPECT_FALSE(cli::parse_state("fock:2").gaussian.has_value());
  for (const char* bad : {"", "fock", "fock:-1", "fock:x", "coherent:1:2:3", "banana:1"}) {
    EXPECT_THROW(cli::parse_state(bad), Error) << bad;
  }
  const XGrid g = cli::parse_range("-6:6:241");
  EXPECT_EQ(g.min, -6.0);
  EXPECT_EQ(g.max, 6.0);
  EXPECT_EQ(g.count, 241);
  EXPECT_THROW(cli::parse_range("1:2"), Error);
}

TEST_F(Cli, SymplecticTomogramFile) {
  const Result r = run_cli({"tomogram", "--scheme", "symplectic", "--state", "vacuum", "--dim", "16", "--out", path("t.csv")});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const std::string csv = slurp(path("t.csv"));
  EXPECT_EQ(count_lines(csv), 1u + 64u * 241u);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "X,mu,nu,w");
  std::istringstream in(csv);
  const SymplecticTomogram t = read_tomogram_csv(in);
  double worst = 0.0;
  for (size_t k = 0; k < t.frames.size(); ++k) {
    for (int i = 0; i < t.x.count; ++i) worst = std::max(worst, std::abs(t.at(k, i) - oracle::ground_density(t.x.at(i))));
  }
  EXPECT_LE(worst, 1e-8);
  EXPECT_TRUE(fs::exists(path("t.csv.json")));
  EXPECT_NE(r.out.find("\"leakage\""), std::string::npos);
  EXPECT_NE(r.out.find("\"contract_ok\": true"), std::string::npos);
}

TEST_F(Cli, PhotonTomogramAndReconstruct) {
  const Result t = run_cli({"tomogram", "--scheme", "photon", "--state", "coherent:0.5", "--dim", "40", "--nmax", "23",
                            "--alpha-grid", "41", "--alpha-radius", "3", "--out", path("p.csv")});
  ASSERT_EQ(t.code, cli::kOk) << t.err;
  const std::string csv = slurp(path("p.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,re_alpha,im_alpha,omega");
  EXPECT_EQ(count_lines(csv), 1u + 24u * 41u * 41u);

  const Result r = run_cli({"reconstruct", "--scheme", "photon", "--in", path("p.csv"), "--out", path("rho.json"),
                            "--reference", "coherent:0.5"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const std::string report = slurp(path("rho.json.report.json"));
  const size_t at = report.find("\"fidelity\": ");
  ASSERT_NE(at, std::string::npos);
  EXPECT_GE(std::stod(report.substr(at + 12)), 0.99);
  EXPECT_EQ(operator_from_json(slurp(path("rho.json"))).dim(), 24);
}

TEST_F(Cli, GaussianRouteMatchesMatrixRoute) {
  const std::vector<std::string> base{"tomogram", "--scheme", "photon", "--state", "thermal:0.4", "--dim", "64",
                                      "--nmax", "10", "--alpha-grid", "5", "--alpha-radius", "1"};
  std::vector<std::string> a = base;
  a.insert(a.end(), {"--out", path("m.csv")});
  std::vector<std::string> b = base;
  b.insert(b.end(), {"--route", "gaussian", "--out", path("g.csv")});
  ASSERT_EQ(run_cli(a).code, cli::kOk);
  ASSERT_EQ(run_cli(b).code, cli::kOk);
  std::istringstream ia(slurp(path("m.csv")));
  std::istringstream ib(slurp(path("g.csv")));
  const PhotonTomogram ta = read_photon_csv(ia);
  const PhotonTomogram tb = read_photon_csv(ib);
  for (size_t k = 0; k < ta.values().size(); ++k) EXPECT_NEAR(ta.values()[k], tb.values()[k], 1e-10);
  EXPECT_EQ(run_cli({"tomogram", "--scheme", "photon", "--state", "fock:1", "--route", "gaussian", "--out", path("x.csv")}).code,
            cli::kConfigError);
}

TEST_F(Cli, SymplecticReconstructReport) {
  ASSERT_EQ(run_cli({"tomogram", "--scheme", "symplectic", "--state", "vacuum", "--dim", "16", "--angles", "90",
                     "--xrange", "-8:8:256", "--out", path("t.csv")})
                .code,
            cli::kOk);
  const Result r = run_cli({"reconstruct", "--scheme", "symplectic", "--in", path("t.csv"), "--out", path("w.grid"),
                            "--grid", "-6:6:97", "--reference", "vacuum"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  std::ifstream g(path("w.grid"));
  const PhaseSpaceGrid w = read_grid(g);
  EXPECT_EQ(w.norm, Normalization::TwoPi);
  EXPECT_NEAR(w.integral() / (2.0 * M_PI), 1.0, 1e-3);
  const std::string report = slurp(path("w.grid.report.json"));
  const size_t at = report.find("\"max_abs_error\": ");
  ASSERT_NE(at, std::string::npos);
  EXPECT_LE(std::stod(report.substr(at + 17)), 1e-3);
}

TEST_F(Cli, MissingColumnIsConfigError) {
  std::ofstream(path("bad.csv")) << "n,re_alpha,im_alpha\n0,0,0\n";
  const Result r = run_cli({"reconstruct", "--scheme", "photon", "--in", path("bad.csv")});
  EXPECT_EQ(r.code, cli::kConfigError);
  EXPECT_NE(r.err.find("missing column 'omega'"), std::string::npos);
}

TEST_F(Cli, BadArgumentsAreConfigErrors) {
  EXPECT_EQ(run_cli({"tomogram", "--scheme", "symplectic", "--state", "banana", "--out", path("t.csv")}).code,
            cli::kConfigError);
  EXPECT_EQ(run_cli({"tomogram", "--scheme", "other", "--state", "vacuum", "--out", path("t.csv")}).code, cli::kConfigError);
  EXPECT_EQ(run_cli({"tomogram", "--state", "vacuum"}).code, cli::kConfigError);
  EXPECT_EQ(run_cli({"nonsense"}).code, cli::kConfigError);
  EXPECT_EQ(run_cli({"reconstruct", "--scheme", "photon", "--in", path("absent.csv")}).code, cli::kConfigError);
  EXPECT_EQ(run_cli({"verify", "--config", path("absent.json")}).code, cli::kConfigError);
}

TEST_F(Cli, TruncationIsContractViolation) {
  const Result r = run_cli({"tomogram", "--scheme", "symplectic", "--state", "coherent:3", "--dim", "8", "--angles", "2",
                            "--xrange", "-3:3:7", "--out", path("t.csv")});
  EXPECT_EQ(r.code, cli::kContractViolation);
  EXPECT_NE(r.out.find("\"contract_ok\": false"), std::string::npos);
}

TEST_F(Cli, VerifyKernels) {
  const Result r = run_cli({"verify", "kernels", "--seed", "3", "--out", path("v.json")});
  EXPECT_EQ(r.code, cli::kOk) << r.out;
  EXPECT_NE(slurp(path("v.json")).find("\"passed\": true"), std::string::npos);
  for (const cli::CheckResult& c : cli::run_suite("kernels", 3)) EXPECT_TRUE(c.passed) << c.name;
  EXPECT_THROW(cli::run_suite("unknown", 0), Error);
}

TEST_F(Cli, DeterministicOutput) {
  const std::vector<std::string> args{"tomogram", "--scheme", "symplectic", "--state", "coherent:0.4:-0.3", "--dim", "32",
                                      "--angles", "8", "--xrange", "-5:5:41"};
  std::vector<std::string> a = args;
  a.insert(a.end(), {"--out", path("a.csv")});
  std::vector<std::string> b = args;
  b.insert(b.end(), {"--out", path("b.csv")});
  const Result ra = run_cli(a);
  const Result rb = run_cli(b);
  EXPECT_EQ(ra.out, rb.out);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  EXPECT_EQ(slurp(path("a.csv.json")), slurp(path("b.csv.json")));
  const Result v1 = run_cli({"verify", "kernels", "--seed", "9"});
  const Result v2 = run_cli({"verify", "kernels", "--seed", "9"});
  EXPECT_EQ(v1.out, v2.out);
}

TEST_F(Cli, ConfigFileAndPrecedence) {
  std::ofstream(path("c.json")) << R"({"scheme": "symplectic", "state": "vacuum", "dim": 8, "angles": 4, "xrange": "-3:3:7"})";
  const Result r = run_cli({"tomogram", "--config", path("c.json"), "--angles", "2", "--out", path("t.csv")});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(count_lines(slurp(path("t.csv"))), 1u + 2u * 7u);

  std::ofstream(path("v.json")) << R"({"suite": "kernels", "seed": 4})";
  const Result v = run_cli({"verify", "--config", path("v.json")});
  EXPECT_EQ(v.code, cli::kOk);
  EXPECT_NE(v.out.find("\"suite\": \"kernels\""), std::string::npos);
  EXPECT_NE(v.out.find("\"seed\": 4"), std::string::npos);

  std::ofstream(path("bad.json")) << "[1, 2]";
  EXPECT_EQ(run_cli({"verify", "--config", path("bad.json")}).code, cli::kConfigError);
}

TEST_F(Cli, StateCommand) {
  const Result r = run_cli({"state", "--state", "fock:2", "--dim", "6"});
  ASSERT_EQ(r.code, cli::kOk);
  const DensityMatrix rho = density_from_json(r.out);
  EXPECT_EQ(rho.dim(), 6);
  EXPECT_EQ(rho.matrix()(2, 2), Complex(1.0, 0.0));
}

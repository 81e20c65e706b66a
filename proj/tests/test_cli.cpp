#include "chaoscope/cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace chaoscope;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("chaoscope_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  std::string synth(const std::string& name, std::vector<std::string> extra) const {
    std::vector<std::string> args = {"synth", "--output", path(name)};
    args.insert(args.end(), extra.begin(), extra.end());
    const CliResult r = cli(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return path(name);
  }

  fs::path dir_;
};

std::vector<std::pair<double, double>> curve_points(const std::string& csv) {
  std::vector<std::pair<double, double>> pts;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string i, t, y;
    std::getline(row, i, ',');
    std::getline(row, t, ',');
    std::getline(row, y, ',');
    if (!y.empty()) pts.emplace_back(std::stod(t), std::stod(y));
  }
  return pts;
}

}  // namespace

TEST_F(CliTest, AnalyzeLogisticAllMethods) {
  const std::string rr = synth("logistic.rr", {"--system", "logistic", "--n", "4000"});
  const CliResult r = cli({"analyze", rr, "--m", "2", "--stride", "16"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["estimates"].size(), 3u);
  for (const auto& e : j["estimates"]) {
    EXPECT_GE(e["lambda"].get<double>(), 0.62) << e["method"];
    EXPECT_LE(e["lambda"].get<double>(), 0.77) << e["method"];
    EXPECT_TRUE(e.contains("classification"));
    EXPECT_TRUE(e.contains("params"));
  }
  EXPECT_TRUE(j.contains("rmssd"));
  EXPECT_TRUE(j["band_powers"].is_null());
  EXPECT_EQ(j["band_powers_unavailable"], "UnitsError");
  EXPECT_EQ(j["params_echo"]["m"], 2);
}

TEST_F(CliTest, AnalyzeConstantIsEstimationError) {
  std::string text;
  for (int i = 0; i < 300; ++i) text += "800\n";
  const CliResult r = cli({"analyze", write("flat.rr", text)});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("DegenerateSpectrum"), std::string::npos) << r.err;
}

TEST_F(CliTest, AnalyzeWolfSchema) {
  const std::string rr = synth("henon.rr", {"--system", "henon", "--n", "2000"});
  const CliResult r = cli({"analyze", rr, "--method", "wolf", "--m", "2", "--time-base", "mean-rr"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"method\":\"wolf\""), std::string::npos);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(std::isfinite(j["estimates"][0]["lambda"].get<double>()));
  EXPECT_TRUE(j["band_powers"].is_object());
  EXPECT_EQ(j["input"]["unit"], "seconds");
}

TEST_F(CliTest, AnalyzeIsByteIdentical) {
  const std::string rr = synth("h.rr", {"--system", "henon", "--n", "1500"});
  const std::vector<std::string> args = {"analyze", rr, "--m", "3", "--stride", "4"};
  const CliResult a = cli(args), b = cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, AnalyzeSeriesInputAndCsv) {
  const CliResult s = cli({"synth", "--system", "logistic", "--n", "2000", "--format", "csv"});
  ASSERT_EQ(s.code, 0);
  EXPECT_EQ(s.out.substr(0, 4), "t,x\n");
  const std::string file = write("logistic.csv", s.out);
  const CliResult r = cli({"analyze", file, "--input-format", "series", "--method", "rosenstein",
                     "--m", "2", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "method,lambda,classification");
  EXPECT_EQ(r.out.substr(r.out.find('\n') + 1, 11), "rosenstein,");
}

TEST_F(CliTest, DiagnosticsWritten) {
  const std::string rr = synth("l.rr", {"--system", "logistic", "--n", "1000"});
  const CliResult r = cli({"analyze", rr, "--m", "2", "--stride", "8", "--diag-dir", path("diag")});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"wolf_trace.csv", "divergence_curve.csv", "local_exponents.csv"})
    EXPECT_TRUE(fs::exists(dir_ / "diag" / f)) << f;
  EXPECT_NE(r.out.find("local_exponents.csv"), std::string::npos);
}

TEST_F(CliTest, CohortFixture) {
  const CliResult r = cli({"cohort", std::string(CHAOSCOPE_FIXTURE_DIR) + "/reference_cohort.csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["methods"]["mazhar-eslam"]["healthy"]["mean"].get<double>(), 0.50552, 1e-5);
  EXPECT_NEAR(j["methods"]["wolf"]["healthy"]["mean"].get<double>(), 0.64894, 1e-5);
  EXPECT_NEAR(j["methods"]["rosenstein"]["healthy"]["mean"].get<double>(), 0.79252, 1e-5);
  EXPECT_NEAR(j["methods"]["rosenstein"]["healthy"]["mean_error"].get<double>(), 0.292522, 1e-6);
  EXPECT_EQ(j["methods"]["wolf"]["patient:CHF"]["count"], 4);
}

TEST_F(CliTest, CohortEmptyIsInputError) {
  EXPECT_EQ(cli({"cohort", write("empty.csv", "")}).code, 2);
  EXPECT_EQ(cli({"cohort", write("bad.csv", "x,y\n1,2\n")}).code, 2);
}

TEST_F(CliTest, DivergeLogisticRisesEarly) {
  const std::string rr = synth("l.rr", {"--system", "logistic", "--n", "3000"});
  const CliResult r = cli({"diverge", rr, "--m", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto pts = curve_points(r.out);
  ASSERT_GT(pts.size(), 5u);
  for (std::size_t i = 1; i <= 4; ++i) EXPECT_GT(pts[i].second, pts[i - 1].second);
}

TEST_F(CliTest, DivergeSinePlateau) {
  const std::string rr = synth("s.rr", {"--system", "sine", "--frequency", "0.0578", "--dt", "1", "--n", "2000"});
  const CliResult r = cli({"diverge", rr, "--m", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const double slope = std::stod(r.err.substr(r.err.find(' ') + 1));
  EXPECT_LT(std::abs(slope), 0.05);
}

TEST_F(CliTest, UsageAndFileErrors) {
  EXPECT_EQ(cli({"diverge", path("missing.rr")}).code, 2);
  EXPECT_NE(cli({"analyze", path("missing.rr")}).err.find("FileNotFound"), std::string::npos);
  EXPECT_EQ(cli({"analyze"}).code, 2);
  EXPECT_EQ(cli({"analyze", "x", "--bogus"}).code, 2);
  EXPECT_EQ(cli({"analyze", "x", "--method", "lyap"}).code, 2);
  EXPECT_EQ(cli({}).code, 2);
  const CliResult bad = cli({"analyze", write("bad.rr", "800\nabc\n")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("ParseError"), std::string::npos);
  EXPECT_EQ(cli({"analyze", write("range.rr", "800\n100\n")}).code, 2);
}

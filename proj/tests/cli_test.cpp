#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "minlab/cli.hpp"

namespace minlab::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "minlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data_file(const std::string& name) { return std::string(MINLAB_DATA_DIR) + "/" + name; }

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "minlab_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(Grid, ParsesAndIncludesEndpoint) {
  const Grid g = parse_grid("0:1:0.01");
  const auto pts = g.points();
  ASSERT_EQ(pts.size(), 101u);
  EXPECT_EQ(pts.front(), 0.0);
  EXPECT_EQ(pts.back(), 1.0);
  EXPECT_NEAR(pts[26], 0.26, 1e-15);
}

TEST(Grid, NonDividingStepStopsBeforeEnd) {
  const auto pts = parse_grid("0.1:0.5:0.15").points();
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_NEAR(pts.back(), 0.4, 1e-15);
}

TEST(Grid, RejectsMalformed) {
  for (const char* bad : {"0:1", "0:1:0", "a:1:0.1", "0:1:0.1:2", "0.5:0.2:0.1", "-0.1:1:0.1", "0:1.5:0.1", ""}) {
    EXPECT_THROW((void)parse_grid(bad), std::invalid_argument) << bad;
  }
}

TEST(FormatNumber, TwelveSignificantDigits) {
  EXPECT_EQ(format_number(8.0 / 9.0), "0.888888888889");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(0.25), "0.25");
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(-1.5e-20), "-1.5e-20");
}

TEST(Measure, Ghz3) {
  const auto r = run_cli({"measure", "--state", "ghz3", "--l", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("N = 1 "), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("D = 1 "), std::string::npos) << r.out;
}

TEST(Measure, W3Json) {
  const auto r = run_cli({"measure", "--state", "w3", "--l", "1", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_NEAR(doc["N"].get<double>(), 8.0 / 9.0, 1e-12);
  EXPECT_NEAR(doc["D"].get<double>(), 8.0 / 9.0, 1e-12);
  EXPECT_EQ(doc["l"].get<int>(), 1);
  EXPECT_NEAR(doc["s_norm"].get<double>(), 1.0 / 3.0, 1e-12);
  EXPECT_EQ(doc["case"].get<std::string>(), "CaseI");
  EXPECT_TRUE(doc["predicted_equal"].get<bool>());
  EXPECT_EQ(doc["k_eigenvalues"].size(), 3u);
}

TEST(Measure, BellFileWithOracle) {
  const auto r = run_cli({"measure", "--file", data_file("bell.json"), "--l", "1", "--oracle", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_NEAR(doc["N"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(doc["N_oracle"].get<double>(), 1.0, 1e-8);
  EXPECT_NEAR(doc["D_oracle"].get<double>(), 1.0, 1e-8);
}

TEST(Measure, MixedFileAndFamily) {
  const auto a = run_cli({"measure", "--file", data_file("classical.json"), "--l", "2", "--json"});
  ASSERT_EQ(a.code, 0) << a.err;
  const json classical = json::parse(a.out);
  EXPECT_NEAR(classical["N"].get<double>(), 0.5, 1e-14);
  EXPECT_NEAR(classical["D"].get<double>(), 0.0, 1e-14);
  const auto b = run_cli({"measure", "--family", "ghz-w", "--p", "0.5", "--json"});
  ASSERT_EQ(b.code, 0) << b.err;
  const json doc = json::parse(b.out);
  EXPECT_NEAR(doc["N"].get<double>(), 0.472222222222, 1e-11);
  EXPECT_NEAR(doc["D"].get<double>(), 0.416666666667, 1e-11);
}

TEST(Measure, PureQutritInputUsesClosedForm) {
  const fs::path f = scratch_dir() / "qutrit.json";
  std::ofstream(f) << R"({"dims":[2,3],"kind":"pure","amplitudes":[[0.7071067811865476,0],[0,0],[0,0],[0,0],[0.7071067811865476,0],[0,0]]})";
  const auto r = run_cli({"measure", "--file", f.string(), "--l", "2", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["N_method"], "closed-form pure");
  EXPECT_NEAR(doc["N"].get<double>(), 0.75, 1e-12);
}

TEST(Measure, DegenerateQutritMarginalFallsBackToOracle) {
  // (|00><00| + |11><11|)/2 on a qubit-qutrit pair: the qutrit marginal is
  // diag(1/2, 1/2, 0).
  CMatrix m = CMatrix::Zero(6, 6);
  m(0, 0) = m(4, 4) = 0.5;
  const StateInput s = DensityOperator(m, DimensionProfile{2, 3});
  const MeasureReport r = measure(s, 1, SearchConfig{}, false);
  EXPECT_EQ(r.n_method, "oracle");
  EXPECT_EQ(r.d_method, "oracle");
  EXPECT_GE(r.n_value, r.d_value - 1e-6);
  EXPECT_NEAR(r.d_value, 0.0, 1e-9);
  EXPECT_FALSE(r.verdict.has_value());
}

TEST(Measure, ExitCodes) {
  EXPECT_EQ(run_cli({"measure", "--state", "nonsense"}).code, kUsage);
  EXPECT_EQ(run_cli({"measure", "--state", "w3", "--l", "4"}).code, kUsage);
  EXPECT_EQ(run_cli({"measure"}).code, kUsage);
  EXPECT_EQ(run_cli({"measure", "--state", "w3", "--file", "x.json"}).code, kUsage);
  EXPECT_EQ(run_cli({"measure", "--family", "ghz-w"}).code, kUsage);
  EXPECT_EQ(run_cli({"measure", "--family", "ghz-w", "--p", "1.5"}).code, kUsage);
  EXPECT_EQ(run_cli({"measure", "--file", "/nonexistent/state.json"}).code, kIo);
  EXPECT_EQ(run_cli({}).code, kUsage);
  EXPECT_EQ(run_cli({"--help"}).code, kOk);
}

TEST(Measure, MalformedFilesAreUsageErrors) {
  const fs::path dir = scratch_dir();
  const std::vector<std::string> bodies{
      "not json",
      R"({"dims":[2,2],"kind":"pure","amplitudes":[[1,0],[0,0]]})",
      R"({"dims":[2,2],"kind":"pure","amplitudes":[[1,0],[0,0],[0,0],[1,0]]})",
      R"({"dims":[1,2],"kind":"pure","amplitudes":[[1,0],[0,0]]})",
      R"({"dims":[2],"kind":"mixed","matrix":[[[1.5,0],[0,0]],[[0,0],[-0.5,0]]]})",
      R"({"dims":[2],"kind":"weird"})",
  };
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    const fs::path f = dir / ("bad" + std::to_string(i) + ".json");
    std::ofstream(f) << bodies[i];
    EXPECT_EQ(run_cli({"measure", "--file", f.string()}).code, kUsage) << bodies[i];
  }
}

TEST(StateIo, RoundTrip) {
  const StateInput pure = haar_pure(DimensionProfile{2, 3}, 4);
  const StateInput back = parse_state_json(state_to_json(pure));
  EXPECT_EQ(std::get<PureState>(back).amplitudes(), std::get<PureState>(pure).amplitudes());
  const StateInput mixed = random_mixed(DimensionProfile{2, 2}, 2, 4);
  const StateInput back2 = parse_state_json(state_to_json(mixed));
  EXPECT_EQ(std::get<DensityOperator>(back2).matrix(), std::get<DensityOperator>(mixed).matrix());
  EXPECT_EQ(profile_of(back2), (DimensionProfile{2, 2}));
}

TEST(Sweep, CsvHeaderAndGhzWRows) {
  const auto r = run_cli({"sweep", "--family", "ghz-w", "--grid", "0:1:0.01"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 102u);
  EXPECT_EQ(ls[0], "p,N,D,eta1,eta2,eta3,s_norm,case,predicted_equal,observed_equal");
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const int step = static_cast<int>(i) - 1;
    const bool want = step <= 25 || step == 100;
    const std::string tail = ls[i].substr(ls[i].rfind(',') + 1);
    EXPECT_EQ(tail, want ? "true" : "false") << ls[i];
  }
}

TEST(Sweep, GhzGhz1AllEqualAndGhzMinusOnlyAtEnds) {
  const auto a = sweep(Family::GhzGhz1, parse_grid("0:1:0.01"), 0, kDefaultEqualityTol);
  for (const auto& row : a) EXPECT_TRUE(row.observed_equal) << row.p;
  const auto b = sweep(Family::GhzGhzMinus, parse_grid("0:1:0.01"), 0, kDefaultEqualityTol);
  for (const auto& row : b) EXPECT_EQ(row.observed_equal, row.p == 0.0 || row.p == 1.0) << row.p;
}

TEST(Sweep, JsonRoundTripsObservedEqual) {
  const auto r = run_cli({"sweep", "--family", "wt-w", "--grid", "0:1:0.05", "--json", "--tol", "1e-6"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["family"], "wt-w");
  const double tol = doc["tol_eq"].get<double>();
  ASSERT_EQ(doc["rows"].size(), 21u);
  for (const auto& row : doc["rows"]) {
    const bool recomputed = std::abs(row["N"].get<double>() - row["D"].get<double>()) < tol;
    EXPECT_EQ(recomputed, row["observed_equal"].get<bool>());
    EXPECT_EQ(row["eta"].size(), 3u);
  }
}

TEST(Sweep, CsvIsBitStableAndWritesPlotScript) {
  const fs::path dir = scratch_dir();
  const fs::path a = dir / "a.csv", b = dir / "b.csv";
  ASSERT_EQ(run_cli({"sweep", "--family", "ghz-ghzminus", "--out", a.string()}).code, 0);
  ASSERT_EQ(run_cli({"sweep", "--family", "ghz-ghzminus", "--out", b.string()}).code, 0);
  const std::string ca = slurp(a);
  EXPECT_EQ(ca, slurp(b));
  EXPECT_EQ(ca.find('\r'), std::string::npos);
  EXPECT_TRUE(fs::exists(a.string() + ".gp"));
  EXPECT_NE(slurp(a.string() + ".gp").find("plot '" + a.string() + "'"), std::string::npos);
}

TEST(Sweep, ExitCodes) {
  EXPECT_EQ(run_cli({"sweep", "--family", "ghz-w", "--out", "/nonexistent/dir/out.csv"}).code, kIo);
  EXPECT_EQ(run_cli({"sweep", "--family", "nope"}).code, kUsage);
  EXPECT_EQ(run_cli({"sweep", "--family", "ghz-w", "--grid", "0:2:0.1"}).code, kUsage);
  EXPECT_EQ(run_cli({"sweep"}).code, kUsage);
}

TEST(Threshold, Families) {
  const auto wt = threshold(Family::WtW, 0, kDefaultThresholdTol);
  ASSERT_EQ(wt.size(), 2u);
  EXPECT_NEAR(wt[0], (1.0 - std::sqrt(0.6)) / 2.0, 1e-4);
  EXPECT_NEAR(wt[1], (1.0 + std::sqrt(0.6)) / 2.0, 1e-4);
  const auto gw = threshold(Family::GhzW, 0, 1e-9);
  ASSERT_EQ(gw.size(), 1u);
  EXPECT_NEAR(gw[0], 0.25, 1e-6);
  EXPECT_TRUE(threshold(Family::GhzGhz1, 0, 1e-6).empty());
}

TEST(Threshold, CommandOutput) {
  const auto r = run_cli({"threshold", "--family", "wt-w", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  ASSERT_EQ(doc["boundaries"].size(), 2u);
  EXPECT_NEAR(doc["boundaries"][0].get<double>(), 0.1127, 1e-3);
  EXPECT_NEAR(doc["boundaries"][1].get<double>(), 0.8873, 1e-3);
  const auto none = run_cli({"threshold", "--family", "ghz-ghz1"});
  EXPECT_EQ(none.code, 0);
  EXPECT_NE(none.out.find("no sign change"), std::string::npos);
}

TEST(Verify, SmallRunPassesAndIsDeterministic) {
  const std::vector<std::string> args{"verify", "--count", "5", "--seed", "3"};
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  ASSERT_EQ(a.code, 0) << a.out << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("result: PASS"), std::string::npos);
  EXPECT_EQ(lines(a.out).size(), 5u);
}

TEST(Verify, SeedFromEnvironment) {
  ASSERT_EQ(setenv("MINLAB_SEED", "9", 1), 0);
  const auto env = run_cli({"verify", "--count", "2", "--profiles", "2x2", "--kind", "pure"});
  ASSERT_EQ(unsetenv("MINLAB_SEED"), 0);
  const auto flag = run_cli({"verify", "--count", "2", "--profiles", "2x2", "--kind", "pure", "--seed", "9"});
  EXPECT_EQ(env.code, 0);
  EXPECT_EQ(env.out, flag.out);
  EXPECT_NE(env.out.find("seed=9"), std::string::npos);
}

TEST(Verify, CustomProfilesAndErrors) {
  const auto r = run_cli({"verify", "--count", "3", "--profiles", "2x3,3x2", "--kind", "mixed", "--rank", "2"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("suite mixed 3x2 rank 2"), std::string::npos);
  EXPECT_EQ(run_cli({"verify", "--profiles", "2y3"}).code, kUsage);
  EXPECT_EQ(run_cli({"verify", "--kind", "odd"}).code, kUsage);
  EXPECT_EQ(run_cli({"verify", "--count", "1", "--out", "/nonexistent/dir/r.txt"}).code, kIo);
}

TEST(MeasureReport, OracleAgreesForMixedQubitState) {
  const StateInput s = family({Family::GhzW, 0.5});
  SearchConfig cfg;
  const MeasureReport r = measure(s, 0, cfg, true);
  EXPECT_EQ(r.n_method, "closed-form qubit");
  ASSERT_TRUE(r.n_oracle && r.d_oracle);
  EXPECT_NEAR(r.n_value, r.n_oracle->value, 1e-9);
  EXPECT_NEAR(r.d_value, r.d_oracle->value, 1e-7);
}

}  // namespace
}  // namespace minlab::cli

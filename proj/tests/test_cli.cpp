#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cli.hpp"

using qrep::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::filesystem::path temp_dir() {
  auto d = std::filesystem::temp_directory_path() / ("qrep_cli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(d);
  return d;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST(Cli, KernelInterpFirstRow) {
  const auto r = run({"kernel", "--family", "interp", "--alpha", "0.5", "--lambda", "0", "--n", "1024", "--length", "40"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 1025u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"x", "re", "im", "abs"}));
  EXPECT_EQ(rows[1][0], "-20");
}

TEST(Cli, KernelCorrEvenModulus) {
  const auto r = run({"kernel", "--family", "corr-even", "--gamma", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double x = std::stod(rows[i][0]);
    if (x == 0.0) continue;
    EXPECT_NEAR(std::stod(rows[i][3]), 0.28209479177387814 / std::sqrt(std::abs(x)), 1e-15);
  }
}

TEST(Cli, KernelNyquistGuard) {
  const auto r = run({"kernel", "--family", "interp", "--alpha", "0.999", "--n", "128", "--length", "40"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("chirp_resolution"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, KernelEveryFamily) {
  for (const char* fam : {"plane", "position-in-momentum", "interp", "rotation", "corr-even", "corr-odd", "fresnel"}) {
    const auto r = run({"kernel", "--family", fam, "--n", "64", "--length", "16", "--eps", "1"});
    EXPECT_EQ(r.code, 0) << fam << ": " << r.err;
    EXPECT_EQ(parse_csv(r.out).size(), 65u) << fam;
  }
  EXPECT_EQ(run({"kernel", "--family", "nosuch"}).code, 2);
}

TEST(Cli, TransformMomentumPeak) {
  const auto r = run({"transform", "--rep", "momentum", "--state", "gaussian:s=1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"lambda", "re", "im", "abs"}));
  double best = 0.0;
  double at = 1.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double a = std::stod(rows[i][3]);
    if (a > best) {
      best = a;
      at = std::stod(rows[i][0]);
    }
  }
  EXPECT_EQ(at, 0.0);
  EXPECT_NEAR(best, 0.7511255444649425, 1e-15);
}

TEST(Cli, TransformInterpZeroSameModulusAsMomentum) {
  const auto a = parse_csv(run({"transform", "--rep", "interp:alpha=0", "--state", "gaussian:s=1"}).out);
  const auto b = parse_csv(run({"transform", "--rep", "momentum", "--state", "gaussian:s=1"}).out);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 1; i < a.size(); ++i) {
    EXPECT_EQ(a[i][0], b[i][0]);
    EXPECT_NEAR(std::stod(a[i][3]), std::stod(b[i][3]), 1e-16);
  }
}

TEST(Cli, TransformCorrelationParity) {
  const auto r = run({"transform", "--rep", "correlation", "--state", "hermite:k=1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"gamma", "parity", "re", "im"}));
  ASSERT_EQ(rows.size(), 1u + 2 * 2048);
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i][1] == "even") {
      EXPECT_LE(std::hypot(std::stod(rows[i][2]), std::stod(rows[i][3])), 1e-14);
    }
}

TEST(Cli, TransformSidecar) {
  const auto dir = temp_dir();
  const auto out = dir / "t.csv";
  const auto r = run({"transform", "--rep", "rotation:theta=0.5", "--state", "gaussian:s=1,x0=1", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto side = nlohmann::json::parse(slurp(dir / "t.csv.json"));
  EXPECT_NEAR(side["norm_in"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(side["norm_out"].get<double>(), 1.0, 1e-8);
  EXPECT_EQ(side["tail_mass"].get<double>(), 0.0);
  EXPECT_FALSE(std::filesystem::exists(dir / "t.csv.tmp"));
  std::filesystem::remove_all(dir);
}

TEST(Cli, NoPartialOutputOnError) {
  const auto dir = temp_dir();
  const auto out = dir / "bad.csv";
  const auto r = run({"transform", "--rep", "interp:alpha=0.5", "--state", "gaussian:s=9", "--out", out.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("contained_width"), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(out));
  EXPECT_FALSE(std::filesystem::exists(dir / "bad.csv.json"));
  std::filesystem::remove_all(dir);
}

TEST(Cli, BadSpecs) {
  EXPECT_EQ(run({"transform", "--state", "gaussian:q=1"}).code, 2);
  EXPECT_EQ(run({"transform", "--state", "lorentzian"}).code, 2);
  EXPECT_EQ(run({"transform", "--state", "gaussian:s=abc"}).code, 2);
  EXPECT_EQ(run({"transform", "--rep", "interp"}).code, 2);
  EXPECT_EQ(run({"transform", "--rep", "wigner"}).code, 2);
  EXPECT_EQ(run({"moments", "--n", "100"}).code, 2);
  EXPECT_EQ(run({"moments", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, MomentsExamples) {
  auto m = nlohmann::json::parse(run({"moments", "--state", "gaussian:s=1,c=2"}).out);
  EXPECT_NEAR(m["lhs"].get<double>(), 1.25, 1e-12);
  EXPECT_NEAR(m["rhs"].get<double>(), 1.25, 1e-12);
  EXPECT_TRUE(m["schrodinger_saturated"].get<bool>());
  EXPECT_FALSE(m["heisenberg_saturated"].get<bool>());

  m = nlohmann::json::parse(run({"moments", "--state", "gaussian:s=1,c=0"}).out);
  EXPECT_NEAR(m["lhs"].get<double>(), 0.25, 1e-12);
  EXPECT_NEAR(m["rhs"].get<double>(), 0.25, 1e-12);
  EXPECT_TRUE(m["heisenberg_saturated"].get<bool>());

  m = nlohmann::json::parse(run({"moments", "--state", "hermite:k=1"}).out);
  EXPECT_NEAR(m["lhs"].get<double>(), 2.25, 1e-10);
  EXPECT_NEAR(m["rhs"].get<double>(), 0.25, 1e-10);
  EXPECT_FALSE(m["schrodinger_saturated"].get<bool>());
}

TEST(Cli, VerifyExitCodes) {
  const auto ok = run({"verify", "--suite", "commutators"});
  EXPECT_EQ(ok.code, 0) << ok.err;
  const auto arr = nlohmann::json::parse(ok.out);
  ASSERT_TRUE(arr.is_array());
  EXPECT_EQ(arr[0]["name"], "[X,P]=i");
  EXPECT_LE(arr[0]["observed"].get<double>(), 1e-8);

  const auto bad = run({"verify", "--suite", "nosuch"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("known_suite"), std::string::npos);

  EXPECT_EQ(run({"verify", "--suite", "uncertainty", "--n", "64"}).code, 1);
}

TEST(Cli, ConfigFile) {
  const auto dir = temp_dir();
  const auto cfg = dir / "cfg.json";
  std::ofstream(cfg) << R"({"family": "plane", "p": 1, "n": 8, "length": 8})";
  const auto a = run({"kernel", "--config", cfg.string()});
  const auto b = run({"kernel", "--family", "plane", "--p", "1", "--n", "8", "--length", "8"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);

  // command-line flags win over the file
  const auto c = run({"kernel", "--config", cfg.string(), "--n", "16"});
  EXPECT_EQ(parse_csv(c.out).size(), 17u);

  std::ofstream(cfg) << "{not json";
  EXPECT_EQ(run({"kernel", "--config", cfg.string()}).code, 2);
  EXPECT_EQ(run({"kernel", "--config", (dir / "missing.json").string()}).code, 2);
  std::filesystem::remove_all(dir);
}

TEST(Cli, JsonFormatRows) {
  const auto r = run({"kernel", "--family", "plane", "--n", "8", "--length", "8", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto arr = nlohmann::json::parse(r.out);
  ASSERT_EQ(arr.size(), 8u);
  EXPECT_EQ(arr[0]["x"].get<double>(), -4.0);
}

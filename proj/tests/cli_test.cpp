#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "igeo/cli.hpp"

namespace igeo {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome exec(std::string_view command, std::string_view config) {
  std::ostringstream out, err;
  const int code = cli::execute(command, config, std::nullopt, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> rows(const std::string& csv) {
  std::vector<std::vector<std::string>> table;
  std::istringstream lines(csv);
  std::string line;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::istringstream cell(line);
    std::string c;
    while (std::getline(cell, c, ',')) cells.push_back(c);
    table.push_back(cells);
  }
  return table;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  ADD_FAILURE() << "missing column " << name;
  return 0;
}

constexpr const char* kExponential = R"({
  "space": [0.25, 0.25, 0.25, 0.25],
  "initial": [1.6, 1.2, 0.8, 0.4],
  "geodesic": {"kind": "exponential", "direction": [1, -0.5, 0.25, -0.75],
               "times": [0, 0.5, 1, 2]}
})";

TEST(Cli, SingleTimeGivesTheInitialDensity) {
  const Outcome r = exec("geodesic", R"({
    "space": [0.5, 0.5], "initial": [1.5, 0.5],
    "geodesic": {"kind": "exponential", "direction": [1, -1], "times": [0]}})");
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const auto t = rows(r.out);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(std::stod(t[1][column(t[0], "q_1")]), 1.5);
  EXPECT_EQ(std::stod(t[1][column(t[0], "q_2")]), 0.5);
}

TEST(Cli, ExponentialGeodesicIsAutoparallel) {
  const Outcome r = exec("geodesic", kExponential);
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const auto t = rows(r.out);
  ASSERT_EQ(t.size(), 5u);
  const std::size_t k = column(t[0], "acceleration_residual");
  for (std::size_t i = 1; i < t.size(); ++i) EXPECT_LE(std::stod(t[i][k]), 1e-8);
}

TEST(Cli, MixturePastTheBoundaryIsANumericFailure) {
  const Outcome r = exec("geodesic", R"({
    "space": [0.5, 0.5], "initial": [1.5, 0.5],
    "geodesic": {"kind": "mixture", "target": [0.5, 1.5], "times": [0, 1, 3]}})");
  EXPECT_EQ(r.code, cli::kNumericFailure);
  EXPECT_NE(r.err.find("boundary"), std::string::npos) << r.err;
}

TEST(Cli, NormOfZeroIsZero) {
  const Outcome r = exec("norm", R"({
    "space": [0.5, 0.5], "norm": {"f": [0, 0], "young": ["power:2", "cosh2", "gauss2_conj"]}})");
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const auto t = rows(r.out);
  ASSERT_EQ(t.size(), 4u);
  const std::size_t k = column(t[0], "luxemburg_norm");
  for (std::size_t i = 1; i < t.size(); ++i) EXPECT_EQ(std::stod(t[i][k]), 0.0);
}

TEST(Cli, SirWithoutTransmissionKeepsSusceptiblesFixed) {
  const Outcome r = exec("sir", R"({
    "space": [0.2, 0.3, 0.5], "initial": [4.5, 0.3, 0.02],
    "sir": {"beta": 0, "gamma": 0.5, "T": 2, "h": 0.01, "record_every": 10}})");
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const auto t = rows(r.out);
  ASSERT_GT(t.size(), 2u);
  const std::size_t s = column(t[0], "S");
  for (std::size_t i = 2; i < t.size(); ++i) EXPECT_NEAR(std::stod(t[i][s]), std::stod(t[1][s]), 1e-9);
}

TEST(Cli, InputFailures) {
  EXPECT_EQ(exec("geodesic", "{not json").code, cli::kInputFailure);
  EXPECT_EQ(exec("geodesic", "[1, 2]").code, cli::kInputFailure);
  EXPECT_EQ(exec("geodesic", R"({"space": [0.5, 0.5], "initial": [1, 1]})").code, cli::kInputFailure);
  EXPECT_EQ(exec("geodesic", R"({"space": [0.5, 0.5], "initial": [1, 1, 1],
    "geodesic": {"kind": "mixture", "target": [1, 1], "times": [0]}})").code,
            cli::kInputFailure);
  EXPECT_EQ(exec("norm", R"({"space": [0.5, 0.5], "norm": {"f": [1, 1], "young": ["sinh"]}})").code,
            cli::kInputFailure);
  EXPECT_EQ(exec("sir", R"({"space": [0.5, 0.5], "initial": [1, 1],
    "sir": {"beta": 1, "gamma": 1, "T": 1, "h": 0.1}})").code,
            cli::kInputFailure);
  EXPECT_EQ(exec("teleport", R"({"space": [1]})").code, cli::kInputFailure);
  EXPECT_EQ(exec("check", R"({"seed": -4})").code, cli::kInputFailure);
}

TEST(Cli, OutputIsDeterministicAtFullPrecision) {
  const Outcome a = exec("geodesic", kExponential), b = exec("geodesic", kExponential);
  EXPECT_EQ(a.out, b.out);
  const auto t = rows(a.out);
  const std::string cell = t[2][column(t[0], "q_1")];
  const std::string mantissa = cell.substr(0, cell.find_first_of("eE"));
  std::size_t digits = 0;
  for (char c : mantissa) digits += (c >= '0' && c <= '9');
  EXPECT_GE(digits, 16u) << cell;
}

TEST(Cli, RunWritesTheOutputFile) {
  const std::filesystem::path dir = std::filesystem::temp_directory_path();
  const std::filesystem::path config = dir / "igeo_cli_test_config.json";
  const std::filesystem::path output = dir / "igeo_cli_test_out.csv";
  std::ofstream(config) << kExponential;
  std::filesystem::remove(output);

  std::ostringstream out, err;
  const int code = cli::run({"geodesic", "--config", config.string(), "--out", output.string()}, out, err);
  EXPECT_EQ(code, cli::kSuccess) << err.str();
  EXPECT_TRUE(out.str().empty());
  std::ifstream in(output);
  std::stringstream written;
  written << in.rdbuf();
  EXPECT_EQ(written.str(), exec("geodesic", kExponential).out);

  std::ostringstream out2, err2;
  EXPECT_EQ(cli::run({"geodesic", "--config", (dir / "igeo_missing.json").string()}, out2, err2),
            cli::kInputFailure);
  EXPECT_EQ(cli::run({"geodesic"}, out2, err2), cli::kInputFailure);
  EXPECT_EQ(cli::run({"fly", "--config", config.string()}, out2, err2), cli::kInputFailure);
  std::filesystem::remove(config);
  std::filesystem::remove(output);
}

}  // namespace
}  // namespace igeo

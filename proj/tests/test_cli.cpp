#include "asympartita/cli.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <sstream>

using namespace asympartita;

namespace {
struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::ordered_json run_json(std::vector<std::string> args, int expect = 0) {
  args.insert(args.end(), {"--format", "json", "--no-timestamp"});
  CliRun r = run(args);
  EXPECT_EQ(r.code, expect) << r.err << r.out;
  return nlohmann::ordered_json::parse(r.out);
}

std::vector<std::vector<std::string>> csv_rows(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line) && !line.empty()) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::string json_cell(const nlohmann::ordered_json& j) {
  if (j.is_boolean()) return format_value(j.get<bool>());
  if (j.is_number_integer()) return format_value(j.get<std::int64_t>());
  if (j.is_number_float()) return format_value(j.get<double>());
  return j.get<std::string>();
}

void expect_round_trip(std::vector<std::string> args) {
  auto j = run_json(args);
  args.insert(args.end(), {"--format", "csv", "--no-timestamp"});
  CliRun r = run(args);
  auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), j["rows"].size() + 1);
  std::vector<std::string> cols;
  for (const auto& c : j["columns"]) cols.push_back(c.get<std::string>());
  EXPECT_EQ(rows[0], cols);
  for (std::size_t i = 0; i < j["rows"].size(); ++i)
    for (std::size_t c = 0; c < cols.size(); ++c) EXPECT_EQ(json_cell(j["rows"][i][cols[c]]), rows[i + 1][c]);
}

int system_status(const std::string& cmd) {
  int s = std::system((cmd + " >/dev/null 2>&1").c_str());
  return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
}
}  // namespace

TEST(Cli, ExactPartitionRow) {
  auto j = run_json({"exact", "partition", "--n", "100"});
  ASSERT_EQ(j["rows"].size(), 1u);
  EXPECT_EQ(j["rows"][0]["n"], 100);
  EXPECT_EQ(j["rows"][0]["p_n"], 190569292);
  auto big = run_json({"exact", "partition", "--ns", "1000"});
  EXPECT_EQ(big["rows"][0]["p_n"], "24061467864032622473692149727991");
  EXPECT_NEAR(big["rows"][0]["log_p_n"].get<double>(), 72.2582, 1e-4);
}

TEST(Cli, RatioPartitionCsvDecreasing) {
  CliRun r = run({"ratio", "partition", "--ns", "100,1000,10000", "--format", "csv"});
  EXPECT_EQ(r.code, 0) << r.err;
  auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0][3], "ratio");
  double prev = 1e9;
  for (std::size_t i = 1; i < 4; ++i) {
    double ratio = std::stod(rows[i][3]);
    EXPECT_GT(ratio, 1.0);
    EXPECT_LT(ratio, prev);
    prev = ratio;
  }
}

TEST(Cli, JsonMatchesCsv) {
  expect_round_trip({"ratio", "q-factorial", "--beta", "1", "--ns", "10,100"});
  expect_round_trip({"exact", "partition", "--ns", "5,50,500"});
  expect_round_trip({"sample", "tilting", "--a", "0.3", "--m", "2", "--samples", "5000", "--seed", "3"});
  expect_round_trip({"approx", "constants"});
}

TEST(Cli, DeterministicWithSeed) {
  std::vector<std::string> args{"sample", "partition", "--n", "100", "--samples", "20000", "--seed", "9",
                                "--no-timestamp", "--format", "csv"};
  CliRun a = run(args), b = run(args);
  EXPECT_EQ(a.out, b.out);
  args.insert(args.end(), {"--threads", "3"});
  CliRun c = run(args);
  EXPECT_EQ(csv_rows(a.out), csv_rows(c.out));
  auto other = run({"sample", "partition", "--n", "100", "--samples", "20000", "--seed", "10", "--format", "csv"});
  EXPECT_NE(csv_rows(a.out), csv_rows(other.out));
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"exact", "partition"}).code, 2);
  CliRun bad_key = run({"exact", "partition", "--n", "5", "--tau", "3"});
  EXPECT_EQ(bad_key.code, 2);
  EXPECT_NE(bad_key.err.find("--tau"), std::string::npos);
  EXPECT_EQ(run({"exact", "partition", "--n", "5", "--format", "xml"}).code, 2);
  CliRun no_seed = run({"sample", "exponentials", "--count", "10"});
  EXPECT_EQ(no_seed.code, 2);
  EXPECT_NE(no_seed.err.find("seed"), std::string::npos);
  EXPECT_EQ(run({"exact", "partition", "--n", "5", "--precision", "32"}).code, 2);
  EXPECT_EQ(run({"verify", "13"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, DomainErrorsAreFailedDiagnostics) {
  auto j = run_json({"exact", "bruteforce", "--n", "70"}, 1);
  EXPECT_EQ(j["status"], "fail");
  EXPECT_EQ(j["diagnostics"][0]["check"], "completed");
  EXPECT_EQ(run_json({"approx", "dilog", "--x", "2"}, 1)["status"], "fail");
  EXPECT_EQ(run_json({"sample", "tilting", "--a", "1", "--seed", "1"}, 1)["status"], "fail");
}

TEST(Cli, PrecisionFromEnvironment) {
  setenv(cli::precision_env, "100", 1);
  EXPECT_EQ(run_json({"approx", "zeta3"})["metadata"]["precision_bits"], 100);
  EXPECT_EQ(run_json({"approx", "zeta3", "--precision", "300"})["metadata"]["precision_bits"], 300);
  setenv(cli::precision_env, "lots", 1);
  EXPECT_EQ(run({"approx", "zeta3"}).code, 2);
  unsetenv(cli::precision_env);
  auto j = run_json({"approx", "zeta3"});
  EXPECT_EQ(j["metadata"]["precision_bits"], 256);
  EXPECT_EQ(j["rows"][0]["digits"].get<std::string>().substr(0, 12), "1.2020569031");
}

TEST(Cli, SaddleAndSampleChecks) {
  auto c = run_json({"saddle", "cauchy", "--n", "200"});
  EXPECT_EQ(c["rows"][0]["rounded"], "3972999029388");
  EXPECT_EQ(c["status"], "pass");
  auto inner = run_json({"saddle", "inner", "--n", "7", "--t", "3", "--r", "0.5"});
  EXPECT_EQ(inner["status"], "pass");
  auto clt = run_json({"sample", "clt", "--n", "10000", "--samples", "100000", "--seed", "5"});
  EXPECT_EQ(clt["status"], "pass") << clt.dump();
  auto hist = run_json({"sample", "partition", "--n", "10", "--samples", "20000", "--histogram", "12", "--seed", "2"}, 1);
  EXPECT_EQ(hist["rows"].size(), 13u);
}

TEST(Cli, VerifySingleCriterion) {
  auto j = run_json({"verify", "5", "--seed", "42"});
  ASSERT_EQ(j["rows"].size(), 1u);
  EXPECT_EQ(j["rows"][0]["criterion"], "criterion_5_stirling");
  EXPECT_TRUE(j["rows"][0]["pass"].get<bool>());
  EXPECT_EQ(j["metadata"]["seed"], 42);
  for (const auto& d : j["diagnostics"]) EXPECT_TRUE(d.contains("measured") && d.contains("tolerance"));
}

TEST(Cli, BinaryExitCodes) {
  const std::string bin = ASYMPARTITA_CLI_PATH;
  EXPECT_EQ(system_status(bin + " exact partition --n 10"), 0);
  EXPECT_EQ(system_status(bin + " exact partition --n 10 --bogus 1"), 2);
  EXPECT_EQ(system_status(bin + " approx dilog --x 3"), 1);
  EXPECT_EQ(system_status(bin + " verify 1 --seed 42"), 0);
}

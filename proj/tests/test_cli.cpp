#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mmm/cli.hpp"
#include "mmm/mmm.hpp"

using namespace mmm;
using namespace mmm::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("mmm_cli_" + name)).string();
}

std::string value_line(const std::string& text, const std::string& key) {
  const auto pos = text.find(key);
  if (pos == std::string::npos) return "";
  const auto end = text.find('\n', pos);
  return text.substr(pos + key.size(), end - pos - key.size());
}

BenchRow row(std::size_t k, std::uint64_t seed, bool solved, double t, double root, double opt) {
  BenchRow r;
  r.problem = "knapsack";
  r.size = 50;
  r.gamma = 2.0;
  r.k = k;
  r.seed = seed;
  r.solved = solved;
  r.time_s = t;
  r.nodes = 1 + seed;
  r.root_gap_pct = root;
  r.opt_gap_pct = opt;
  return r;
}

}  // namespace

TEST(CliSolve, MissingFileIsInvalidInput) {
  const auto o = invoke({"solve", "--instance", "/nonexistent/inst.json", "--k", "2"});
  EXPECT_EQ(o.code, kExitInvalidInput);
  EXPECT_NE(o.err.find("invalid input"), std::string::npos);
}

TEST(CliSolve, MalformedArguments) {
  EXPECT_EQ(invoke({"solve", "--gen", "knapsack", "--n", "5"}).code, kExitInvalidInput);
  EXPECT_EQ(invoke({"solve", "--k", "2"}).code, kExitInvalidInput);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitInvalidInput);
}

TEST(CliSolve, KOneMatchesRobustOptimum) {
  const auto rec = gen_knapsack(8, 3);
  const std::string path = temp_path("k1.json");
  save(rec, path);
  const auto o = invoke({"solve", "--instance", path, "--k", "1"});
  std::filesystem::remove(path);
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto inst = rec.instance();
  double best = std::numeric_limits<double>::infinity();
  for (const auto& x : enumerate_feasible(*inst.oracle, 1 << 12))
    best = std::min(best, worst_case(inst.uncertainty, x).value);
  EXPECT_NEAR(std::stod(value_line(o.out, "value: ")), best, 1e-6);
  EXPECT_EQ(value_line(o.out, "status: "), "optimal");
}

TEST(CliSolve, GeneratedInstanceAndOutputs) {
  const std::string inst_path = temp_path("gen.json");
  const std::string sol_path = temp_path("sol.json");
  const auto o = invoke({"solve", "--gen", "shortest_path", "--n", "8", "--gamma", "3", "--seed",
                         "4", "--k", "2", "--save-instance", inst_path, "--solution", sol_path});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NE(o.out.find("root gap: "), std::string::npos);
  EXPECT_NE(o.out.find("nodes: "), std::string::npos);
  const auto back = load(inst_path);
  EXPECT_EQ(back.type, "shortest_path");
  std::ifstream f(sol_path);
  const auto sol = nlohmann::json::parse(f);
  EXPECT_EQ(sol["solutions"].size(), 2u);
  EXPECT_NEAR(sol["value"].get<double>(), std::stod(value_line(o.out, "value: ")), 1e-6);
  std::filesystem::remove(inst_path);
  std::filesystem::remove(sol_path);
}

TEST(CliSolve, NodeCapExitCode) {
  const auto o = invoke({"solve", "--gen", "knapsack", "--n", "50", "--seed", "1", "--k", "2",
                         "--node-cap", "2"});
  EXPECT_EQ(o.code, kExitTimeLimit);
  EXPECT_EQ(value_line(o.out, "status: "), "node cap reached");
}

TEST(CliBounds, RecoverableTable) {
  const auto o = invoke({"bounds", "--example", "recoverable"});
  ASSERT_EQ(o.code, kExitOk);
  for (const char* cell : {"(0.998n)", "(0.98n)", "(0.93n)", "(0.67n)", "(0.23n)", "(0.06n)"})
    EXPECT_NE(o.out.find(cell), std::string::npos) << cell;
}

TEST(CliBounds, Calculators) {
  auto o = invoke({"bounds", "--kadapt", "--mode", "mult", "--mtilde", "2", "--a", "1"});
  ASSERT_EQ(o.code, kExitOk);
  EXPECT_EQ(value_line(o.out, "q = "), "0.666667");
  o = invoke({"bounds", "--additive", "--M", "10", "--n", "1000", "--k", "999"});
  EXPECT_EQ(o.out, "0.01\n");
  o = invoke({"bounds", "--multiplicative", "--mtilde", "2", "--n", "10", "--k", "4"});
  EXPECT_EQ(o.out, "3.4\n");
  o = invoke({"bounds", "--max-l", "--M", "400", "--n", "1000", "--a", "1"});
  EXPECT_EQ(o.out, "2\n");
  o = invoke({"bounds", "--big-m", "--M-inf", "10", "--m-inf", "0", "--p-low", "1", "--p-high",
              "1"});
  EXPECT_EQ(o.out, "10\n");
  o = invoke({"bounds", "--kadapt", "--mode", "add", "--M", "400", "--n", "1000", "--a", "1"});
  EXPECT_EQ(o.out, "k = 998 (0.998n)\n");
  EXPECT_EQ(invoke({"bounds"}).code, kExitInvalidInput);
  EXPECT_EQ(invoke({"bounds", "--min-q", "--mtilde", "2", "--a", "bogus"}).code, kExitInvalidInput);
}

TEST(CliBounds, FacilityExample) {
  const auto o = invoke({"bounds", "--example", "facility"});
  ASSERT_EQ(o.code, kExitOk);
  EXPECT_NE(o.out.find("0.6667"), std::string::npos);
}

TEST(BenchCsv, HeaderAndRowFormat) {
  EXPECT_EQ(std::string(kBenchHeader),
            "problem,n_or_V,gamma,k,seed,solved,time_s,nodes,root_gap_pct,opt_gap_pct");
  EXPECT_EQ(to_csv(row(6, 3, true, 1.23456, 0.0, 0.0)), "knapsack,50,2,6,3,1,1.2346,4,0.00,0.00");
  auto r = row(2, 1, false, 60.0, 1.126, 0.5);
  r.problem = "shortest_path";
  r.gamma = 3.0;
  EXPECT_EQ(to_csv(r), "shortest_path,50,3,2,1,0,60.0000,2,1.13,0.50");
}

TEST(BenchCsv, RoundTrip) {
  std::vector<BenchRow> rows;
  for (std::uint64_t s = 1; s <= 10; ++s)
    for (std::size_t k : {2, 4, 6}) rows.push_back(row(k, s, s % 3 != 0, 0.5 * s, 0.1 * s, 0.0));
  std::stringstream csv;
  csv << kBenchHeader << "\n";
  for (const auto& r : rows) csv << to_csv(r) << "\n";
  const auto back = read_bench_csv(csv);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(to_csv(back[i]), to_csv(rows[i]));
}

TEST(BenchCsv, Aggregate) {
  std::vector<BenchRow> rows;
  for (std::uint64_t s = 1; s <= 10; ++s) rows.push_back(row(6, s, true, 1.0 * s, 0.0, 0.0));
  for (std::uint64_t s = 1; s <= 10; ++s) rows.push_back(row(2, s, s <= 5, 2.0, 1.0 * s, 0.5));
  const auto agg = aggregate(rows);
  ASSERT_EQ(agg.size(), 2u);
  const auto& k2 = agg[0].k == 2 ? agg[0] : agg[1];
  const auto& k6 = agg[0].k == 6 ? agg[0] : agg[1];
  EXPECT_EQ(k6.instances, 10u);
  EXPECT_EQ(k6.solved, 10u);
  EXPECT_NEAR(k6.mean_time_solved, 5.5, 1e-12);
  EXPECT_EQ(k2.solved, 5u);
  EXPECT_NEAR(k2.mean_root_gap_pct, 5.5, 1e-12);
  EXPECT_NEAR(k2.mean_opt_gap_pct, 0.5, 1e-12);
  EXPECT_NEAR(k2.mean_nodes, 6.5, 1e-12);
  std::ostringstream os;
  print_aggregate(agg, os);
  EXPECT_NE(os.str().find("10/10"), std::string::npos);
  EXPECT_NE(os.str().find("5/10"), std::string::npos);
}

TEST(BenchCsv, RejectsMalformedInput) {
  std::stringstream bad_header("problem,n,gamma\nknapsack,50,2\n");
  EXPECT_THROW(read_bench_csv(bad_header), CsvError);
  std::stringstream bad_row(std::string(kBenchHeader) + "\nknapsack,50,2,6\n");
  EXPECT_THROW(read_bench_csv(bad_row), CsvError);
  std::stringstream bad_field(std::string(kBenchHeader) + "\nknapsack,x,2,6,1,1,0.1,1,0,0\n");
  EXPECT_THROW(read_bench_csv(bad_field), CsvError);
  std::stringstream empty;
  EXPECT_THROW(read_bench_csv(empty), CsvError);
}

TEST(BenchCommand, WritesOneRowPerRun) {
  const std::string path = temp_path("bench.csv");
  const auto o = invoke({"bench", "--problem", "knapsack", "--sizes", "8,10", "--ks", "1,2",
                         "--instances", "3", "--time-limit", "5", "--out", path, "--aggregate"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  std::ifstream in(path);
  const auto rows = read_bench_csv(in);
  EXPECT_EQ(rows.size(), 2u * 2u * 3u);
  for (const auto& r : rows) EXPECT_TRUE(r.solved);
  const auto agg = invoke({"bench", "--input", path});
  EXPECT_EQ(agg.code, kExitOk);
  EXPECT_NE(agg.out.find("3/3"), std::string::npos);
  std::filesystem::remove(path);
  EXPECT_EQ(invoke({"bench", "--input", "/nonexistent.csv"}).code, kExitInvalidInput);
}

#pragma once

// Command-line front end: `solve`, `bench` and `bounds`.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "mmm/approx.hpp"
#include "mmm/bnb.hpp"
#include "mmm/guarantees.hpp"
#include "mmm/instances.hpp"

namespace mmm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitTimeLimit = 3;

inline constexpr const char* kBenchHeader =
    "problem,n_or_V,gamma,k,seed,solved,time_s,nodes,root_gap_pct,opt_gap_pct";

inline std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

inline std::string percent(double fraction) {
  if (!std::isfinite(fraction)) return "inf";
  return fixed(100.0 * fraction, 2);
}

/// Directory for default outputs: $MMM_OUTPUT_DIR, else the working directory.
inline std::filesystem::path output_dir() {
  if (const char* d = std::getenv("MMM_OUTPUT_DIR"); d && *d) return d;
  return std::filesystem::current_path();
}

// ---- bench rows ------------------------------------------------------------------

struct BenchRow {
  std::string problem;
  std::size_t size = 0;
  double gamma = 0.0;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  bool solved = false;
  double time_s = 0.0;
  std::size_t nodes = 0;
  double root_gap_pct = 0.0;
  double opt_gap_pct = 0.0;
};

inline std::string format_gamma(double g) {
  std::ostringstream os;
  os << g;
  return os.str();
}

inline std::string to_csv(const BenchRow& r) {
  std::ostringstream os;
  os << r.problem << ',' << r.size << ',' << format_gamma(r.gamma) << ',' << r.k << ',' << r.seed
     << ',' << (r.solved ? 1 : 0) << ',' << fixed(r.time_s, 4) << ',' << r.nodes << ','
     << fixed(r.root_gap_pct, 2) << ',' << fixed(r.opt_gap_pct, 2);
  return os.str();
}

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

/// Parses a bench CSV; the header must match exactly.
inline std::vector<BenchRow> read_bench_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw CsvError("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kBenchHeader) throw CsvError("unexpected header '" + line + "'");
  std::vector<BenchRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 10)
      throw CsvError("line " + std::to_string(lineno) + ": expected 10 fields");
    try {
      BenchRow r;
      r.problem = f[0];
      r.size = std::stoul(f[1]);
      r.gamma = std::stod(f[2]);
      r.k = std::stoul(f[3]);
      r.seed = std::stoull(f[4]);
      r.solved = f[5] == "1";
      r.time_s = std::stod(f[6]);
      r.nodes = std::stoul(f[7]);
      r.root_gap_pct = std::stod(f[8]);
      r.opt_gap_pct = std::stod(f[9]);
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw CsvError("line " + std::to_string(lineno) + ": malformed field");
    }
  }
  return rows;
}

struct AggregateRow {
  std::string problem;
  std::size_t size = 0;
  double gamma = 0.0;
  std::size_t k = 0;
  std::size_t instances = 0;
  std::size_t solved = 0;
  double mean_time_solved = 0.0;  // over solved instances only
  double mean_nodes = 0.0;
  double mean_root_gap_pct = 0.0;
  double mean_opt_gap_pct = 0.0;
};

inline std::vector<AggregateRow> aggregate(const std::vector<BenchRow>& rows) {
  std::map<std::tuple<std::string, std::size_t, double, std::size_t>, AggregateRow> cells;
  for (const auto& r : rows) {
    auto& a = cells[{r.problem, r.size, r.gamma, r.k}];
    a.problem = r.problem;
    a.size = r.size;
    a.gamma = r.gamma;
    a.k = r.k;
    ++a.instances;
    if (r.solved) {
      ++a.solved;
      a.mean_time_solved += r.time_s;
    }
    a.mean_nodes += static_cast<double>(r.nodes);
    a.mean_root_gap_pct += r.root_gap_pct;
    a.mean_opt_gap_pct += r.opt_gap_pct;
  }
  std::vector<AggregateRow> out;
  for (auto& [key, a] : cells) {
    const double cnt = static_cast<double>(a.instances);
    if (a.solved) a.mean_time_solved /= static_cast<double>(a.solved);
    a.mean_nodes /= cnt;
    a.mean_root_gap_pct /= cnt;
    a.mean_opt_gap_pct /= cnt;
    out.push_back(a);
  }
  return out;
}

inline void print_aggregate(const std::vector<AggregateRow>& rows, std::ostream& out) {
  out << std::left << std::setw(15) << "problem" << std::setw(8) << "size" << std::setw(7)
      << "gamma" << std::setw(5) << "k" << std::setw(8) << "solved" << std::setw(10) << "time_s"
      << std::setw(10) << "nodes" << std::setw(12) << "root_gap%" << "opt_gap%\n";
  for (const auto& a : rows) {
    out << std::left << std::setw(15) << a.problem << std::setw(8) << a.size << std::setw(7)
        << format_gamma(a.gamma) << std::setw(5) << a.k << std::setw(8)
        << (std::to_string(a.solved) + "/" + std::to_string(a.instances)) << std::setw(10)
        << (a.solved ? fixed(a.mean_time_solved, 2) : std::string("-")) << std::setw(10)
        << fixed(a.mean_nodes, 1) << std::setw(12) << fixed(a.mean_root_gap_pct, 2)
        << fixed(a.mean_opt_gap_pct, 2) << "\n";
  }
}

// ---- commands ------------------------------------------------------------------

struct GenSpec {
  std::string problem;  // knapsack | shortest_path
  std::size_t n = 50;   // items, or nodes for shortest_path
  double gamma = 3.0;
  std::uint64_t seed = 1;
  double arc_prob = 0.5;
};

inline InstanceRecord generate(const GenSpec& g) {
  if (g.problem == "knapsack") return gen_knapsack(g.n, g.seed);
  if (g.problem == "shortest_path") return gen_shortest_path(g.n, g.gamma, g.seed, g.arc_prob);
  throw std::invalid_argument("unknown generator '" + g.problem + "'");
}

inline std::string describe_tuple(const SolutionTuple& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.k(); ++i) {
    os << "  x" << (i + 1) << ": {";
    const auto ones = t.slots[i].ones();
    for (std::size_t q = 0; q < ones.size(); ++q) os << (q ? "," : "") << ones[q];
    os << "}\n";
  }
  return os.str();
}

inline BenchRow run_cell(const InstanceRecord& rec, const std::string& problem, std::size_t size,
                         std::size_t k, double time_limit) {
  SolveConfig cfg;
  cfg.time_limit = time_limit;
  const auto res = solve(rec.instance(), k, cfg);
  BenchRow r;
  r.problem = problem;
  r.size = size;
  r.gamma = std::get<BudgetedSet>(rec.uncertainty).budget;
  r.k = k;
  r.seed = rec.seed;
  r.solved = res.stats.solved;
  r.time_s = res.stats.wall_time;
  r.nodes = res.stats.nodes_processed;
  r.root_gap_pct = 100.0 * res.stats.root_gap;
  r.opt_gap_pct = 100.0 * res.stats.final_gap;
  return r;
}

inline void print_policy_example(std::ostream& out) {
  out << "recoverable robust: n=1000, M(n)=400, M~=2\n";
  out << std::left << std::setw(10) << "a(n)" << std::setw(20) << "additive" << "multiplicative\n";
  for (const auto& r : recoverable_example()) {
    out << std::left << std::setw(10) << r.a_label << std::setw(20)
        << (std::to_string(r.additive_k) + " (" + r.additive_fraction + "n)")
        << (std::to_string(r.multiplicative_k) + " (" + r.multiplicative_fraction + "n)") << "\n";
  }
}

inline void print_facility_example(std::ostream& out) {
  out << "facility location: n=100000, M~=2, q = M~/(M~+a)\n";
  out << std::left << std::setw(10) << "a(n)" << std::setw(12) << "a" << "q\n";
  for (const auto& r : facility_example()) {
    std::ostringstream q;
    q << std::setprecision(4) << r.q;
    out << std::left << std::setw(10) << r.a_label << std::setw(12) << fixed(r.a, 4) << q.str()
        << "\n";
  }
}

/// Runs the command line `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Min-max-min robust binary optimization: exact solves, benchmarks and bounds",
               "mmm"};
  app.require_subcommand(1);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance exactly by branch & bound");
  std::string instance_path, save_path, solution_path;
  GenSpec gen;
  std::size_t k = 1;
  SolveConfig cfg;
  bool no_symmetry = false;
  double log_interval = 0.0;
  auto* inst_opt = solve_cmd->add_option("--instance", instance_path, "Instance JSON file");
  auto* gen_opt = solve_cmd->add_option("--gen", gen.problem, "Generator: knapsack | shortest_path")
                      ->check(CLI::IsMember({"knapsack", "shortest_path"}));
  inst_opt->excludes(gen_opt);
  solve_cmd->add_option("--n", gen.n, "Items (knapsack) or nodes (shortest_path)");
  solve_cmd->add_option("--gamma", gen.gamma, "Budget for shortest_path instances");
  solve_cmd->add_option("--seed", gen.seed, "Generator seed");
  solve_cmd->add_option("--arc-prob", gen.arc_prob, "Arc probability for shortest_path");
  solve_cmd->add_option("--k", k, "Number of solutions")->required()->check(CLI::PositiveNumber);
  solve_cmd->add_option("--time-limit", cfg.time_limit, "Seconds")->capture_default_str();
  solve_cmd->add_option("--gap-tol", cfg.gap_tol, "Relative optimality tolerance")
      ->capture_default_str();
  solve_cmd->add_option("--node-cap", cfg.node_cap, "Maximum processed nodes (0 = none)");
  solve_cmd->add_flag("--no-symmetry", no_symmetry, "Disable symmetry pruning");
  solve_cmd->add_option("--log-interval", log_interval, "Progress log interval in seconds");
  solve_cmd->add_option("--save-instance", save_path, "Write the instance JSON here");
  solve_cmd->add_option("--solution", solution_path, "Write the solution JSON here");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark sweep writing one CSV row per run");
  std::string bench_problem = "knapsack", bench_out, bench_input;
  std::vector<std::size_t> sizes{50}, ks{2, 4, 6};
  std::vector<double> gammas{3.0};
  std::size_t per_cell = 10, jobs = 1;
  std::uint64_t seed_base = 1;
  double bench_time = 60.0, bench_arc_prob = 0.5;
  bool do_aggregate = false;
  bench_cmd->add_option("--problem", bench_problem)
      ->check(CLI::IsMember({"knapsack", "shortest_path"}))
      ->capture_default_str();
  bench_cmd->add_option("--sizes", sizes, "Item counts or node counts")->delimiter(',');
  bench_cmd->add_option("--gammas", gammas, "Budgets (shortest_path only)")->delimiter(',');
  bench_cmd->add_option("--ks", ks, "Values of k")->delimiter(',');
  bench_cmd->add_option("--instances", per_cell, "Instances per cell")->capture_default_str();
  bench_cmd->add_option("--seed-base", seed_base, "Seed of the first instance");
  bench_cmd->add_option("--time-limit", bench_time, "Seconds per run")->capture_default_str();
  bench_cmd->add_option("--arc-prob", bench_arc_prob, "Arc probability for shortest_path");
  bench_cmd->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", bench_out, "CSV path (default $MMM_OUTPUT_DIR/bench.csv)");
  bench_cmd->add_option("--input", bench_input, "Aggregate an existing CSV instead of running");
  bench_cmd->add_flag("--aggregate", do_aggregate, "Print per-cell means");

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "Analytic guarantee calculators");
  std::string example, mode = "add", a_str = "1", catalog, table;
  bool kadapt = false, additive = false, multiplicative = false, max_l = false, min_q = false,
       threshold = false, bigm = false, mtilde_cmd = false;
  double M = 0.0, mtilde = 0.0, M_inf = 1.0, m_inf = 1.0, p_low = 1.0, p_high = 1.0, l = 1.0,
         delta = 1.0, C = 1.0, eps = 1.0, card_v = 1.0;
  std::size_t bn = 0, bk = 0, bs = 0;
  bool have_s = false;
  bounds_cmd->add_option("--example", example, "recoverable | facility")
      ->check(CLI::IsMember({"recoverable", "facility"}));
  bounds_cmd->add_flag("--kadapt", kadapt, "Policy count for k-adaptability");
  bounds_cmd->add_option("--mode", mode, "add | mult")->check(CLI::IsMember({"add", "mult"}));
  bounds_cmd->add_flag("--additive", additive, "M (k - s)/(s + 1) with s = --s or --k, k = --n");
  bounds_cmd->add_flag("--multiplicative", multiplicative, "1 + M~ (n - k)/(k + 1)");
  bounds_cmd->add_flag("--max-l", max_l, "floor(min(n-1, a n/(M + a)))");
  bounds_cmd->add_flag("--min-q", min_q, "M~/(M~ + a)");
  bounds_cmd->add_flag("--threshold", threshold, "l^(1/delta) (C M_inf/eps + 1)^(1/delta)");
  bounds_cmd->add_flag("--big-m", bigm, "M_inf p_high - m_inf p_low");
  bounds_cmd->add_flag("--m-tilde", mtilde_cmd, "(M_inf/m_inf)(p_high/p_low)");
  bounds_cmd->add_option("--catalog", catalog,
                         "Support bounds of a problem class (spanning_tree_complete, "
                         "matching_complete, cardinality, tsp, vrp, generic)");
  bounds_cmd->add_option("--table", table, "Range table: additive | multiplicative")
      ->check(CLI::IsMember({"additive", "multiplicative"}));
  bounds_cmd->add_option("--M", M, "M(n)");
  bounds_cmd->add_option("--mtilde", mtilde, "M~(n)");
  bounds_cmd->add_option("--M-inf", M_inf, "Upper cost bound");
  bounds_cmd->add_option("--m-inf", m_inf, "Componentwise lower cost bound");
  bounds_cmd->add_option("--p-low", p_low, "Support lower bound (constant)");
  bounds_cmd->add_option("--p-high", p_high, "Support upper bound (constant)");
  bounds_cmd->add_option("--n", bn, "Dimension n");
  bounds_cmd->add_option("--k", bk, "Number of solutions k");
  bounds_cmd->add_option("--s", bs, "Smaller number of solutions s")->each([&](const std::string&) {
    have_s = true;
  });
  bounds_cmd->add_option("--a", a_str, "Guarantee a(n): a number, 'log' or 'sqrt'");
  bounds_cmd->add_option("--l", l, "l for --threshold");
  bounds_cmd->add_option("--delta", delta, "delta for --threshold");
  bounds_cmd->add_option("--C", C, "C for --threshold");
  bounds_cmd->add_option("--eps", eps, "epsilon for --threshold");
  bounds_cmd->add_option("--v", card_v, "Support size for --catalog cardinality");

  std::vector<std::string> argv_storage{"mmm"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalidInput;
  }

  try {
    if (*solve_cmd) {
      if (instance_path.empty() && gen.problem.empty()) {
        err << "solve: one of --instance or --gen is required\n";
        return kExitInvalidInput;
      }
      InstanceRecord rec;
      try {
        rec = instance_path.empty() ? generate(gen) : load(instance_path);
      } catch (const std::exception& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitInvalidInput;
      }
      for (const auto& w : rec.warnings) err << "warning: " << w << "\n";
      if (!save_path.empty()) save(rec, save_path);
      cfg.symmetry_pruning = !no_symmetry;
      if (log_interval > 0.0) {
        cfg.log = &err;
        cfg.log_interval = log_interval;
      }
      const auto inst = rec.instance();
      SolveResult res;
      try {
        res = solve(inst, k, cfg);
      } catch (const InfeasibleSlotError& e) {
        err << "infeasible instance: " << e.what() << "\n";
        return kExitInvalidInput;
      }
      out << "instance: " << rec.type << " n=" << rec.dimension() << " seed=" << rec.seed << "\n";
      out << "k: " << k << "\n";
      out << "value: " << std::setprecision(10) << res.value << "\n";
      out << "lower bound: " << res.lb << "\n";
      out << "root gap: " << percent(res.stats.root_gap) << "%\n";
      out << "opt gap: " << percent(res.stats.final_gap) << "%\n";
      out << "nodes: " << res.stats.nodes_processed << "\n";
      out << "time: " << fixed(res.stats.wall_time, 3) << " s\n";
      out << "status: "
          << (res.stats.solved ? "optimal"
                               : (res.stats.node_cap_hit ? "node cap reached" : "time limit"))
          << "\n";
      out << "solutions:\n" << describe_tuple(res.best);
      if (!solution_path.empty()) {
        nlohmann::json j;
        j["k"] = k;
        j["value"] = res.value;
        j["lower_bound"] = res.lb;
        j["solved"] = res.stats.solved;
        nlohmann::json slots = nlohmann::json::array();
        for (const auto& x : res.best.slots) slots.push_back(x.ones());
        j["solutions"] = slots;
        std::ofstream f(solution_path);
        f << j.dump(2) << "\n";
      }
      return res.stats.solved ? kExitOk : kExitTimeLimit;
    }

    if (*bench_cmd) {
      if (!bench_input.empty()) {
        std::ifstream in(bench_input);
        if (!in) {
          err << "cannot open '" << bench_input << "'\n";
          return kExitInvalidInput;
        }
        print_aggregate(aggregate(read_bench_csv(in)), out);
        return kExitOk;
      }
      const std::filesystem::path path =
          bench_out.empty() ? output_dir() / "bench.csv" : std::filesystem::path(bench_out);
      if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
      std::ofstream csv(path);
      if (!csv) {
        err << "cannot write '" << path.string() << "'\n";
        return kExitInvalidInput;
      }
      csv << kBenchHeader << "\n" << std::flush;

      struct Cell {
        std::size_t size;
        double gamma;
        std::uint64_t seed;
        std::size_t k;
      };
      std::vector<Cell> cells;
      const std::vector<double> gamma_list =
          bench_problem == "knapsack" ? std::vector<double>{-1.0} : gammas;
      for (auto sz : sizes)
        for (double g : gamma_list)
          for (std::size_t i = 0; i < per_cell; ++i)
            for (auto kk : ks) cells.push_back({sz, g, seed_base + i, kk});

      std::vector<BenchRow> rows;
      std::mutex mu;
      std::atomic<std::size_t> next{0};
      std::atomic<bool> failed{false};
      std::string failure;
      auto worker = [&] {
        for (;;) {
          const std::size_t c = next++;
          if (c >= cells.size() || failed) return;
          const auto& cell = cells[c];
          try {
            GenSpec g{bench_problem, cell.size, cell.gamma, cell.seed, bench_arc_prob};
            const auto rec = generate(g);
            auto row = run_cell(rec, bench_problem, cell.size, cell.k, bench_time);
            std::lock_guard<std::mutex> lock(mu);
            csv << to_csv(row) << "\n" << std::flush;
            rows.push_back(std::move(row));
          } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(mu);
            failed = true;
            failure = e.what();
          }
        }
      };
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < std::max<std::size_t>(1, jobs); ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
      if (failed) {
        err << "bench failed: " << failure << "\n";
        return kExitFailure;
      }
      out << "wrote " << rows.size() << " rows to " << path.string() << "\n";
      if (do_aggregate) print_aggregate(aggregate(rows), out);
      return kExitOk;
    }

    if (*bounds_cmd) {
      const auto a_fn = parse_guarantee(a_str);
      GuaranteeProfile prof;
      prof.M_inf = M_inf;
      prof.m_inf = m_inf;
      prof.p_low = PFunction::constant(p_low);
      prof.p_high = PFunction::constant(p_high);
      out << std::setprecision(6);
      if (!example.empty()) {
        if (example == "recoverable")
          print_policy_example(out);
        else
          print_facility_example(out);
      } else if (kadapt) {
        if (mode == "add") {
          if (bn == 0) throw std::invalid_argument("--kadapt --mode add needs --n");
          const double a = a_fn.a(bn);
          const auto kk = kadapt_additive(M, bn, a);
          out << "k = " << kk << " (" << format_fraction(kk, bn) << "n)\n";
        } else {
          const double a = a_fn.a(bn ? bn : 1);
          const double q = min_q_multiplicative(mtilde, a);
          out << "q = " << q << "\n";
          if (bn) {
            const auto kk = kadapt_multiplicative(mtilde, bn, a);
            out << "k = " << kk << " (" << format_fraction(kk, bn) << "n)\n";
          }
        }
      } else if (additive) {
        const std::size_t s = have_s ? bs : bk;
        out << additive_bound(M, s, bn) << "\n";
      } else if (multiplicative) {
        const std::size_t s = have_s ? bs : bk;
        out << multiplicative_bound(mtilde, s, bn) << "\n";
      } else if (max_l) {
        out << max_l_additive(M, bn, a_fn.a(bn)) << "\n";
      } else if (min_q) {
        out << min_q_multiplicative(mtilde, a_fn.a(bn ? bn : 1)) << "\n";
      } else if (threshold) {
        out << n_threshold(l, delta, C, M_inf, eps) << "\n";
      } else if (bigm) {
        out << big_m(prof, bn ? bn : 1) << "\n";
      } else if (mtilde_cmd) {
        out << m_tilde(prof, bn ? bn : 1) << "\n";
      } else if (!catalog.empty()) {
        const auto pp = profile_catalog(parse_problem_class(catalog), card_v);
        out << "p_low = " << pp.p_low.describe() << ", p_high = " << pp.p_high.describe();
        if (bn) out << "  (n=" << bn << ": " << pp.p_low(bn) << ", " << pp.p_high(bn) << ")";
        out << "\n";
      } else if (!table.empty()) {
        if (bn == 0) throw std::invalid_argument("--table needs --n");
        const std::vector<std::pair<std::string, PFunction>> rows{
            {"const v=" + format_gamma(p_high), PFunction::constant(p_high)},
            {"log n", PFunction::log_n()},
            {"sqrt(n)", PFunction::sqrt_n()}};
        const std::vector<GuaranteeFunction> cols{guarantee_constant(1.0), guarantee_log(),
                                                  guarantee_sqrt()};
        const auto t = table == "additive" ? additive_range_table(prof, rows, cols, bn)
                                           : multiplicative_range_table(prof, rows, cols, bn);
        out << std::left << std::setw(14) << "p \\ a(n)";
        for (const auto& c : t.column_labels) out << std::setw(14) << c;
        out << "\n";
        for (std::size_t r = 0; r < t.row_labels.size(); ++r) {
          out << std::left << std::setw(14) << t.row_labels[r];
          for (double v : t.k0[r]) out << std::setw(14) << fixed(v, 2);
          out << "\n";
        }
      } else {
        err << "bounds: choose a calculator (see --help)\n";
        return kExitInvalidInput;
      }
      return kExitOk;
    }
  } catch (const InstanceFormatError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitInvalidInput;
}

}  // namespace mmm::cli

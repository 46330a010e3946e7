#pragma once

// Exact branch & bound over k-tuples of solutions. Bounds come from column
// generation under per-slot fixations; incumbents from the approximation at the
// root and a scenario-averaging heuristic at every node.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "mmm/approx.hpp"
#include "mmm/instance.hpp"
#include "mmm/lower_bound.hpp"

namespace mmm {

struct SolveConfig {
  double time_limit = 60.0;  // seconds
  double gap_tol = 1e-6;
  std::size_t node_cap = 0;  // 0 = unlimited
  bool symmetry_pruning = true;
  bool node_heuristic = true;
  LowerBoundOptions lower_bound;
  std::ostream* log = nullptr;
  double log_interval = 5.0;  // seconds
};

struct SolveStats {
  std::size_t nodes_processed = 0;
  double root_lb = 0.0;
  double root_value = 0.0;
  double root_gap = 0.0;
  double final_gap = 0.0;
  double wall_time = 0.0;
  bool solved = false;
  bool time_limit_hit = false;
  bool node_cap_hit = false;
};

struct SolveResult {
  SolutionTuple best;
  double value = 0.0;
  double lb = 0.0;
  SolveStats stats;
};

/// (value - lb) / |value|; zero when both agree.
inline double relative_gap(double value, double lb) {
  const double diff = std::max(0.0, value - lb);
  if (diff == 0.0) return 0.0;
  const double den = std::abs(value);
  return den > 0.0 ? diff / den : std::numeric_limits<double>::infinity();
}

/// Key identifying a fixation set up to permutation of its slots.
inline std::string canonical_key(const FixationSet& fix) {
  std::vector<std::string> parts;
  parts.reserve(fix.k());
  for (const auto& s : fix.slots()) {
    auto zero = s.zero, one = s.one;
    std::sort(zero.begin(), zero.end());
    std::sort(one.begin(), one.end());
    std::string enc = "0:";
    for (Index j : zero) enc += std::to_string(j) + ",";
    enc += "1:";
    for (Index j : one) enc += std::to_string(j) + ",";
    parts.push_back(std::move(enc));
  }
  std::sort(parts.begin(), parts.end());
  std::string key;
  for (const auto& p : parts) key += p + "|";
  return key;
}

struct BranchChoice {
  Index slot = 0;
  Index var = 0;
};

class FullyFixedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Prefers a variable that is one in a tight column, has positive worst-case
/// cost and is still free in that column's slot; otherwise the first free
/// position (slot-major).
inline BranchChoice branch_select(const LowerBoundReport& rep, const FixationSet& fix) {
  const auto& c = rep.worst_scenario;
  for (const auto& t : rep.tight_columns) {
    const auto& s = fix.slot(t.slot);
    for (Index j = 0; j < t.column.size(); ++j)
      if (t.column[j] && c[j] > 0.0 && !s.fixed(j)) return {t.slot, j};
  }
  const std::size_t n = rep.worst_scenario.size();
  for (Index i = 0; i < fix.k(); ++i)
    for (Index j = 0; j < n; ++j)
      if (!fix.slot(i).fixed(j)) return {i, j};
  throw FullyFixedError("branch_select: every position is fixed");
}

/// One column per slot: first the column with least average cost over the
/// scenario pool, then greedily the column that lowers the pool-average of
/// min_selected c^T x the most.
inline SolutionTuple node_heuristic(const LowerBoundReport& rep, std::size_t k) {
  const auto& C = rep.scenario_pool;
  if (C.empty()) throw std::invalid_argument("node_heuristic: empty scenario pool");
  if (rep.slot_columns.size() != k) throw std::invalid_argument("node_heuristic: slot count");
  for (const auto& cols : rep.slot_columns)
    if (cols.empty()) throw std::invalid_argument("node_heuristic: slot without columns");
  const double inv = 1.0 / static_cast<double>(C.size());

  std::vector<BinarySolution> pick(k);
  std::vector<bool> taken(k, false);
  Index best_slot = 0;
  const BinarySolution* best_col = nullptr;
  double best = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < k; ++i) {
    for (const auto& x : rep.slot_columns[i]) {
      double avg = 0.0;
      for (const auto& c : C) avg += dot(c, x);
      avg *= inv;
      if (avg < best) {
        best = avg;
        best_slot = i;
        best_col = &x;
      }
    }
  }
  pick[best_slot] = *best_col;
  taken[best_slot] = true;
  std::vector<double> m(C.size());
  for (Index s = 0; s < C.size(); ++s) m[s] = dot(C[s], *best_col);

  for (std::size_t round = 1; round < k; ++round) {
    best = std::numeric_limits<double>::infinity();
    best_col = nullptr;
    for (Index i = 0; i < k; ++i) {
      if (taken[i]) continue;
      for (const auto& x : rep.slot_columns[i]) {
        double diff = 0.0;
        for (Index s = 0; s < C.size(); ++s) diff += std::min(dot(C[s], x), m[s]) - m[s];
        diff *= inv;
        if (diff < best) {
          best = diff;
          best_slot = i;
          best_col = &x;
        }
      }
    }
    pick[best_slot] = *best_col;
    taken[best_slot] = true;
    for (Index s = 0; s < C.size(); ++s) m[s] = std::min(m[s], dot(C[s], *best_col));
  }
  return SolutionTuple(std::move(pick));
}

namespace detail {

struct Node {
  FixationSet fix;
  double lb = 0.0;
  std::size_t depth = 0;
  std::size_t seq = 0;
  LowerBoundReport report;
};

struct NodeOrder {
  // priority_queue pops the largest: invert for smallest lb, deeper, older.
  bool operator()(const Node& a, const Node& b) const {
    if (a.lb != b.lb) return a.lb > b.lb;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.seq > b.seq;
  }
};

inline bool fully_fixed(const FixationSet& fix, std::size_t n) {
  return std::all_of(fix.slots().begin(), fix.slots().end(),
                     [n](const SlotFixation& s) { return s.count() == n; });
}

}  // namespace detail

inline SolveResult solve(const Instance& inst, std::size_t k, const SolveConfig& cfg = {}) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - t0).count(); };
  inst.validate();
  if (k == 0) throw std::invalid_argument("solve: k must be >= 1");
  const std::size_t n = inst.dimension();

  SolveResult res;
  const auto hull = solve_convex_hull(inst, cfg.lower_bound);
  const auto app = approximate_from_hull(inst, hull, k);
  res.best = app.tuple;
  res.value = app.value;

  auto tol_at = [&](double v) { return cfg.gap_tol * std::max(1.0, std::abs(v)); };
  auto offer = [&](const SolutionTuple& t, double v) {
    if (v < res.value) {
      res.value = v;
      res.best = t;
    }
  };

  detail::Node root;
  root.fix = FixationSet(k);
  root.report = lower_bound(inst, k, root.fix, cfg.lower_bound);
  root.lb = root.report.value;
  res.stats.root_lb = root.lb;
  res.stats.root_value = app.value;
  res.stats.root_gap = relative_gap(app.value, root.lb);

  std::priority_queue<detail::Node, std::vector<detail::Node>, detail::NodeOrder> open;
  std::unordered_set<std::string> seen;
  if (cfg.symmetry_pruning) seen.insert(canonical_key(root.fix));
  double pruned_min = std::numeric_limits<double>::infinity();
  std::size_t seq = 0;
  open.push(std::move(root));

  double last_log = 0.0;
  auto log_line = [&](double global_lb) {
    if (!cfg.log) return;
    *cfg.log << "nodes=" << res.stats.nodes_processed << " open=" << open.size()
             << " lb=" << global_lb << " incumbent=" << res.value
             << " gap=" << 100.0 * relative_gap(res.value, global_lb) << "%\n";
  };

  bool exhausted = false;
  for (;;) {
    if (open.empty()) {
      exhausted = true;
      break;
    }
    if (elapsed() > cfg.time_limit) {
      res.stats.time_limit_hit = true;
      break;
    }
    if (cfg.node_cap && res.stats.nodes_processed >= cfg.node_cap) {
      res.stats.node_cap_hit = true;
      break;
    }
    detail::Node node = open.top();
    open.pop();
    if (node.lb >= res.value - tol_at(res.value)) {
      // a root closed by its own bound still counts as one processed node
      if (node.depth == 0) ++res.stats.nodes_processed;
      pruned_min = std::min(pruned_min, node.lb);
      continue;
    }
    ++res.stats.nodes_processed;
    if (cfg.log && elapsed() - last_log >= cfg.log_interval) {
      last_log = elapsed();
      log_line(std::min(node.lb, pruned_min));
    }

    if (detail::fully_fixed(node.fix, n)) {
      std::vector<BinarySolution> leaf;
      for (const auto& cols : node.report.slot_columns) leaf.push_back(cols.front());
      SolutionTuple t(std::move(leaf));
      offer(t, evaluate(inst, t).value);
      continue;
    }
    if (cfg.node_heuristic) {
      auto t = node_heuristic(node.report, k);
      offer(t, evaluate(inst, t).value);
    }
    if (node.lb >= res.value - tol_at(res.value)) {
      pruned_min = std::min(pruned_min, node.lb);
      continue;
    }

    const auto br = branch_select(node.report, node.fix);
    for (const bool v : {false, true}) {
      detail::Node child;
      child.fix = node.fix.with(br.slot, br.var, v);
      if (cfg.symmetry_pruning && !seen.insert(canonical_key(child.fix)).second) continue;
      try {
        child.report = lower_bound(inst, k, child.fix, cfg.lower_bound);
      } catch (const InfeasibleSlotError&) {
        continue;
      }
      child.lb = std::max(node.lb, child.report.value);
      child.depth = node.depth + 1;
      child.seq = ++seq;
      if (child.lb >= res.value - tol_at(res.value)) {
        pruned_min = std::min(pruned_min, child.lb);
        continue;
      }
      open.push(std::move(child));
    }
  }

  double lb = std::min(res.value, pruned_min);
  if (!open.empty()) lb = std::min(lb, open.top().lb);
  res.lb = std::max(lb, res.stats.root_lb);
  res.lb = std::min(res.lb, res.value);
  res.stats.final_gap = std::min(relative_gap(res.value, res.lb), res.stats.root_gap);
  res.stats.solved = exhausted || res.value - res.lb <= tol_at(res.value);
  res.stats.wall_time = elapsed();
  log_line(res.lb);
  return res;
}

// ---- exhaustive reference ----------------------------------------------------

struct BruteForceResult {
  SolutionTuple best;
  double value = std::numeric_limits<double>::infinity();
};

/// Exact optimum by evaluating every admissible tuple. Slots sharing the
/// fixation of every other slot are treated as a multiset.
inline BruteForceResult brute_force(const Instance& inst, std::size_t k, const FixationSet& fix,
                                    std::size_t guard = 20) {
  inst.validate();
  if (k == 0) throw std::invalid_argument("brute_force: k must be >= 1");
  if (fix.k() != k) throw std::invalid_argument("brute_force: fixation slot count differs from k");
  fix.validate(inst.dimension());
  const auto all = enumerate_feasible(*inst.oracle, guard);

  std::vector<std::vector<Index>> choices(k);
  for (Index i = 0; i < k; ++i) {
    for (Index e = 0; e < all.size(); ++e)
      if (respects(all[e], fix.slot(i))) choices[i].push_back(e);
    if (choices[i].empty()) throw InfeasibleSlotError(i);
  }
  const bool symmetric =
      std::all_of(fix.slots().begin(), fix.slots().end(),
                  [&](const SlotFixation& s) { return s == fix.slot(0); });

  BruteForceResult out;
  std::vector<std::size_t> pos(k, 0);
  for (;;) {
    SolutionTuple t;
    for (Index i = 0; i < k; ++i) t.slots.push_back(all[choices[i][pos[i]]]);
    const double v = evaluate(inst, t).value;
    if (v < out.value) {
      out.value = v;
      out.best = std::move(t);
    }
    // Odometer; in the symmetric case positions stay nondecreasing.
    Index i = k;
    while (i-- > 0) {
      if (++pos[i] < choices[i].size()) break;
      pos[i] = 0;
    }
    if (i == static_cast<Index>(-1)) break;
    if (symmetric)
      for (Index q = i + 1; q < k; ++q) pos[q] = pos[i];
  }
  return out;
}

inline BruteForceResult brute_force(const Instance& inst, std::size_t k, std::size_t guard = 20) {
  return brute_force(inst, k, FixationSet(k), guard);
}

}  // namespace mmm

#pragma once

// Column-generation lower bound under per-slot fixations, and the convex-hull
// solver (k = 1, no fixations) with recovery of convex weights.

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "mmm/core.hpp"
#include "mmm/instance.hpp"
#include "mmm/lp.hpp"
#include "mmm/uncertainty.hpp"

namespace mmm {

class InfeasibleSlotError : public std::runtime_error {
 public:
  InfeasibleSlotError(Index slot)
      : std::runtime_error("slot " + std::to_string(slot) + " has no feasible solution"),
        slot_(slot) {}
  Index slot() const noexcept { return slot_; }

 private:
  Index slot_;
};

class IterationLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LowerBoundOptions {
  double tol = 1e-6;
  /// 0 selects 10 * n.
  std::size_t max_iterations = 0;
};

struct TightColumn {
  Index slot = 0;
  BinarySolution column;
};

struct LowerBoundReport {
  /// Valid lower bound: min over slots of the oracle value at c*.
  double value = 0.0;
  /// Final master objective z*; value <= master_value <= value + tol.
  double master_value = 0.0;
  Scenario worst_scenario;
  /// Per slot, the generated columns. Slots with equal fixations share contents.
  std::vector<std::vector<BinarySolution>> slot_columns;
  /// Slot -> index of its distinct fixation.
  std::vector<Index> slot_group;
  std::vector<Scenario> scenario_pool;
  std::vector<TightColumn> tight_columns;
  /// Master values, one per iteration.
  std::vector<double> history;
  std::size_t iterations = 0;
  std::size_t oracle_calls = 0;

  std::size_t distinct_slots() const {
    return slot_group.empty() ? 0 : *std::max_element(slot_group.begin(), slot_group.end()) + 1;
  }
};

namespace detail {

inline void add_scenario(std::vector<Scenario>& pool, const Scenario& c) {
  for (const auto& s : pool) {
    bool same = true;
    for (Index j = 0; j < c.size() && same; ++j) same = std::abs(s[j] - c[j]) <= 1e-9;
    if (same) return;
  }
  pool.push_back(c);
}

}  // namespace detail

/// max_{c in U} min_i min_{x in X(J0^i, J1^i)} c^T x by column generation.
inline LowerBoundReport lower_bound(const Instance& inst, std::size_t k, const FixationSet& fix,
                                    const LowerBoundOptions& opt = {}) {
  inst.validate();
  const std::size_t n = inst.dimension();
  if (k == 0) throw std::invalid_argument("lower_bound: k must be >= 1");
  if (fix.k() != k) throw std::invalid_argument("lower_bound: fixation slot count differs from k");
  fix.validate(n);

  LowerBoundReport rep;
  std::vector<SlotFixation> groups;
  std::vector<Index> first_slot;
  for (Index i = 0; i < k; ++i) {
    const auto& f = fix.slot(i);
    auto it = std::find(groups.begin(), groups.end(), f);
    if (it == groups.end()) {
      rep.slot_group.push_back(groups.size());
      groups.push_back(f);
      first_slot.push_back(i);
    } else {
      rep.slot_group.push_back(static_cast<Index>(it - groups.begin()));
    }
  }
  const std::size_t kp = groups.size();

  std::vector<std::vector<BinarySolution>> pool(kp);
  std::vector<std::unordered_set<BinarySolution, BinarySolutionHash>> pool_keys(kp);
  std::vector<BinarySolution> columns;
  std::unordered_set<BinarySolution, BinarySolutionHash> column_keys;
  auto add_column = [&](Index g, const BinarySolution& x) {
    bool added = false;
    if (pool_keys[g].insert(x).second) {
      pool[g].push_back(x);
      added = true;
    }
    if (column_keys.insert(x).second) columns.push_back(x);
    return added;
  };

  const Scenario nominal = nominal_scenario(inst.uncertainty);
  for (Index g = 0; g < kp; ++g) {
    auto x = inst.oracle->solve(nominal.costs, groups[g]);
    ++rep.oracle_calls;
    if (!x) throw InfeasibleSlotError(first_slot[g]);
    add_column(g, *x);
  }

  const std::size_t cap = opt.max_iterations ? opt.max_iterations : 10 * std::max<std::size_t>(n, 1);
  std::vector<double> oracle_value(kp);
  for (;;) {
    if (rep.iterations >= cap)
      throw IterationLimitError("lower_bound: iteration cap " + std::to_string(cap) + " reached");
    ++rep.iterations;
    const WorstCase wc = max_min(inst.uncertainty, columns);
    const double z = wc.value;
    if (!rep.history.empty()) {
      const double prev = rep.history.back();
      if (z > prev + 1e-7 * std::max(1.0, std::abs(prev)))
        throw std::logic_error("lower_bound: master value increased from " +
                               std::to_string(prev) + " to " + std::to_string(z));
    }
    rep.history.push_back(z);
    rep.worst_scenario = wc.c_star;
    rep.master_value = z;
    detail::add_scenario(rep.scenario_pool, wc.c_star);

    bool grew = false;
    for (Index g = 0; g < kp; ++g) {
      auto x = inst.oracle->solve(wc.c_star.costs, groups[g]);
      ++rep.oracle_calls;
      if (!x) throw InfeasibleSlotError(first_slot[g]);
      oracle_value[g] = dot(wc.c_star, *x);
      if (oracle_value[g] < z - opt.tol) grew |= add_column(g, *x);
    }
    if (!grew) break;
  }

  rep.value = std::min(rep.master_value, *std::min_element(oracle_value.begin(), oracle_value.end()));
  rep.slot_columns.resize(k);
  for (Index i = 0; i < k; ++i) rep.slot_columns[i] = pool[rep.slot_group[i]];
  for (Index i = 0; i < k; ++i) {
    for (const auto& x : rep.slot_columns[i]) {
      if (std::abs(dot(rep.worst_scenario, x) - rep.master_value) <= opt.tol)
        rep.tight_columns.push_back({i, x});
    }
  }
  return rep;
}

// ---- convex weights --------------------------------------------------------

struct ReweightResult {
  double value = 0.0;
  Vector weights;
};

/// min_{lambda in simplex} max_{c in U} c^T (sum_i lambda_i x^i), dualizing the inner max.
inline ReweightResult reweight(const UncertaintySet& set, const std::vector<BinarySolution>& columns) {
  if (columns.empty()) throw std::invalid_argument("reweight: no columns");
  const std::size_t n = dimension(set);
  const std::size_t N = columns.size();
  for (const auto& x : columns) require_same_dim(x.size(), n, "reweight");

  LinearProgram lp;
  lp.sense = Sense::minimize;
  if (const auto* u = std::get_if<BudgetedSet>(&set)) {
    for (const auto& x : columns) lp.add_variable(dot(u->mean, x));
    std::vector<Index> active;
    for (Index j = 0; j < n; ++j) {
      if (u->deviation[j] <= 0.0) continue;
      if (std::any_of(columns.begin(), columns.end(), [j](const auto& x) { return x[j]; }))
        active.push_back(j);
    }
    const Index theta = lp.add_variable(u->budget);
    const Index rho0 = lp.num_vars();
    for (std::size_t a = 0; a < active.size(); ++a) lp.add_variable(1.0);
    for (std::size_t a = 0; a < active.size(); ++a) {
      const Index j = active[a];
      Vector row(lp.num_vars(), 0.0);
      for (Index i = 0; i < N; ++i)
        if (columns[i][j]) row[i] = -u->deviation[j];
      row[theta] = 1.0;
      row[rho0 + a] = 1.0;
      lp.add_row(std::move(row), Relation::greater_equal, 0.0);
    }
  } else {
    const auto& p = std::get<PolytopeSet>(set);
    for (Index i = 0; i < N; ++i) lp.add_variable(0.0);
    const Index y0 = lp.num_vars();
    for (Index r = 0; r < p.A().size(); ++r) lp.add_variable(p.b()[r]);
    for (Index j = 0; j < n; ++j) {
      Vector row(lp.num_vars(), 0.0);
      for (Index i = 0; i < N; ++i)
        if (columns[i][j]) row[i] = -1.0;
      for (Index r = 0; r < p.A().size(); ++r) row[y0 + r] = p.A()[r][j];
      lp.add_row(std::move(row), Relation::equal, 0.0);
    }
  }
  Vector simplex(lp.num_vars(), 0.0);
  for (Index i = 0; i < N; ++i) simplex[i] = 1.0;
  lp.add_row(std::move(simplex), Relation::equal, 1.0);

  const auto sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal)
    throw std::runtime_error("reweight: LP " + std::string(to_string(sol.status)));
  ReweightResult out;
  out.value = sol.objective_value;
  out.weights.assign(sol.primal.begin(), sol.primal.begin() + static_cast<long>(N));
  double sum = 0.0;
  for (double& w : out.weights) {
    if (w < 1e-12) w = 0.0;
    sum += w;
  }
  for (double& w : out.weights) w /= sum;
  return out;
}

/// Drops columns until the support is affinely independent, keeping sum_i lambda_i x^i.
/// Zero-weight columns are removed; the order of the survivors is preserved.
inline ConvexPoint reduce_support(const ConvexPoint& point) {
  point.validate();
  const std::size_t n = point.columns.front().size();
  std::vector<BinarySolution> cols;
  Vector lam;
  for (Index i = 0; i < point.columns.size(); ++i) {
    if (point.weights[i] > 0.0) {
      cols.push_back(point.columns[i]);
      lam.push_back(point.weights[i]);
    }
  }
  constexpr double eps = 1e-9;
  for (;;) {
    const std::size_t m = cols.size();
    const std::size_t rows = n + 1;
    if (m <= 1) break;
    // Reduced row echelon form of [x^1 ... x^m; 1 ... 1].
    std::vector<Vector> A(rows, Vector(m, 1.0));
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < m; ++i) A[j][i] = cols[i][j] ? 1.0 : 0.0;
    std::vector<Index> pivot_col;
    Index r = 0;
    for (Index c = 0; c < m && r < rows; ++c) {
      Index best = r;
      for (Index q = r + 1; q < rows; ++q)
        if (std::abs(A[q][c]) > std::abs(A[best][c])) best = q;
      if (std::abs(A[best][c]) <= eps) continue;
      std::swap(A[r], A[best]);
      const double piv = A[r][c];
      for (double& v : A[r]) v /= piv;
      for (Index q = 0; q < rows; ++q) {
        if (q == r || A[q][c] == 0.0) continue;
        const double f = A[q][c];
        for (Index t = 0; t < m; ++t) A[q][t] -= f * A[r][t];
      }
      pivot_col.push_back(c);
      ++r;
    }
    if (pivot_col.size() == m) break;
    Index free_col = 0;
    for (Index c = 0; c < m; ++c) {
      if (std::find(pivot_col.begin(), pivot_col.end(), c) == pivot_col.end()) {
        free_col = c;
        break;
      }
    }
    Vector mu(m, 0.0);
    mu[free_col] = 1.0;
    for (Index q = 0; q < pivot_col.size(); ++q) mu[pivot_col[q]] = -A[q][free_col];
    // sum(mu) = 0 and mu != 0, so some entry is positive.
    Index drop = m;
    double step = kInf;
    for (Index i = 0; i < m; ++i) {
      if (mu[i] > eps && lam[i] / mu[i] < step) {
        step = lam[i] / mu[i];
        drop = i;
      }
    }
    if (drop == m) break;
    for (Index i = 0; i < m; ++i) lam[i] = std::max(0.0, lam[i] - step * mu[i]);
    lam[drop] = 0.0;
    std::vector<BinarySolution> keep_cols;
    Vector keep_lam;
    for (Index i = 0; i < m; ++i) {
      if (lam[i] > 1e-14) {
        keep_cols.push_back(std::move(cols[i]));
        keep_lam.push_back(lam[i]);
      }
    }
    cols = std::move(keep_cols);
    lam = std::move(keep_lam);
  }
  double sum = 0.0;
  for (double w : lam) sum += w;
  for (double& w : lam) w /= sum;
  return {std::move(cols), std::move(lam)};
}

struct ConvexHullResult {
  /// Lower bound from column generation.
  double value = 0.0;
  /// Objective of the reweighting LP; equals `value` up to the tolerance.
  double reweight_value = 0.0;
  /// All generated columns with their optimal weights, in generation order.
  ConvexPoint weights;
  /// Affinely independent subset of the weighted columns.
  ConvexPoint point;
  LowerBoundReport report;
};

/// min_{x in conv(X)} max_{c in U} c^T x.
inline ConvexHullResult solve_convex_hull(const Instance& inst, const LowerBoundOptions& opt = {}) {
  ConvexHullResult out;
  out.report = lower_bound(inst, 1, FixationSet(1), opt);
  const auto& cols = out.report.slot_columns.front();
  const auto rw = reweight(inst.uncertainty, cols);
  out.value = out.report.value;
  out.reweight_value = rw.value;
  const double slack = 10.0 * opt.tol * std::max(1.0, std::abs(out.value)) + 1e-7;
  if (std::abs(rw.value - out.report.master_value) > slack)
    throw std::runtime_error("solve_convex_hull: reweighting value " + std::to_string(rw.value) +
                             " disagrees with master value " +
                             std::to_string(out.report.master_value));
  out.weights = ConvexPoint{cols, rw.weights};
  out.point = reduce_support(out.weights);
  return out;
}

}  // namespace mmm

#pragma once

// Dense linear-programming solver: two-phase primal simplex on a bounded-variable
// tableau. Dantzig pricing, switching to Bland's rule once the pivot budget is spent.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmm/core.hpp"

namespace mmm {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { maximize, minimize };
enum class Relation { less_equal, equal, greater_equal };
enum class LpStatus { optimal, infeasible, unbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "?";
}

struct LpRow {
  Vector coeffs;
  Relation relation = Relation::less_equal;
  double rhs = 0.0;
};

struct LinearProgram {
  Sense sense = Sense::minimize;
  Vector objective;
  std::vector<LpRow> rows;
  Vector lower;  // per variable, may be -inf
  Vector upper;  // per variable, may be +inf

  std::size_t num_vars() const noexcept { return objective.size(); }

  /// Appends a variable and returns its index. Existing rows are padded with 0.
  Index add_variable(double cost, double lo = 0.0, double hi = kInf) {
    objective.push_back(cost);
    lower.push_back(lo);
    upper.push_back(hi);
    for (auto& r : rows) r.coeffs.push_back(0.0);
    return objective.size() - 1;
  }

  void add_row(Vector coeffs, Relation rel, double rhs) {
    require_same_dim(coeffs.size(), num_vars(), "LinearProgram::add_row");
    rows.push_back({std::move(coeffs), rel, rhs});
  }

  void validate() const {
    require_same_dim(lower.size(), num_vars(), "LinearProgram lower bounds");
    require_same_dim(upper.size(), num_vars(), "LinearProgram upper bounds");
    for (const auto& r : rows) require_same_dim(r.coeffs.size(), num_vars(), "LinearProgram row");
    for (Index j = 0; j < num_vars(); ++j) {
      if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j] ||
          lower[j] == kInf || upper[j] == -kInf) {
        throw std::invalid_argument("LinearProgram: invalid bounds on variable " +
                                    std::to_string(j));
      }
    }
  }
};

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Vector primal;
  double objective_value = 0.0;
  std::size_t pivots = 0;
};

/// Raised when the pivot cap is exhausted; never reported as a status.
class LpNumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SimplexOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-11;
  /// Dantzig pivots allowed before switching to Bland's rule.
  std::size_t dantzig_budget = 5000;
  /// Hard cap; 0 selects 50 * (rows + columns) + 10000.
  std::size_t max_pivots = 0;
};

namespace detail {

class BoundedTableau {
 public:
  enum class State : unsigned char { basic, at_lower, at_upper };

  BoundedTableau(std::size_t m, std::size_t n) : m_(m), n_(n), t_(m * n, 0.0) {}

  double& at(Index i, Index j) { return t_[i * n_ + j]; }
  double at(Index i, Index j) const { return t_[i * n_ + j]; }

  std::size_t m_, n_;
  std::vector<double> t_;
  Vector beta;          // values of basic variables
  std::vector<Index> basis;
  std::vector<State> state;
  Vector upper;         // lower bounds are all zero
  std::vector<bool> blocked;  // never allowed to enter
  Vector cost;
  Vector reduced;

  void compute_reduced() {
    reduced.assign(n_, 0.0);
    for (Index j = 0; j < n_; ++j) reduced[j] = cost[j];
    for (Index i = 0; i < m_; ++i) {
      const double cb = cost[basis[i]];
      if (cb == 0.0) continue;
      const double* row = &t_[i * n_];
      for (Index j = 0; j < n_; ++j) reduced[j] -= cb * row[j];
    }
    for (Index i = 0; i < m_; ++i) reduced[basis[i]] = 0.0;
  }

  double value_of(Index j) const {
    switch (state[j]) {
      case State::at_lower: return 0.0;
      case State::at_upper: return upper[j];
      case State::basic: break;
    }
    for (Index i = 0; i < m_; ++i)
      if (basis[i] == j) return beta[i];
    return 0.0;
  }

  // Moves nonbasic q by `step` (signed) and makes it basic in row r.
  void pivot(Index r, Index q, double step, bool leaving_to_upper) {
    const Index leaving = basis[r];
    const double entering_start = state[q] == State::at_upper ? upper[q] : 0.0;
    for (Index i = 0; i < m_; ++i) {
      const double a = at(i, q);
      if (a != 0.0) beta[i] -= step * a;
    }
    beta[r] = entering_start + step;

    const double p = at(r, q);
    double* prow = &t_[r * n_];
    for (Index j = 0; j < n_; ++j) prow[j] /= p;
    prow[q] = 1.0;
    for (Index i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &t_[i * n_];
      const double f = row[q];
      if (f == 0.0) continue;
      for (Index j = 0; j < n_; ++j) {
        if (prow[j] != 0.0) row[j] -= f * prow[j];
      }
      row[q] = 0.0;
    }
    const double f = reduced[q];
    if (f != 0.0) {
      for (Index j = 0; j < n_; ++j)
        if (prow[j] != 0.0) reduced[j] -= f * prow[j];
      reduced[q] = 0.0;
    }
    basis[r] = q;
    state[q] = State::basic;
    state[leaving] = leaving_to_upper ? State::at_upper : State::at_lower;
  }
};

enum class PhaseResult { optimal, unbounded };

inline PhaseResult run_simplex(BoundedTableau& tab, const SimplexOptions& opt,
                               std::size_t& pivots, std::size_t max_pivots) {
  using State = BoundedTableau::State;
  const std::size_t m = tab.m_;
  const std::size_t n = tab.n_;
  std::vector<double> col(m);
  for (;;) {
    const bool bland = pivots >= opt.dantzig_budget;
    Index q = n;
    double best = 0.0;
    for (Index j = 0; j < n; ++j) {
      if (tab.state[j] == State::basic || tab.blocked[j]) continue;
      const double d = tab.reduced[j];
      double gain = 0.0;
      if (tab.state[j] == State::at_lower && d < -opt.optimality_tol) gain = -d;
      if (tab.state[j] == State::at_upper && d > opt.optimality_tol) gain = d;
      if (gain <= 0.0) continue;
      if (bland) {
        q = j;
        break;
      }
      if (gain > best) {
        best = gain;
        q = j;
      }
    }
    if (q == n) return PhaseResult::optimal;
    if (pivots >= max_pivots) {
      throw LpNumericalError("simplex: pivot cap of " + std::to_string(max_pivots) +
                             " exhausted (cycling safeguard)");
    }

    const double dir = tab.state[q] == State::at_lower ? 1.0 : -1.0;
    for (Index i = 0; i < m; ++i) col[i] = tab.at(i, q);

    double t_max = tab.upper[q];
    Index leave = m;
    bool leave_to_upper = false;
    double leave_mag = 0.0;
    for (Index i = 0; i < m; ++i) {
      const double a = dir * col[i];
      double ratio;
      bool to_upper;
      if (a > opt.pivot_tol) {
        ratio = std::max(tab.beta[i], 0.0) / a;
        to_upper = false;
      } else if (a < -opt.pivot_tol && tab.upper[tab.basis[i]] < kInf) {
        ratio = std::max(tab.upper[tab.basis[i]] - tab.beta[i], 0.0) / (-a);
        to_upper = true;
      } else {
        continue;
      }
      const double tie = 1e-12 * std::max(1.0, std::abs(t_max == kInf ? ratio : t_max));
      bool take = false;
      if (ratio < t_max - tie) {
        take = true;
      } else if (ratio <= t_max + tie && leave < m) {
        take = bland ? tab.basis[i] < tab.basis[leave] : std::abs(a) > leave_mag;
      }
      if (take) {
        t_max = std::min(ratio, t_max);
        leave = i;
        leave_to_upper = to_upper;
        leave_mag = std::abs(a);
      }
    }
    if (t_max == kInf) return PhaseResult::unbounded;
    ++pivots;

    if (leave == m) {
      // bound flip
      for (Index i = 0; i < m; ++i)
        if (col[i] != 0.0) tab.beta[i] -= dir * t_max * col[i];
      tab.state[q] = tab.state[q] == State::at_lower ? State::at_upper : State::at_lower;
      continue;
    }
    tab.pivot(leave, q, dir * t_max, leave_to_upper);
  }
}

}  // namespace detail

/// Solves the LP. Infeasible and unbounded problems are reported via `status`.
inline LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& opt = {}) {
  lp.validate();
  const std::size_t nv = lp.num_vars();
  const std::size_t m = lp.rows.size();

  // Structural columns: x_v = offset_v + sum sign * y_col
  struct Term {
    Index col;
    double sign;
  };
  std::vector<std::vector<Term>> terms(nv);
  Vector offset(nv, 0.0);
  Vector col_upper;
  Vector col_cost;
  const double obj_sign = lp.sense == Sense::maximize ? -1.0 : 1.0;
  for (Index v = 0; v < nv; ++v) {
    const double lo = lp.lower[v], hi = lp.upper[v];
    const double c = obj_sign * lp.objective[v];
    if (lo > -kInf) {
      offset[v] = lo;
      terms[v].push_back({col_upper.size(), 1.0});
      col_upper.push_back(hi - lo);
      col_cost.push_back(c);
    } else if (hi < kInf) {
      offset[v] = hi;
      terms[v].push_back({col_upper.size(), -1.0});
      col_upper.push_back(kInf);
      col_cost.push_back(-c);
    } else {
      terms[v].push_back({col_upper.size(), 1.0});
      col_upper.push_back(kInf);
      col_cost.push_back(c);
      terms[v].push_back({col_upper.size(), -1.0});
      col_upper.push_back(kInf);
      col_cost.push_back(-c);
    }
  }
  const std::size_t ny = col_upper.size();

  // Row data in y-space
  std::vector<Vector> a(m, Vector(ny, 0.0));
  Vector b(m);
  std::vector<double> slack_sign(m, 0.0);
  std::size_t num_slack = 0;
  for (Index i = 0; i < m; ++i) {
    const auto& row = lp.rows[i];
    double rhs = row.rhs;
    for (Index v = 0; v < nv; ++v) {
      const double coef = row.coeffs[v];
      if (coef == 0.0) continue;
      rhs -= coef * offset[v];
      for (const auto& t : terms[v]) a[i][t.col] += coef * t.sign;
    }
    if (row.relation == Relation::less_equal) slack_sign[i] = 1.0;
    if (row.relation == Relation::greater_equal) slack_sign[i] = -1.0;
    if (slack_sign[i] != 0.0) ++num_slack;
    if (rhs < 0.0) {
      for (auto& x : a[i]) x = -x;
      rhs = -rhs;
      slack_sign[i] = -slack_sign[i];
    }
    b[i] = rhs;
  }

  std::vector<Index> slack_col(m, static_cast<Index>(-1));
  std::size_t next = ny;
  for (Index i = 0; i < m; ++i)
    if (slack_sign[i] != 0.0) slack_col[i] = next++;
  std::vector<Index> art_col(m, static_cast<Index>(-1));
  for (Index i = 0; i < m; ++i)
    if (slack_sign[i] != 1.0) art_col[i] = next++;
  const std::size_t ncols = next;

  detail::BoundedTableau tab(m, ncols);
  using State = detail::BoundedTableau::State;
  tab.beta = b;
  tab.basis.resize(m);
  tab.state.assign(ncols, State::at_lower);
  tab.upper.assign(ncols, kInf);
  tab.blocked.assign(ncols, false);
  for (Index j = 0; j < ny; ++j) tab.upper[j] = col_upper[j];
  bool has_artificial = false;
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < ny; ++j) tab.at(i, j) = a[i][j];
    if (slack_col[i] != static_cast<Index>(-1)) tab.at(i, slack_col[i]) = slack_sign[i];
    if (art_col[i] != static_cast<Index>(-1)) {
      tab.at(i, art_col[i]) = 1.0;
      tab.basis[i] = art_col[i];
      has_artificial = true;
    } else {
      tab.basis[i] = slack_col[i];
    }
    tab.state[tab.basis[i]] = State::basic;
  }
  // fixed columns (upper == 0) never need to enter
  for (Index j = 0; j < ny; ++j)
    if (col_upper[j] == 0.0) tab.blocked[j] = true;

  const std::size_t max_pivots =
      opt.max_pivots ? opt.max_pivots : 50 * (m + ncols) + 10000;
  std::size_t pivots = 0;
  LpSolution sol;

  if (has_artificial) {
    tab.cost.assign(ncols, 0.0);
    for (Index i = 0; i < m; ++i)
      if (art_col[i] != static_cast<Index>(-1)) tab.cost[art_col[i]] = 1.0;
    tab.compute_reduced();
    detail::run_simplex(tab, opt, pivots, max_pivots);
    double infeas = 0.0;
    double scale = 1.0;
    for (double v : b) scale = std::max(scale, std::abs(v));
    for (Index i = 0; i < m; ++i)
      if (tab.cost[tab.basis[i]] > 0.0) infeas += std::max(0.0, tab.beta[i]);
    if (infeas > opt.feasibility_tol * scale * 10.0) {
      sol.status = LpStatus::infeasible;
      sol.pivots = pivots;
      return sol;
    }
    // Freeze artificials at zero and pivot basic ones out where possible.
    for (Index i = 0; i < m; ++i) {
      if (art_col[i] == static_cast<Index>(-1)) continue;
      const Index c = art_col[i];
      tab.upper[c] = 0.0;
      tab.blocked[c] = true;
    }
    tab.cost.assign(ncols, 0.0);
    tab.reduced.assign(ncols, 0.0);
    for (Index r = 0; r < m; ++r) {
      const Index bv = tab.basis[r];
      if (!tab.blocked[bv] || bv < ny) continue;
      Index best = ncols;
      double mag = 1e-7;
      for (Index j = 0; j < ncols; ++j) {
        if (tab.state[j] == State::basic || tab.blocked[j]) continue;
        if (std::abs(tab.at(r, j)) > mag) {
          mag = std::abs(tab.at(r, j));
          best = j;
        }
      }
      if (best == ncols) continue;  // redundant row
      const double step = tab.beta[r] / tab.at(r, best);
      tab.pivot(r, best, step, false);
    }
  }

  tab.cost.assign(ncols, 0.0);
  for (Index j = 0; j < ny; ++j) tab.cost[j] = col_cost[j];
  tab.compute_reduced();
  const auto result = detail::run_simplex(tab, opt, pivots, max_pivots);
  sol.pivots = pivots;
  if (result == detail::PhaseResult::unbounded) {
    sol.status = LpStatus::unbounded;
    return sol;
  }

  Vector y(ncols, 0.0);
  for (Index j = 0; j < ncols; ++j)
    if (tab.state[j] == State::at_upper) y[j] = tab.upper[j];
  for (Index i = 0; i < m; ++i) y[tab.basis[i]] = tab.beta[i];
  sol.primal.assign(nv, 0.0);
  for (Index v = 0; v < nv; ++v) {
    double x = offset[v];
    for (const auto& t : terms[v]) x += t.sign * y[t.col];
    if (lp.lower[v] > -kInf) x = std::max(x, lp.lower[v]);
    if (lp.upper[v] < kInf) x = std::min(x, lp.upper[v]);
    sol.primal[v] = x;
  }
  sol.status = LpStatus::optimal;
  sol.objective_value = dot(lp.objective, sol.primal);
  return sol;
}

}  // namespace mmm

#pragma once

// Convex uncertainty sets U and the adversary max_{c in U} c^T x.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mmm/core.hpp"
#include "mmm/lp.hpp"

namespace mmm {

/// c = mean + delta o deviation, 0 <= delta <= 1, sum(delta) <= budget.
struct BudgetedSet {
  Vector mean;
  Vector deviation;
  double budget = 0.0;

  BudgetedSet() = default;
  BudgetedSet(Vector mean_, Vector deviation_, double budget_)
      : mean(std::move(mean_)), deviation(std::move(deviation_)), budget(budget_) {
    validate();
  }

  std::size_t dimension() const noexcept { return mean.size(); }

  void validate() const {
    require_same_dim(mean.size(), deviation.size(), "BudgetedSet");
    for (Index j = 0; j < deviation.size(); ++j) {
      if (!(deviation[j] >= 0.0)) {
        throw std::invalid_argument("BudgetedSet: deviation[" + std::to_string(j) +
                                    "] must be nonnegative");
      }
    }
    if (!(budget >= 0.0) || budget > static_cast<double>(mean.size())) {
      throw std::invalid_argument("BudgetedSet: budget must lie in [0, n], got " +
                                  std::to_string(budget));
    }
  }
};

/// U = {c : A c <= b}, nonempty and bounded.
class PolytopeSet {
 public:
  PolytopeSet(std::vector<Vector> A, Vector b) : A_(std::move(A)), b_(std::move(b)) {
    require_same_dim(A_.size(), b_.size(), "PolytopeSet");
    if (A_.empty()) throw std::invalid_argument("PolytopeSet: no constraints (unbounded)");
    n_ = A_.front().size();
    for (const auto& row : A_) require_same_dim(row.size(), n_, "PolytopeSet row");
    lo_.assign(n_, 0.0);
    hi_.assign(n_, 0.0);
    nominal_.assign(n_, 0.0);
    for (Index j = 0; j < n_; ++j) {
      for (const double dir : {1.0, -1.0}) {
        Vector obj(n_, 0.0);
        obj[j] = dir;
        const auto sol = solve_lp(base_lp(obj));
        if (sol.status == LpStatus::infeasible)
          throw std::invalid_argument("PolytopeSet: empty set");
        if (sol.status == LpStatus::unbounded)
          throw std::invalid_argument("PolytopeSet: unbounded in coordinate " + std::to_string(j));
        (dir > 0 ? hi_ : lo_)[j] = sol.primal[j];
        for (Index i = 0; i < n_; ++i) nominal_[i] += sol.primal[i] / (2.0 * n_);
      }
    }
  }

  std::size_t dimension() const noexcept { return n_; }
  const std::vector<Vector>& A() const noexcept { return A_; }
  const Vector& b() const noexcept { return b_; }
  const Vector& coordinate_min() const noexcept { return lo_; }
  const Vector& coordinate_max() const noexcept { return hi_; }
  /// Average of the 2n coordinate-extreme points; lies in U.
  const Vector& nominal() const noexcept { return nominal_; }

  /// max (or min) objective^T c over U, c free.
  LinearProgram base_lp(const Vector& objective, Sense sense = Sense::maximize) const {
    LinearProgram lp;
    lp.sense = sense;
    for (Index j = 0; j < n_; ++j) lp.add_variable(objective[j], -kInf, kInf);
    for (Index i = 0; i < A_.size(); ++i) lp.add_row(A_[i], Relation::less_equal, b_[i]);
    return lp;
  }

 private:
  std::vector<Vector> A_;
  Vector b_;
  std::size_t n_ = 0;
  Vector lo_, hi_, nominal_;
};

using UncertaintySet = std::variant<BudgetedSet, PolytopeSet>;

inline std::size_t dimension(const UncertaintySet& set) {
  return std::visit([](const auto& s) { return s.dimension(); }, set);
}

/// A scenario inside U used for initial columns: the mean for budgeted sets.
inline Scenario nominal_scenario(const UncertaintySet& set) {
  if (const auto* b = std::get_if<BudgetedSet>(&set)) return Scenario(b->mean);
  return Scenario(std::get<PolytopeSet>(set).nominal());
}

inline bool contains(const UncertaintySet& set, const Scenario& c, double tol = 1e-9) {
  if (c.size() != dimension(set)) return false;
  if (const auto* u = std::get_if<BudgetedSet>(&set)) {
    double used = 0.0;
    for (Index j = 0; j < c.size(); ++j) {
      const double dev = c[j] - u->mean[j];
      if (dev < -tol || dev > u->deviation[j] + tol) return false;
      if (u->deviation[j] > 0.0) used += std::max(0.0, dev) / u->deviation[j];
    }
    return used <= u->budget + tol;
  }
  const auto& p = std::get<PolytopeSet>(set);
  for (Index i = 0; i < p.A().size(); ++i) {
    if (dot(p.A()[i], c.costs) > p.b()[i] + tol * std::max(1.0, std::abs(p.b()[i]))) return false;
  }
  return true;
}

struct WorstCase {
  double value = 0.0;
  Scenario c_star;
};

/// Greedy for budgeted sets: full deviation on the floor(budget) largest d_j x_j,
/// the fractional remainder on the next one. Ties go to the lower index.
inline WorstCase worst_case(const BudgetedSet& u, std::span<const double> x) {
  require_same_dim(x.size(), u.dimension(), "worst_case");
  for (double v : x) {
    if (v < -1e-12 || v > 1.0 + 1e-12) throw std::invalid_argument("worst_case: x outside [0,1]^n");
  }
  const std::size_t n = x.size();
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return u.deviation[a] * x[a] > u.deviation[b] * x[b];
  });
  WorstCase wc;
  wc.c_star = Scenario(u.mean);
  double remaining = u.budget;
  for (Index j : order) {
    if (remaining <= 0.0 || u.deviation[j] * x[j] <= 0.0) break;
    const double delta = std::min(1.0, remaining);
    wc.c_star.costs[j] += delta * u.deviation[j];
    remaining -= delta;
  }
  wc.value = dot(wc.c_star.costs, x);
  return wc;
}

inline WorstCase worst_case(const PolytopeSet& u, std::span<const double> x) {
  require_same_dim(x.size(), u.dimension(), "worst_case");
  const auto sol = solve_lp(u.base_lp(Vector(x.begin(), x.end())));
  if (sol.status != LpStatus::optimal)
    throw std::runtime_error("worst_case: polytope LP not optimal (" +
                             std::string(to_string(sol.status)) + ")");
  WorstCase wc;
  wc.c_star = Scenario(sol.primal);
  wc.value = dot(wc.c_star.costs, x);
  return wc;
}

inline WorstCase worst_case(const UncertaintySet& set, std::span<const double> x) {
  return std::visit([&](const auto& s) { return worst_case(s, x); }, set);
}

inline WorstCase worst_case(const UncertaintySet& set, const BinarySolution& x) {
  const Vector v = to_real(x);
  return worst_case(set, v);
}

/// Bounds on ||c||_inf over U. `m_inf` is the norm-based lower bound; the
/// multiplicative guarantees additionally use `m_componentwise` (c_j >= m for all j),
/// which is what their proofs need.
struct ScenarioBounds {
  double m_inf = 0.0;
  double M_inf = 0.0;
  double m_componentwise = 0.0;

  bool multiplicative_available() const noexcept { return m_inf > 0.0; }
};

inline ScenarioBounds scenario_bounds(const BudgetedSet& u) {
  if (u.dimension() == 0) throw std::invalid_argument("scenario_bounds: empty set");
  ScenarioBounds out;
  out.m_inf = *std::max_element(u.mean.begin(), u.mean.end());
  out.m_componentwise = *std::min_element(u.mean.begin(), u.mean.end());
  out.M_inf = 0.0;
  for (Index j = 0; j < u.dimension(); ++j) {
    out.M_inf = std::max({out.M_inf, std::abs(u.mean[j]), std::abs(u.mean[j] + u.deviation[j])});
  }
  return out;
}

inline ScenarioBounds scenario_bounds(const PolytopeSet& u) {
  ScenarioBounds out;
  const auto& lo = u.coordinate_min();
  const auto& hi = u.coordinate_max();
  out.m_componentwise = *std::min_element(lo.begin(), lo.end());
  for (Index j = 0; j < u.dimension(); ++j)
    out.M_inf = std::max({out.M_inf, std::abs(lo[j]), std::abs(hi[j])});
  // min t s.t. -t <= c_j <= t, A c <= b
  LinearProgram lp = u.base_lp(Vector(u.dimension(), 0.0), Sense::minimize);
  const Index t = lp.add_variable(1.0, 0.0, kInf);
  for (Index j = 0; j < u.dimension(); ++j) {
    Vector up(lp.num_vars(), 0.0), down(lp.num_vars(), 0.0);
    up[j] = 1.0;
    up[t] = -1.0;
    down[j] = -1.0;
    down[t] = -1.0;
    lp.add_row(up, Relation::less_equal, 0.0);
    lp.add_row(down, Relation::less_equal, 0.0);
  }
  const auto sol = solve_lp(lp);
  out.m_inf = sol.status == LpStatus::optimal ? sol.primal[t] : 0.0;
  return out;
}

inline ScenarioBounds scenario_bounds(const UncertaintySet& set) {
  return std::visit([](const auto& s) { return scenario_bounds(s); }, set);
}

/// max_{c in U} min_i c^T x^i, solved as one LP in (delta, z) or (c, z).
/// The returned value is min_i c*^T x^i at the LP's vertex c*.
inline WorstCase max_min(const UncertaintySet& set, std::span<const BinarySolution> columns) {
  if (columns.empty()) throw std::invalid_argument("max_min: no columns");
  const std::size_t n = dimension(set);
  for (const auto& x : columns) require_same_dim(x.size(), n, "max_min");

  LinearProgram lp;
  lp.sense = Sense::maximize;
  WorstCase out;
  if (const auto* u = std::get_if<BudgetedSet>(&set)) {
    // delta only where some column has a one and the deviation is positive
    std::vector<Index> active;
    for (Index j = 0; j < n; ++j) {
      if (u->deviation[j] <= 0.0) continue;
      for (const auto& x : columns)
        if (x[j]) {
          active.push_back(j);
          break;
        }
    }
    const Index z = lp.add_variable(1.0, -kInf, kInf);
    for (std::size_t a = 0; a < active.size(); ++a) lp.add_variable(0.0, 0.0, 1.0);
    for (const auto& x : columns) {
      Vector row(lp.num_vars(), 0.0);
      row[z] = 1.0;
      for (std::size_t a = 0; a < active.size(); ++a)
        if (x[active[a]]) row[1 + a] = -u->deviation[active[a]];
      lp.add_row(std::move(row), Relation::less_equal, dot(u->mean, x));
    }
    if (!active.empty()) {
      Vector row(lp.num_vars(), 1.0);
      row[z] = 0.0;
      lp.add_row(std::move(row), Relation::less_equal, u->budget);
    }
    const auto sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal)
      throw std::runtime_error("max_min: master LP " + std::string(to_string(sol.status)));
    out.c_star = Scenario(u->mean);
    for (std::size_t a = 0; a < active.size(); ++a) {
      const double delta = std::clamp(sol.primal[1 + a], 0.0, 1.0);
      out.c_star.costs[active[a]] += delta * u->deviation[active[a]];
    }
  } else {
    const auto& p = std::get<PolytopeSet>(set);
    lp = p.base_lp(Vector(n, 0.0));
    const Index z = lp.add_variable(1.0, -kInf, kInf);
    for (const auto& x : columns) {
      Vector row(lp.num_vars(), 0.0);
      row[z] = 1.0;
      for (Index j = 0; j < n; ++j)
        if (x[j]) row[j] = -1.0;
      lp.add_row(std::move(row), Relation::less_equal, 0.0);
    }
    const auto sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal)
      throw std::runtime_error("max_min: master LP " + std::string(to_string(sol.status)));
    out.c_star = Scenario(Vector(sol.primal.begin(), sol.primal.begin() + static_cast<long>(n)));
  }
  out.value = kInf;
  for (const auto& x : columns) out.value = std::min(out.value, dot(out.c_star, x));
  return out;
}

}  // namespace mmm

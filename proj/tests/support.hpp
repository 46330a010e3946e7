#pragma once

// Test-side reference computations and random generators. Nothing here calls
// the library's LP solver or its worst-case routines.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <random>
#include <set>
#include <vector>

#include "mmm/mmm.hpp"

namespace mmm::testing {

/// Solves the square system M y = r by Gaussian elimination with partial pivoting.
/// Returns false when M is singular.
inline bool solve_square(std::vector<Vector> M, Vector r, Vector& y) {
  const std::size_t d = r.size();
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t p = c;
    for (std::size_t q = c + 1; q < d; ++q)
      if (std::abs(M[q][c]) > std::abs(M[p][c])) p = q;
    if (std::abs(M[p][c]) < 1e-10) return false;
    std::swap(M[p], M[c]);
    std::swap(r[p], r[c]);
    for (std::size_t q = 0; q < d; ++q) {
      if (q == c) continue;
      const double f = M[q][c] / M[c][c];
      if (f == 0.0) continue;
      for (std::size_t t = c; t < d; ++t) M[q][t] -= f * M[c][t];
      r[q] -= f * r[c];
    }
  }
  y.assign(d, 0.0);
  for (std::size_t c = 0; c < d; ++c) y[c] = r[c] / M[c][c];
  return true;
}

/// max over (delta, z) of z s.t. z <= (mean + delta o dev)^T x^i, 0 <= delta <= 1,
/// sum delta <= budget, by enumerating every vertex of the feasible region.
/// Intended for n <= 5.
inline double vertex_max_min(const BudgetedSet& u, const std::vector<BinarySolution>& cols) {
  const std::size_t n = u.dimension();
  const std::size_t d = n + 1;  // delta_1..delta_n, z
  std::vector<Vector> A;
  Vector b;
  for (std::size_t j = 0; j < n; ++j) {
    Vector lo(d, 0.0), hi(d, 0.0);
    lo[j] = -1.0;
    hi[j] = 1.0;
    A.push_back(lo);
    b.push_back(0.0);
    A.push_back(hi);
    b.push_back(1.0);
  }
  Vector bud(d, 0.0);
  for (std::size_t j = 0; j < n; ++j) bud[j] = 1.0;
  A.push_back(bud);
  b.push_back(u.budget);
  for (const auto& x : cols) {
    // z - sum_j dev_j x_j delta_j <= mean^T x
    Vector row(d, 0.0);
    double rhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (x[j]) {
        row[j] = -u.deviation[j];
        rhs += u.mean[j];
      }
    }
    row[n] = 1.0;
    A.push_back(row);
    b.push_back(rhs);
  }
  const std::size_t m = A.size();
  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> pick(d);
  std::vector<bool> mask(m, false);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(d), true);
  std::sort(mask.begin(), mask.end());
  do {
    std::vector<Vector> M;
    Vector r;
    for (std::size_t i = 0; i < m; ++i)
      if (mask[i]) {
        M.push_back(A[i]);
        r.push_back(b[i]);
      }
    Vector y;
    if (!solve_square(M, r, y)) continue;
    bool feasible = true;
    for (std::size_t i = 0; i < m && feasible; ++i) {
      double s = 0.0;
      for (std::size_t t = 0; t < d; ++t) s += A[i][t] * y[t];
      feasible = s <= b[i] + 1e-9;
    }
    if (feasible) best = std::max(best, y[n]);
  } while (std::next_permutation(mask.begin(), mask.end()));
  return best;
}

/// max_{c in U} c^T x by trying every delta with entries in {0, 1, budget - floor(budget)}.
inline double enumerate_worst_case(const BudgetedSet& u, const Vector& x) {
  const std::size_t n = u.dimension();
  const double frac = u.budget - std::floor(u.budget);
  const double levels[3] = {0.0, 1.0, frac};
  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> idx(n, 0);
  for (;;) {
    double used = 0.0, val = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double dl = levels[idx[j]];
      used += dl;
      val += (u.mean[j] + dl * u.deviation[j]) * x[j];
    }
    if (used <= u.budget + 1e-12) best = std::max(best, val);
    std::size_t j = 0;
    while (j < n && ++idx[j] == 3) idx[j++] = 0;
    if (j == n) break;
  }
  return best;
}

/// Exact opt(k) over the multisets of `X`, evaluated with vertex_max_min.
inline double exhaustive_opt(const BudgetedSet& u, const std::vector<BinarySolution>& X,
                             std::size_t k) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> pos(k, 0);
  for (;;) {
    std::vector<BinarySolution> cols;
    for (auto p : pos) cols.push_back(X[p]);
    best = std::min(best, vertex_max_min(u, cols));
    std::size_t i = k;
    while (i-- > 0) {
      if (++pos[i] < X.size()) break;
    }
    if (i == static_cast<std::size_t>(-1)) break;
    for (std::size_t q = i + 1; q < k; ++q) pos[q] = pos[i];
  }
  return best;
}

/// Exact optimum over tuples whose slot i respects fix.slot(i); +inf when some
/// slot has no admissible element.
inline double exhaustive_fixed(const BudgetedSet& u, const std::vector<BinarySolution>& X,
                               const FixationSet& fix) {
  const std::size_t k = fix.k();
  std::vector<std::vector<const BinarySolution*>> choice(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& x : X)
      if (respects(x, fix.slot(i))) choice[i].push_back(&x);
    if (choice[i].empty()) return std::numeric_limits<double>::infinity();
  }
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> pos(k, 0);
  for (;;) {
    std::vector<BinarySolution> cols;
    for (std::size_t i = 0; i < k; ++i) cols.push_back(*choice[i][pos[i]]);
    best = std::min(best, vertex_max_min(u, cols));
    std::size_t i = k;
    while (i-- > 0) {
      if (++pos[i] < choice[i].size()) break;
      pos[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return best;
}

/// A random small instance over an explicit solution list.
struct TinyCase {
  Instance inst;
  BudgetedSet set;
  std::vector<BinarySolution> X;
};

/// n in [2, max_n], |X| in [1, max_x] distinct vectors, integer means in [1, 10],
/// deviations in [0, 6], budget in {0, 0.5, ..., n}. The zero vector is excluded
/// when `nonzero` is set.
inline TinyCase random_tiny(std::mt19937_64& rng, std::size_t max_n = 4, std::size_t max_x = 6,
                            bool nonzero = true) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const std::size_t n = static_cast<std::size_t>(pick(2, static_cast<int>(max_n)));
  const std::size_t cap = (std::size_t{1} << n) - (nonzero ? 1 : 0);
  const std::size_t want = std::min<std::size_t>(cap, static_cast<std::size_t>(pick(1, static_cast<int>(max_x))));
  std::set<std::vector<std::uint8_t>> seen;
  std::vector<BinarySolution> X;
  while (X.size() < want) {
    std::vector<std::uint8_t> bits(n);
    for (auto& v : bits) v = static_cast<std::uint8_t>(pick(0, 1));
    if (nonzero && std::count(bits.begin(), bits.end(), 1) == 0) continue;
    if (seen.insert(bits).second) X.emplace_back(bits);
  }
  Vector mean(n), dev(n);
  for (std::size_t j = 0; j < n; ++j) {
    mean[j] = pick(1, 10);
    dev[j] = pick(0, 6);
  }
  const double budget = 0.5 * pick(0, static_cast<int>(2 * n));
  BudgetedSet set(mean, dev, budget);
  TinyCase tc{Instance{std::make_shared<ExplicitListOracle>(n, X), set, std::nullopt}, set, X};
  return tc;
}

/// Profile with M_inf = max(mean + dev), componentwise m_inf = min(mean) and
/// constant support bounds taken from X.
inline GuaranteeProfile constructed_profile(const TinyCase& tc) {
  GuaranteeProfile p;
  p.M_inf = 0.0;
  p.m_inf = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < tc.set.dimension(); ++j) {
    p.M_inf = std::max(p.M_inf, tc.set.mean[j] + tc.set.deviation[j]);
    p.m_inf = std::min(p.m_inf, tc.set.mean[j]);
  }
  std::size_t lo = tc.set.dimension(), hi = 0;
  for (const auto& x : tc.X) {
    lo = std::min(lo, x.support());
    hi = std::max(hi, x.support());
  }
  p.p_low = PFunction::constant(static_cast<double>(lo));
  p.p_high = PFunction::constant(static_cast<double>(hi));
  return p;
}

/// Random fixation set with each (slot, index) pinned with probability 1/4.
inline FixationSet random_fixation(std::mt19937_64& rng, std::size_t k, std::size_t n) {
  std::vector<SlotFixation> slots(k);
  std::uniform_int_distribution<int> die(0, 7);
  for (auto& s : slots) {
    for (Index j = 0; j < n; ++j) {
      const int r = die(rng);
      if (r == 0) s.zero.push_back(j);
      if (r == 1) s.one.push_back(j);
    }
  }
  return FixationSet(std::move(slots));
}

/// Random knapsack oracle with n items, weights in [0, 6] and requirement in [0, sum].
inline std::shared_ptr<KnapsackOracle> random_knapsack(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> w(0, 6);
  std::vector<std::int64_t> a(n);
  std::int64_t total = 0;
  for (auto& v : a) total += (v = w(rng));
  const auto b = std::uniform_int_distribution<std::int64_t>(0, total)(rng);
  return std::make_shared<KnapsackOracle>(a, b);
}

/// Random digraph on v nodes with arc probability 0.4; source 0, sink v-1.
inline std::shared_ptr<ShortestPathOracle> random_digraph(std::mt19937_64& rng, std::size_t v) {
  std::bernoulli_distribution coin(0.4);
  std::vector<Arc> arcs;
  for (Index a = 0; a < v; ++a)
    for (Index b = 0; b < v; ++b)
      if (a != b && coin(rng)) arcs.push_back({a, b});
  if (arcs.empty()) arcs.push_back({0, v - 1});
  return std::make_shared<ShortestPathOracle>(v, arcs, 0, v - 1);
}

/// Every subset of {0..n-1} that satisfies `pred`, in counting order.
template <class Pred>
std::vector<BinarySolution> all_subsets(std::size_t n, Pred pred) {
  std::vector<BinarySolution> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    BinarySolution x(n);
    for (Index j = 0; j < n; ++j) x.set(j, (mask >> j) & 1U);
    if (pred(x)) out.push_back(x);
  }
  return out;
}

/// Incidence vectors of simple source-sink paths found by an independent DFS.
inline std::vector<BinarySolution> all_paths(const ShortestPathOracle& g) {
  std::vector<BinarySolution> out;
  std::vector<bool> on(g.num_nodes(), false);
  BinarySolution cur(g.dimension());
  auto rec = [&](auto&& self, Index v) -> void {
    if (v == g.sink()) {
      out.push_back(cur);
      return;
    }
    on[v] = true;
    for (Index a = 0; a < g.arcs().size(); ++a) {
      if (g.arcs()[a].tail != v || on[g.arcs()[a].head]) continue;
      cur.set(a, true);
      self(self, g.arcs()[a].head);
      cur.set(a, false);
    }
    on[v] = false;
  };
  rec(rec, g.source());
  return out;
}

}  // namespace mmm::testing

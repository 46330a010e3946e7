#pragma once

// Linear minimization oracles for the deterministic problem min_{x in X} c^T x
// under per-variable fixations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mmm/core.hpp"

namespace mmm {

struct OracleQuery {
  Scenario costs;
  SlotFixation fix;
};

/// Empty when X(J0, J1) is empty.
using OracleAnswer = std::optional<BinarySolution>;

class EnumerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Oracle {
 public:
  virtual ~Oracle() = default;

  virtual std::size_t dimension() const = 0;
  virtual std::string kind() const = 0;

  /// argmin c^T x over X(J0, J1). Implementations assume a validated query.
  virtual OracleAnswer solve(std::span<const double> costs, const SlotFixation& fix) const = 0;

  virtual bool enumerable() const { return false; }

  /// All of X, each element once. Throws EnumerationError past `cap` elements.
  virtual std::vector<BinarySolution> enumerate(std::size_t cap) const {
    (void)cap;
    throw EnumerationError(kind() + " oracle is not enumerable");
  }
};

inline void validate_fixation(const SlotFixation& fix, std::size_t n) {
  for (Index j : fix.zero)
    if (j >= n) throw DimensionError("fixation index out of range");
  for (Index j : fix.one)
    if (j >= n) throw DimensionError("fixation index out of range");
  std::vector<Index> both;
  std::set_intersection(fix.zero.begin(), fix.zero.end(), fix.one.begin(), fix.one.end(),
                        std::back_inserter(both));
  if (!both.empty()) throw std::invalid_argument("fixation: J0 and J1 overlap");
}

inline bool respects(const BinarySolution& x, const SlotFixation& fix) {
  for (Index j : fix.zero)
    if (x[j]) return false;
  for (Index j : fix.one)
    if (!x[j]) return false;
  return true;
}

inline OracleAnswer minimize(const Oracle& oracle, std::span<const double> costs,
                             const SlotFixation& fix = {}) {
  require_same_dim(costs.size(), oracle.dimension(), "minimize");
  validate_fixation(fix, oracle.dimension());
  return oracle.solve(costs, fix);
}

inline OracleAnswer minimize(const Oracle& oracle, const OracleQuery& q) {
  return minimize(oracle, q.costs.costs, q.fix);
}

inline std::vector<BinarySolution> enumerate_feasible(const Oracle& oracle, std::size_t cap) {
  if (!oracle.enumerable()) throw EnumerationError(oracle.kind() + " oracle is not enumerable");
  return oracle.enumerate(cap);
}

// ---------------------------------------------------------------------------

/// X given as an explicit list. Ties resolve to the earliest listed element.
class ExplicitListOracle final : public Oracle {
 public:
  ExplicitListOracle(std::size_t n, std::vector<BinarySolution> solutions) : n_(n) {
    for (auto& x : solutions) {
      require_same_dim(x.size(), n_, "ExplicitListOracle");
      if (std::find(solutions_.begin(), solutions_.end(), x) == solutions_.end())
        solutions_.push_back(std::move(x));
    }
  }

  std::size_t dimension() const override { return n_; }
  std::string kind() const override { return "explicit"; }
  bool enumerable() const override { return true; }
  const std::vector<BinarySolution>& solutions() const noexcept { return solutions_; }

  OracleAnswer solve(std::span<const double> costs, const SlotFixation& fix) const override {
    OracleAnswer best;
    double best_cost = std::numeric_limits<double>::infinity();
    for (const auto& x : solutions_) {
      if (!respects(x, fix)) continue;
      const double v = dot(costs, x);
      if (v < best_cost) {
        best_cost = v;
        best = x;
      }
    }
    return best;
  }

  std::vector<BinarySolution> enumerate(std::size_t cap) const override {
    if (solutions_.size() > cap)
      throw EnumerationError("enumeration cap of " + std::to_string(cap) + " exceeded");
    return solutions_;
  }

 private:
  std::size_t n_;
  std::vector<BinarySolution> solutions_;
};

// ---------------------------------------------------------------------------

/// min c^T x s.t. a^T x >= b, x binary, with nonnegative integer weights a.
/// Dynamic program over the residual requirement, clamped at zero.
class KnapsackOracle final : public Oracle {
 public:
  KnapsackOracle(std::vector<std::int64_t> weights, std::int64_t capacity)
      : weights_(std::move(weights)), capacity_(capacity) {
    for (auto w : weights_)
      if (w < 0) throw std::invalid_argument("KnapsackOracle: weights must be nonnegative");
    if (capacity_ < 0) throw std::invalid_argument("KnapsackOracle: requirement must be >= 0");
  }

  std::size_t dimension() const override { return weights_.size(); }
  std::string kind() const override { return "knapsack"; }
  bool enumerable() const override { return true; }
  const std::vector<std::int64_t>& weights() const noexcept { return weights_; }
  std::int64_t capacity() const noexcept { return capacity_; }

  OracleAnswer solve(std::span<const double> costs, const SlotFixation& fix) const override {
    const std::size_t n = weights_.size();
    std::vector<std::uint8_t> state(n, 2);  // 0, 1, or 2 = free
    for (Index j : fix.zero) state[j] = 0;
    std::int64_t req = capacity_;
    for (Index j : fix.one) {
      state[j] = 1;
      req -= weights_[j];
    }
    req = std::max<std::int64_t>(req, 0);
    std::vector<Index> items;
    for (Index j = 0; j < n; ++j)
      if (state[j] == 2) items.push_back(j);

    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::size_t width = static_cast<std::size_t>(req) + 1;
    std::vector<double> f(width, inf), g(width);
    f[0] = 0.0;
    std::vector<std::uint8_t> take(items.size() * width, 0);
    for (std::size_t i = 0; i < items.size(); ++i) {
      const double c = costs[items[i]];
      const auto w = weights_[items[i]];
      for (std::size_t r = 0; r < width; ++r) {
        const std::size_t prev =
            static_cast<std::size_t>(std::max<std::int64_t>(0, static_cast<std::int64_t>(r) - w));
        const double with = f[prev] + c;
        if (with < f[r]) {
          g[r] = with;
          take[i * width + r] = 1;
        } else {
          g[r] = f[r];
        }
      }
      std::swap(f, g);
    }
    if (f[width - 1] == inf) return std::nullopt;

    BinarySolution x(n);
    for (Index j : fix.one) x.set(j, true);
    std::size_t r = width - 1;
    for (std::size_t i = items.size(); i-- > 0;) {
      if (take[i * width + r]) {
        x.set(items[i], true);
        r = static_cast<std::size_t>(
            std::max<std::int64_t>(0, static_cast<std::int64_t>(r) - weights_[items[i]]));
      }
    }
    return x;
  }

  std::vector<BinarySolution> enumerate(std::size_t cap) const override {
    const std::size_t n = weights_.size();
    std::vector<BinarySolution> out;
    BinarySolution x(n);
    // Deciding the highest index first yields counting order (bit j is x_j).
    std::vector<std::int64_t> prefix(n + 1, 0);
    for (std::size_t j = 0; j < n; ++j) prefix[j + 1] = prefix[j] + weights_[j];
    auto rec = [&](auto&& self, std::size_t j, std::int64_t got) -> void {
      if (got + prefix[j] < capacity_) return;
      if (j == 0) {
        if (out.size() >= cap)
          throw EnumerationError("enumeration cap of " + std::to_string(cap) + " exceeded");
        out.push_back(x);
        return;
      }
      x.set(j - 1, false);
      self(self, j - 1, got);
      x.set(j - 1, true);
      self(self, j - 1, got + weights_[j - 1]);
      x.set(j - 1, false);
    };
    rec(rec, n, 0);
    return out;
  }

 private:
  std::vector<std::int64_t> weights_;
  std::int64_t capacity_;
};

// ---------------------------------------------------------------------------

struct Arc {
  Index tail = 0;
  Index head = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Incidence vectors of simple directed source-sink paths; variable j is arc j.
///
/// Fixed-zero arcs are deleted and fixed-one arcs get a big-M discount. A
/// hop-limited label-correcting search (walks of at most |V|-1 arcs) then runs on
/// the modified costs. If the resulting walk is a simple path through every
/// forced arc it is optimal; otherwise an exact depth-first search decides.
class ShortestPathOracle final : public Oracle {
 public:
  ShortestPathOracle(std::size_t num_nodes, std::vector<Arc> arcs, Index source, Index sink)
      : num_nodes_(num_nodes), arcs_(std::move(arcs)), source_(source), sink_(sink) {
    if (source_ >= num_nodes_ || sink_ >= num_nodes_ || source_ == sink_)
      throw std::invalid_argument("ShortestPathOracle: invalid source/sink");
    out_.resize(num_nodes_);
    for (Index a = 0; a < arcs_.size(); ++a) {
      const auto& arc = arcs_[a];
      if (arc.tail >= num_nodes_ || arc.head >= num_nodes_ || arc.tail == arc.head)
        throw std::invalid_argument("ShortestPathOracle: invalid arc " + std::to_string(a));
      out_[arc.tail].push_back(a);
    }
  }

  std::size_t dimension() const override { return arcs_.size(); }
  std::string kind() const override { return "shortest_path"; }
  bool enumerable() const override { return true; }
  std::size_t num_nodes() const noexcept { return num_nodes_; }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  Index source() const noexcept { return source_; }
  Index sink() const noexcept { return sink_; }

  OracleAnswer solve(std::span<const double> costs, const SlotFixation& fix) const override {
    const std::size_t n = arcs_.size();
    std::vector<std::int8_t> state(n, -1);  // -1 free, 0 deleted, 1 forced
    for (Index j : fix.zero) state[j] = 0;
    for (Index j : fix.one) state[j] = 1;
    if (!forced_arcs_consistent(fix)) return std::nullopt;

    double cmax = 0.0;
    for (double c : costs) cmax = std::max(cmax, std::abs(c));
    const double big_m = static_cast<double>(n) * cmax + 1.0;

    const auto walk = hop_limited_walk(costs, state, big_m);
    if (!walk) return std::nullopt;  // sink unreachable without deleted arcs
    if (is_valid_path(*walk, fix)) return to_solution(*walk);
    return exact_search(costs, state, fix);
  }

  std::vector<BinarySolution> enumerate(std::size_t cap) const override {
    std::vector<BinarySolution> out;
    std::vector<Index> path;
    std::vector<bool> visited(num_nodes_, false);
    auto rec = [&](auto&& self, Index v) -> void {
      if (v == sink_) {
        if (out.size() >= cap)
          throw EnumerationError("enumeration cap of " + std::to_string(cap) + " exceeded");
        out.push_back(to_solution(path));
        return;
      }
      visited[v] = true;
      for (Index a : out_[v]) {
        const Index w = arcs_[a].head;
        if (visited[w]) continue;
        path.push_back(a);
        self(self, w);
        path.pop_back();
      }
      visited[v] = false;
    };
    rec(rec, source_);
    return out;
  }

 private:
  BinarySolution to_solution(const std::vector<Index>& path) const {
    BinarySolution x(arcs_.size());
    for (Index a : path) x.set(a, true);
    return x;
  }

  bool forced_arcs_consistent(const SlotFixation& fix) const {
    std::vector<int> out_deg(num_nodes_, 0), in_deg(num_nodes_, 0);
    for (Index a : fix.one) {
      const auto& arc = arcs_[a];
      if (arc.head == source_ || arc.tail == sink_) return false;
      if (++out_deg[arc.tail] > 1 || ++in_deg[arc.head] > 1) return false;
    }
    return true;
  }

  bool is_valid_path(const std::vector<Index>& walk, const SlotFixation& fix) const {
    std::vector<bool> seen(num_nodes_, false);
    seen[source_] = true;
    std::vector<bool> used(arcs_.size(), false);
    for (Index a : walk) {
      const Index h = arcs_[a].head;
      if (seen[h]) return false;
      seen[h] = true;
      used[a] = true;
    }
    for (Index a : fix.one)
      if (!used[a]) return false;
    return true;
  }

  std::optional<std::vector<Index>> hop_limited_walk(std::span<const double> costs,
                                                     const std::vector<std::int8_t>& state,
                                                     double big_m) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::size_t hops = num_nodes_ - 1;
    const Index none = static_cast<Index>(-1);
    std::vector<double> dist(num_nodes_, inf), next(num_nodes_);
    dist[source_] = 0.0;
    // parent[h][v]: arc used to reach v with exactly the layer-h improvement
    std::vector<std::vector<Index>> parent(hops + 1, std::vector<Index>(num_nodes_, none));
    for (std::size_t h = 1; h <= hops; ++h) {
      next = dist;
      bool changed = false;
      for (Index a = 0; a < arcs_.size(); ++a) {
        if (state[a] == 0) continue;
        const auto& arc = arcs_[a];
        if (dist[arc.tail] == inf) continue;
        const double c = costs[a] - (state[a] == 1 ? big_m : 0.0);
        const double cand = dist[arc.tail] + c;
        if (cand < next[arc.head]) {
          next[arc.head] = cand;
          parent[h][arc.head] = a;
          changed = true;
        }
      }
      dist.swap(next);
      if (!changed) break;
    }
    if (dist[sink_] == inf) return std::nullopt;
    std::vector<Index> walk;
    Index v = sink_;
    std::size_t h = hops;
    while (v != source_ || h > 0) {
      if (h == 0) break;
      const Index a = parent[h][v];
      if (a == none) {
        --h;
        continue;
      }
      walk.push_back(a);
      v = arcs_[a].tail;
      --h;
    }
    if (v != source_) return std::vector<Index>{};  // malformed; forces exact search
    std::reverse(walk.begin(), walk.end());
    return walk;
  }

  OracleAnswer exact_search(std::span<const double> costs, const std::vector<std::int8_t>& state,
                            const SlotFixation& fix) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const Index none = static_cast<Index>(-1);
    std::vector<Index> forced_out(num_nodes_, none), forced_in(num_nodes_, none);
    for (Index a : fix.one) {
      forced_out[arcs_[a].tail] = a;
      forced_in[arcs_[a].head] = a;
    }
    bool nonnegative = true;
    double negative_sum = 0.0;
    for (Index a = 0; a < arcs_.size(); ++a) {
      if (state[a] == 0) continue;
      if (costs[a] < 0.0) {
        nonnegative = false;
        negative_sum += costs[a];
      }
    }
    // Remaining-cost lower bounds: reverse Bellman-Ford distances with costs clipped at 0
    // from below when negative costs exist.
    std::vector<double> to_sink(num_nodes_, inf);
    to_sink[sink_] = 0.0;
    for (std::size_t it = 0; it + 1 < num_nodes_; ++it) {
      bool changed = false;
      for (Index a = 0; a < arcs_.size(); ++a) {
        if (state[a] == 0) continue;
        const auto& arc = arcs_[a];
        if (to_sink[arc.head] == inf) continue;
        const double c = nonnegative ? costs[a] : 0.0;
        if (to_sink[arc.head] + c < to_sink[arc.tail]) {
          to_sink[arc.tail] = to_sink[arc.head] + c;
          changed = true;
        }
      }
      if (!changed) break;
    }
    if (to_sink[source_] == inf) return std::nullopt;
    const double slack = nonnegative ? 0.0 : negative_sum;

    double best = inf;
    std::vector<Index> best_path, path;
    std::vector<bool> visited(num_nodes_, false);
    std::size_t forced_used = 0;
    const std::size_t forced_total = fix.one.size();
    auto rec = [&](auto&& self, Index v, double cost) -> void {
      if (v == sink_) {
        if (forced_used == forced_total && cost < best) {
          best = cost;
          best_path = path;
        }
        return;
      }
      visited[v] = true;
      auto try_arc = [&](Index a) {
        const Index w = arcs_[a].head;
        if (visited[w] || to_sink[w] == inf) return;
        if (forced_in[w] != none && forced_in[w] != a) return;
        const double c = cost + costs[a];
        if (c + to_sink[w] + slack >= best) return;
        const bool forced = state[a] == 1;
        path.push_back(a);
        forced_used += forced;
        self(self, w, c);
        forced_used -= forced;
        path.pop_back();
      };
      if (forced_out[v] != none) {
        try_arc(forced_out[v]);
      } else {
        for (Index a : out_[v])
          if (state[a] != 0) try_arc(a);
      }
      visited[v] = false;
    };
    rec(rec, source_, 0.0);
    if (best == inf) return std::nullopt;
    return to_solution(best_path);
  }

  std::size_t num_nodes_;
  std::vector<Arc> arcs_;
  Index source_, sink_;
  std::vector<std::vector<Index>> out_;
};

}  // namespace mmm

#pragma once

// Shared domain types for min-max-min robust binary optimization.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmm {

using Index = std::size_t;
using Vector = std::vector<double>;

/// Simplex-sum tolerance for convex weights.
inline constexpr double kSimplexTol = 1e-9;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

/// Incidence vector x in {0,1}^n of a feasible solution.
class BinarySolution {
 public:
  BinarySolution() = default;
  explicit BinarySolution(std::size_t n) : bits_(n, 0) {}
  explicit BinarySolution(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto& b : bits_) {
      if (b > 1) throw std::invalid_argument("BinarySolution: entries must be 0 or 1");
    }
  }
  BinarySolution(std::initializer_list<int> bits) {
    bits_.reserve(bits.size());
    for (int b : bits) {
      if (b != 0 && b != 1) throw std::invalid_argument("BinarySolution: entries must be 0 or 1");
      bits_.push_back(static_cast<std::uint8_t>(b));
    }
  }

  static BinarySolution from_support(std::size_t n, std::span<const Index> ones) {
    BinarySolution x(n);
    for (Index j : ones) {
      if (j >= n) throw DimensionError("BinarySolution::from_support: index out of range");
      x.bits_[j] = 1;
    }
    return x;
  }

  static BinarySolution unit(std::size_t n, Index j) {
    const Index one[] = {j};
    return from_support(n, one);
  }

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](Index j) const { return bits_[j] != 0; }
  void set(Index j, bool v) { bits_.at(j) = v ? 1 : 0; }

  /// Number of ones, ||x||_0.
  std::size_t support() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
  }

  std::vector<Index> ones() const {
    std::vector<Index> out;
    for (Index j = 0; j < bits_.size(); ++j)
      if (bits_[j]) out.push_back(j);
    return out;
  }

  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  friend bool operator==(const BinarySolution&, const BinarySolution&) = default;
  friend auto operator<=>(const BinarySolution&, const BinarySolution&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

struct BinarySolutionHash {
  std::size_t operator()(const BinarySolution& x) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto b : x.bits()) {
      h ^= b + 0x9e;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

/// A cost vector c drawn from the uncertainty set.
struct Scenario {
  Vector costs;

  Scenario() = default;
  explicit Scenario(Vector c) : costs(std::move(c)) {}
  Scenario(std::initializer_list<double> c) : costs(c) {}

  std::size_t size() const noexcept { return costs.size(); }
  double operator[](Index j) const { return costs[j]; }
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Ordered k-tuple of solutions (x^1, ..., x^k).
struct SolutionTuple {
  std::vector<BinarySolution> slots;

  SolutionTuple() = default;
  explicit SolutionTuple(std::vector<BinarySolution> s) : slots(std::move(s)) { validate(); }
  SolutionTuple(std::initializer_list<BinarySolution> s) : slots(s) { validate(); }

  std::size_t k() const noexcept { return slots.size(); }
  std::size_t dimension() const noexcept { return slots.empty() ? 0 : slots.front().size(); }

  void validate() const {
    for (const auto& x : slots) require_same_dim(x.size(), dimension(), "SolutionTuple");
  }
};

/// Fixations of one solution slot: indices pinned to 0 and to 1.
struct SlotFixation {
  std::vector<Index> zero;
  std::vector<Index> one;

  bool empty() const noexcept { return zero.empty() && one.empty(); }
  bool fixed(Index j) const {
    return std::binary_search(zero.begin(), zero.end(), j) ||
           std::binary_search(one.begin(), one.end(), j);
  }
  std::size_t count() const noexcept { return zero.size() + one.size(); }

  /// Sorts, deduplicates and checks disjointness.
  void normalize() {
    auto tidy = [](std::vector<Index>& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    tidy(zero);
    tidy(one);
    std::vector<Index> both;
    std::set_intersection(zero.begin(), zero.end(), one.begin(), one.end(),
                          std::back_inserter(both));
    if (!both.empty()) {
      throw std::invalid_argument("SlotFixation: index " + std::to_string(both.front()) +
                                  " fixed to both 0 and 1");
    }
  }

  friend bool operator==(const SlotFixation&, const SlotFixation&) = default;
  friend auto operator<=>(const SlotFixation&, const SlotFixation&) = default;
};

/// Per-slot fixations J0^i, J1^i of a branch & bound node. All-empty is the root.
class FixationSet {
 public:
  FixationSet() = default;
  explicit FixationSet(std::size_t k) : slots_(k) {}
  explicit FixationSet(std::vector<SlotFixation> slots) : slots_(std::move(slots)) {
    for (auto& s : slots_) s.normalize();
  }

  std::size_t k() const noexcept { return slots_.size(); }
  const SlotFixation& slot(Index i) const { return slots_.at(i); }
  const std::vector<SlotFixation>& slots() const noexcept { return slots_; }

  bool is_root() const {
    return std::all_of(slots_.begin(), slots_.end(), [](const auto& s) { return s.empty(); });
  }

  /// Copy with variable j of slot i pinned to `value`.
  FixationSet with(Index slot, Index j, bool value) const {
    FixationSet out = *this;
    auto& s = out.slots_.at(slot);
    if (s.fixed(j)) throw std::invalid_argument("FixationSet::with: index already fixed");
    auto& target = value ? s.one : s.zero;
    target.insert(std::upper_bound(target.begin(), target.end(), j), j);
    return out;
  }

  void validate(std::size_t n) const {
    for (const auto& s : slots_) {
      for (Index j : s.zero)
        if (j >= n) throw DimensionError("FixationSet: index out of range");
      for (Index j : s.one)
        if (j >= n) throw DimensionError("FixationSet: index out of range");
    }
  }

  friend bool operator==(const FixationSet&, const FixationSet&) = default;

 private:
  std::vector<SlotFixation> slots_;
};

/// A point of X(k): weights over a list of columns.
struct ConvexPoint {
  std::vector<BinarySolution> columns;
  Vector weights;

  void validate() const {
    if (columns.empty()) throw std::invalid_argument("ConvexPoint: no columns");
    require_same_dim(columns.size(), weights.size(), "ConvexPoint weights");
    double sum = 0.0;
    for (double w : weights) {
      if (w < -kSimplexTol) throw std::invalid_argument("ConvexPoint: negative weight");
      sum += w;
    }
    if (std::abs(sum - 1.0) > kSimplexTol) {
      throw std::invalid_argument("ConvexPoint: weights sum to " + std::to_string(sum));
    }
    for (const auto& x : columns) require_same_dim(x.size(), columns.front().size(), "ConvexPoint");
  }
};

/// sum_j c_j x_j
inline double dot(std::span<const double> c, const BinarySolution& x) {
  require_same_dim(c.size(), x.size(), "dot");
  double s = 0.0;
  for (Index j = 0; j < c.size(); ++j)
    if (x[j]) s += c[j];
  return s;
}

inline double dot(const Scenario& c, const BinarySolution& x) { return dot(c.costs, x); }

inline double dot(std::span<const double> a, std::span<const double> b) {
  require_same_dim(a.size(), b.size(), "dot");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

/// Fractional vector sum_i lambda_i x^i.
inline Vector mix(const ConvexPoint& point) {
  point.validate();
  const std::size_t n = point.columns.front().size();
  Vector x(n, 0.0);
  for (Index i = 0; i < point.columns.size(); ++i) {
    const double w = std::max(0.0, point.weights[i]);
    for (Index j = 0; j < n; ++j)
      if (point.columns[i][j]) x[j] += w;
  }
  for (double& v : x) v = std::clamp(v, 0.0, 1.0);
  return x;
}

inline Vector to_real(const BinarySolution& x) {
  Vector v(x.size());
  for (Index j = 0; j < x.size(); ++j) v[j] = x[j] ? 1.0 : 0.0;
  return v;
}

}  // namespace mmm

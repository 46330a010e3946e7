#pragma once

// Approximation by the k heaviest columns of an optimal convex combination,
// and exact evaluation of a solution tuple.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mmm/guarantees.hpp"
#include "mmm/instance.hpp"
#include "mmm/lower_bound.hpp"

namespace mmm {

struct Evaluation {
  double value = 0.0;
  Scenario c_star;
};

/// max_{c in U} min_i c^T x^i.
inline Evaluation evaluate(const Instance& inst, const SolutionTuple& tuple) {
  if (tuple.slots.empty()) throw std::invalid_argument("evaluate: empty tuple");
  inst.validate();
  tuple.validate();
  require_same_dim(tuple.dimension(), inst.dimension(), "evaluate");
  const auto wc = max_min(inst.uncertainty, tuple.slots);
  return {wc.value, wc.c_star};
}

struct ApproxResult {
  SolutionTuple tuple;
  double value = 0.0;
  Scenario c_star;
  std::optional<GuaranteeCertificate> certificate;
  /// Weights of the selected columns in the reduced convex combination.
  Vector selected_weights;
};

/// Column order used for selection: weight descending, generation order on ties.
/// Weights are compared on a 1e-9 grid so that numerically equal weights tie.
inline std::vector<Index> selection_order(const Vector& weights) {
  std::vector<Index> order(weights.size());
  std::iota(order.begin(), order.end(), Index{0});
  auto key = [&](Index i) { return std::llround(weights[i] * 1e9); };
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return key(a) > key(b); });
  return order;
}

/// Selection and evaluation for a given k, reusing an existing convex-hull solve.
inline ApproxResult approximate_from_hull(const Instance& inst, const ConvexHullResult& hull,
                                          std::size_t k) {
  if (k == 0) throw std::invalid_argument("approximate: k must be >= 1");
  const auto& pt = hull.point;
  const auto order = selection_order(pt.weights);
  ApproxResult out;
  for (std::size_t r = 0; r < k; ++r) {
    const Index i = r < order.size() ? order[r] : order.front();
    out.tuple.slots.push_back(pt.columns[i]);
    out.selected_weights.push_back(r < order.size() ? pt.weights[i] : 0.0);
  }
  const auto ev = evaluate(inst, out.tuple);
  out.value = ev.value;
  out.c_star = ev.c_star;
  if (inst.profile) out.certificate = certificate(*inst.profile, inst.dimension(), k);
  return out;
}

inline ApproxResult approximate(const Instance& inst, std::size_t k,
                                const LowerBoundOptions& opt = {}) {
  if (k == 0) throw std::invalid_argument("approximate: k must be >= 1");
  return approximate_from_hull(inst, solve_convex_hull(inst, opt), k);
}

}  // namespace mmm

#include <gtest/gtest.h>

#include <random>

#include "mmm/mmm.hpp"
#include "support.hpp"

using namespace mmm;
using namespace mmm::testing;

namespace {

Instance two_units() {
  return Instance{std::make_shared<ExplicitListOracle>(
                      2, std::vector<BinarySolution>{BinarySolution{1, 0}, BinarySolution{0, 1}}),
                  BudgetedSet({1, 1}, {1, 1}, 1.0), std::nullopt};
}

}  // namespace

TEST(Approximate, TwoUnitVectors) {
  const auto inst = two_units();
  const auto a2 = approximate(inst, 2);
  EXPECT_EQ(a2.tuple.slots, (std::vector<BinarySolution>{BinarySolution{1, 0}, BinarySolution{0, 1}}));
  EXPECT_NEAR(a2.value, 1.5, 1e-9);
  const auto a1 = approximate(inst, 1);
  EXPECT_EQ(a1.tuple.slots, (std::vector<BinarySolution>{BinarySolution{1, 0}}));
  EXPECT_NEAR(a1.value, 2.0, 1e-9);
}

TEST(Approximate, PadsWithHeaviestColumn) {
  const auto a = approximate(two_units(), 4);
  ASSERT_EQ(a.tuple.k(), 4u);
  EXPECT_EQ(a.tuple.slots[2], a.tuple.slots[0]);
  EXPECT_EQ(a.tuple.slots[3], a.tuple.slots[0]);
  EXPECT_NEAR(a.value, 1.5, 1e-9);
}

TEST(Approximate, RejectsZeroK) { EXPECT_THROW(approximate(two_units(), 0), std::invalid_argument); }

TEST(Approximate, CertificateFromProfile) {
  auto inst = two_units();
  inst.profile = GuaranteeProfile{2.0, 1.0, PFunction::constant(1.0), PFunction::constant(1.0)};
  const auto a = approximate(inst, 1);
  ASSERT_TRUE(a.certificate.has_value());
  // M(2) = 2 - 1 = 1, bound 1 * (2 - 1) / 2
  EXPECT_NEAR(a.certificate->additive, 0.5, 1e-12);
  EXPECT_TRUE(a.certificate->multiplicative_available);
  EXPECT_NEAR(a.certificate->multiplicative, 1.0 + 2.0 * 1.0 / 2.0, 1e-12);
  EXPECT_FALSE(approximate(two_units(), 1).certificate.has_value());
}

TEST(SelectionOrder, DescendingWithStableTies) {
  EXPECT_EQ(selection_order({0.2, 0.5, 0.3}), (std::vector<Index>{1, 2, 0}));
  EXPECT_EQ(selection_order({0.25, 0.25, 0.5}), (std::vector<Index>{2, 0, 1}));
  EXPECT_EQ(selection_order({0.5, 0.5 + 1e-12}), (std::vector<Index>{0, 1}));
}

TEST(Evaluate, Examples) {
  const BudgetedSet u({1, 1}, {1, 1}, 1.0);
  const auto inst = two_units();
  EXPECT_NEAR(evaluate(inst, SolutionTuple{BinarySolution{1, 0}}).value,
              worst_case(u, BinarySolution{1, 0}).value, 1e-9);
  EXPECT_NEAR(evaluate(inst, SolutionTuple{BinarySolution{1, 0}, BinarySolution{0, 1}}).value, 1.5,
              1e-9);
  EXPECT_NEAR(evaluate(inst, SolutionTuple{BinarySolution{0, 1}, BinarySolution{0, 1}}).value,
              evaluate(inst, SolutionTuple{BinarySolution{0, 1}}).value, 1e-12);
  EXPECT_THROW(evaluate(inst, SolutionTuple{}), std::invalid_argument);
  EXPECT_THROW(evaluate(inst, SolutionTuple{BinarySolution{1, 0, 1}}), DimensionError);
}

TEST(Evaluate, CStarIsAWorstScenario) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 50; ++trial) {
    const auto tc = random_tiny(rng);
    const auto ev = evaluate(tc.inst, SolutionTuple(tc.X));
    EXPECT_TRUE(contains(tc.inst.uncertainty, ev.c_star));
    double m = std::numeric_limits<double>::infinity();
    for (const auto& x : tc.X) m = std::min(m, dot(ev.c_star, x));
    EXPECT_NEAR(m, ev.value, 1e-9);
    EXPECT_NEAR(ev.value, vertex_max_min(tc.set, tc.X), 1e-7);
  }
}

TEST(Approximate, PropertySandwichMonotoneAndCertified) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 40; ++trial) {
    auto tc = random_tiny(rng, 4, 6, true);
    tc.inst.profile = constructed_profile(tc);
    const std::size_t n = tc.set.dimension();
    const auto hull = solve_convex_hull(tc.inst);
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= n + 1; ++k) {
      const auto a = approximate_from_hull(tc.inst, hull, k);
      const double opt = exhaustive_opt(tc.set, tc.X, k);
      EXPECT_LE(hull.value, opt + 1e-6);
      EXPECT_LE(opt, a.value + 1e-6);
      EXPECT_LE(a.value, prev + 1e-9) << "app(k) increased at k=" << k;
      prev = a.value;
      ASSERT_TRUE(a.certificate.has_value());
      EXPECT_LE(a.value - hull.value, a.certificate->additive + 1e-6);
      if (a.certificate->multiplicative_available && hull.value > 0.0)
        EXPECT_LE(a.value / hull.value, a.certificate->multiplicative + 1e-6);
      if (k >= hull.point.columns.size()) EXPECT_NEAR(a.value, hull.value, 1e-6);
    }
  }
}

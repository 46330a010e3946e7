#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <map>
#include <random>

#include "mmm/mmm.hpp"

using namespace mmm;
using nlohmann::json;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("mmm_test_" + name);
}

json knapsack_doc() {
  return json{{"schema_version", 1},
              {"type", "knapsack"},
              {"n", 2},
              {"seed", 0},
              {"data", {{"weights", {2, 3}}, {"capacity", 3}}},
              {"uncertainty", {{"kind", "budgeted"}, {"mean", {5, 1}}, {"dev", {1, 1}}, {"gamma", 1}}}};
}

std::string error_of(const json& doc) {
  try {
    from_json(doc);
  } catch (const InstanceFormatError& e) {
    return e.what();
  }
  return "";
}

void expect_same(const InstanceRecord& a, const InstanceRecord& b) {
  EXPECT_EQ(to_json(a), to_json(b));
  EXPECT_EQ(a.type, b.type);
  EXPECT_EQ(a.seed, b.seed);
  if (const auto* ka = std::get_if<KnapsackData>(&a.data)) {
    const auto& kb = std::get<KnapsackData>(b.data);
    EXPECT_EQ(ka->weights, kb.weights);
    EXPECT_EQ(ka->capacity, kb.capacity);
  } else if (const auto* sa = std::get_if<ShortestPathData>(&a.data)) {
    const auto& sb = std::get<ShortestPathData>(b.data);
    EXPECT_EQ(sa->num_nodes, sb.num_nodes);
    EXPECT_EQ(sa->coords, sb.coords);
    EXPECT_EQ(sa->arcs, sb.arcs);
    EXPECT_EQ(sa->source, sb.source);
    EXPECT_EQ(sa->sink, sb.sink);
  }
  const auto& ua = std::get<BudgetedSet>(a.uncertainty);
  const auto& ub = std::get<BudgetedSet>(b.uncertainty);
  EXPECT_EQ(ua.mean, ub.mean);
  EXPECT_EQ(ua.deviation, ub.deviation);
  EXPECT_EQ(ua.budget, ub.budget);
}

}  // namespace

TEST(GenKnapsack, Deterministic) {
  for (std::uint64_t seed : {0ull, 1ull, 12345ull}) expect_same(gen_knapsack(37, seed), gen_knapsack(37, seed));
  EXPECT_NE(to_json(gen_knapsack(37, 1)), to_json(gen_knapsack(37, 2)));
}

TEST(GenKnapsack, Budget) {
  EXPECT_EQ(std::get<BudgetedSet>(gen_knapsack(50, 1).uncertainty).budget, 2.0);
  EXPECT_EQ(std::get<BudgetedSet>(gen_knapsack(400, 1).uncertainty).budget, 20.0);
  EXPECT_EQ(std::get<BudgetedSet>(gen_knapsack(19, 1).uncertainty).budget, 0.0);
  EXPECT_THROW(gen_knapsack(0, 1), std::invalid_argument);
}

TEST(GenKnapsack, RecipeInvariants) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rec = gen_knapsack(60, seed);
    const auto& kd = std::get<KnapsackData>(rec.data);
    const auto& u = std::get<BudgetedSet>(rec.uncertainty);
    std::int64_t total = 0;
    for (auto w : kd.weights) {
      EXPECT_GE(w, 1);
      EXPECT_LE(w, 100);
      total += w;
    }
    EXPECT_EQ(kd.capacity, static_cast<std::int64_t>(std::floor(0.35 * static_cast<double>(total))));
    for (Index j = 0; j < 60; ++j) {
      EXPECT_GE(u.mean[j], 1.0);
      EXPECT_LE(u.mean[j], 100.0);
      EXPECT_EQ(u.mean[j], std::floor(u.mean[j]));
      EXPECT_GE(u.deviation[j], 1.0);
      EXPECT_LE(u.deviation[j], u.mean[j]);
    }
  }
}

TEST(GenKnapsack, MeanCostStatistic) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto rec = gen_knapsack(20, seed);
    const auto& u = std::get<BudgetedSet>(rec.uncertainty);
    for (double c : u.mean) sum += c;
    count += u.mean.size();
  }
  const double mean = sum / static_cast<double>(count);
  EXPECT_GE(mean, 48.0);
  EXPECT_LE(mean, 53.0);
}

TEST(GenShortestPath, DeterministicAndRecipe) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto a = gen_shortest_path(20, 3.0, seed);
    expect_same(a, gen_shortest_path(20, 3.0, seed));
    EXPECT_TRUE(a.warnings.empty());
    const auto& sp = std::get<ShortestPathData>(a.data);
    const auto& u = std::get<BudgetedSet>(a.uncertainty);
    EXPECT_EQ(u.budget, 3.0);
    EXPECT_EQ(sp.source, 0u);
    EXPECT_EQ(sp.sink, 19u);
    for (const auto& c : sp.coords) {
      EXPECT_GE(c[0], 0.0);
      EXPECT_LT(c[0], 10.0);
      EXPECT_GE(c[1], 0.0);
      EXPECT_LT(c[1], 10.0);
    }
    for (Index j = 0; j < u.dimension(); ++j) EXPECT_EQ(u.deviation[j] / u.mean[j], 0.5);
    EXPECT_TRUE(minimize(*a.make_oracle(), u.mean).has_value());
    // opposing arcs between one node pair carry the same mean cost
    std::map<std::pair<Index, Index>, double> cost;
    for (Index j = 0; j < sp.arcs.size(); ++j) cost[{sp.arcs[j].tail, sp.arcs[j].head}] = u.mean[j];
    for (const auto& [key, c] : cost) {
      auto it = cost.find({key.second, key.first});
      if (it != cost.end()) {
        EXPECT_EQ(it->second, c);
      }
    }
  }
}

TEST(GenShortestPath, WarningsAndClamping) {
  const auto odd = gen_shortest_path(10, 4.0, 1);
  EXPECT_FALSE(odd.warnings.empty());
  EXPECT_EQ(std::get<BudgetedSet>(odd.uncertainty).budget, 4.0);
  const auto tiny = gen_shortest_path(2, 6.0, 1, 1.0);
  EXPECT_EQ(tiny.dimension(), 2u);
  EXPECT_EQ(std::get<BudgetedSet>(tiny.uncertainty).budget, 2.0);
  EXPECT_THROW(gen_shortest_path(1, 3.0, 1), std::invalid_argument);
  EXPECT_THROW(gen_shortest_path(10, 3.0, 1, 0.0), std::invalid_argument);
}

TEST(SaveLoad, RoundTripTwentyInstances) {
  for (std::uint64_t i = 0; i < 20; ++i) {
    auto rec = i % 2 ? gen_knapsack(5 + i, i) : gen_shortest_path(5 + i / 2, i % 4 ? 3.0 : 6.0, i);
    if (i % 5 == 0) rec.fixation = FixationSet({SlotFixation{{0}, {1}}, SlotFixation{}});
    if (i % 3 == 0)
      rec.profile = GuaranteeProfile{100.0, 1.0, PFunction::constant(1.0),
                                     i % 2 ? PFunction::linear() : PFunction::sqrt_n()};
    const auto path = temp_file("roundtrip_" + std::to_string(i) + ".json");
    save(rec, path.string());
    const auto back = load(path.string());
    std::filesystem::remove(path);
    expect_same(rec, back);
    EXPECT_EQ(back.fixation.has_value(), rec.fixation.has_value());
    if (rec.fixation) {
      EXPECT_EQ(*back.fixation, *rec.fixation);
    }
    EXPECT_EQ(back.profile.has_value(), rec.profile.has_value());
  }
}

TEST(SaveLoad, FullPrecisionNumbers) {
  auto rec = gen_shortest_path(12, 3.0, 9);
  const auto back = parse_instance(to_json(rec).dump());
  EXPECT_EQ(std::get<BudgetedSet>(back.uncertainty).mean, std::get<BudgetedSet>(rec.uncertainty).mean);
}

TEST(SaveLoad, PolytopeAndExplicit) {
  json doc{{"schema_version", 1},
           {"type", "explicit"},
           {"n", 2},
           {"data", {{"solutions", {{1, 0}, {0, 1}}}}},
           {"uncertainty",
            {{"kind", "polytope"}, {"A", {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}}, {"b", {2, 2, -1, -1}}}}};
  const auto rec = from_json(doc);
  EXPECT_EQ(rec.dimension(), 2u);
  EXPECT_NEAR(solve_convex_hull(rec.instance()).value, 2.0, 1e-9);
  EXPECT_EQ(to_json(from_json(to_json(rec))), to_json(rec));
}

TEST(Validation, NegativeGamma) {
  auto doc = knapsack_doc();
  doc["uncertainty"]["gamma"] = -1;
  EXPECT_NE(error_of(doc).find("$.uncertainty.gamma"), std::string::npos);
}

TEST(Validation, FixationOverlap) {
  auto doc = knapsack_doc();
  doc["fixation"] = {{"slots", {{{"zero", {0}}, {"one", {0}}}}}};
  EXPECT_NE(error_of(doc).find("$.fixation.slots[0]"), std::string::npos);
}

TEST(Validation, OtherErrors) {
  auto doc = knapsack_doc();
  doc["uncertainty"]["dev"] = {1, -1};
  EXPECT_NE(error_of(doc).find("$.uncertainty.dev[1]"), std::string::npos);
  doc = knapsack_doc();
  doc["data"]["weights"] = {2};
  EXPECT_NE(error_of(doc).find("$.data.weights"), std::string::npos);
  doc = knapsack_doc();
  doc["schema_version"] = 7;
  EXPECT_NE(error_of(doc).find("$.schema_version"), std::string::npos);
  doc = knapsack_doc();
  doc["type"] = "tsp";
  EXPECT_NE(error_of(doc).find("$.type"), std::string::npos);
  doc = knapsack_doc();
  doc.erase("uncertainty");
  EXPECT_NE(error_of(doc).find("uncertainty"), std::string::npos);
  doc = knapsack_doc();
  doc["uncertainty"]["gamma"] = 3;
  EXPECT_NE(error_of(doc).find("$.uncertainty.gamma"), std::string::npos);
}

TEST(Validation, ParseErrorHasPosition) {
  try {
    parse_instance("{\"type\": ");
    FAIL();
  } catch (const InstanceFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
  }
  EXPECT_THROW(load("/nonexistent/file.json"), InstanceFormatError);
}

TEST(Rng, Determinism) {
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.uniform_int(1, 100), b.uniform_int(1, 100));
  Rng c(6);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform01();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
}

#pragma once

// Seeded instance generators and the JSON instance format.
//
// Random numbers: every stream is a std::mt19937_64 seeded with
// splitmix64(seed ^ (stream * 0x9E3779B97F4A7C15)). Integers in [lo, hi] use
// rejection sampling on the raw 64-bit output; reals in [0, 1) take the top 53
// bits. Streams: 1 knapsack costs, 2 knapsack weights, 3 knapsack deviations,
// 4 shortest-path coordinates, 5 shortest-path arcs (attempt a draws from
// stream 5 re-split with a).

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmm/guarantees.hpp"
#include "mmm/instance.hpp"
#include "mmm/oracles.hpp"
#include "mmm/uncertainty.hpp"

namespace mmm {

inline constexpr int kSchemaVersion = 1;

// ---- random numbers ----------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ (stream * 0x9E3779B97F4A7C15ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform on {lo, ..., hi}.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("Rng::uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t r;
    do r = next();
    while (r >= limit);
    return lo + static_cast<std::int64_t>(r % span);
  }

  /// Uniform on [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 eng_;
};

// ---- records -----------------------------------------------------------------

struct KnapsackData {
  std::vector<std::int64_t> weights;
  std::int64_t capacity = 0;
};

struct ShortestPathData {
  std::size_t num_nodes = 0;
  std::vector<std::array<double, 2>> coords;
  std::vector<Arc> arcs;
  Index source = 0;
  Index sink = 0;
  double arc_prob = 0.5;
};

struct ExplicitData {
  std::vector<BinarySolution> solutions;
};

/// Everything a file holds: problem data, uncertainty set, and optional
/// fixations and guarantee profile.
struct InstanceRecord {
  std::string type;  // knapsack | shortest_path | explicit
  std::uint64_t seed = 0;
  std::variant<KnapsackData, ShortestPathData, ExplicitData> data;
  UncertaintySet uncertainty;
  std::optional<FixationSet> fixation;
  std::optional<GuaranteeProfile> profile;
  std::vector<std::string> warnings;

  std::size_t dimension() const { return mmm::dimension(uncertainty); }

  std::shared_ptr<const Oracle> make_oracle() const {
    if (const auto* k = std::get_if<KnapsackData>(&data))
      return std::make_shared<KnapsackOracle>(k->weights, k->capacity);
    if (const auto* p = std::get_if<ShortestPathData>(&data))
      return std::make_shared<ShortestPathOracle>(p->num_nodes, p->arcs, p->source, p->sink);
    const auto& e = std::get<ExplicitData>(data);
    return std::make_shared<ExplicitListOracle>(dimension(), e.solutions);
  }

  Instance instance() const {
    Instance inst{make_oracle(), uncertainty, profile};
    inst.validate();
    return inst;
  }
};

// ---- generators --------------------------------------------------------------

/// Costs and weights uniform on {1..100}, requirement floor(0.35 * sum a),
/// deviations uniform on {1..c_j}, budget floor(n/20).
inline InstanceRecord gen_knapsack(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("gen_knapsack: n must be >= 1");
  Rng rc(sub_seed(seed, 1)), rw(sub_seed(seed, 2)), rd(sub_seed(seed, 3));
  Vector mean(n), dev(n);
  KnapsackData kd;
  kd.weights.resize(n);
  std::int64_t total = 0;
  for (Index j = 0; j < n; ++j) {
    mean[j] = static_cast<double>(rc.uniform_int(1, 100));
    kd.weights[j] = rw.uniform_int(1, 100);
    total += kd.weights[j];
  }
  for (Index j = 0; j < n; ++j)
    dev[j] = static_cast<double>(rd.uniform_int(1, static_cast<std::int64_t>(mean[j])));
  kd.capacity = total * 35 / 100;
  InstanceRecord rec;
  rec.type = "knapsack";
  rec.seed = seed;
  rec.data = std::move(kd);
  rec.uncertainty = BudgetedSet(std::move(mean), std::move(dev), static_cast<double>(n / 20));
  return rec;
}

namespace detail {

inline bool reaches(std::size_t num_nodes, const std::vector<Arc>& arcs, Index s, Index t) {
  std::vector<std::vector<Index>> out(num_nodes);
  for (const auto& a : arcs) out[a.tail].push_back(a.head);
  std::vector<bool> seen(num_nodes, false);
  std::queue<Index> q;
  q.push(s);
  seen[s] = true;
  while (!q.empty()) {
    const Index v = q.front();
    q.pop();
    if (v == t) return true;
    for (Index w : out[v])
      if (!seen[w]) {
        seen[w] = true;
        q.push(w);
      }
  }
  return false;
}

}  // namespace detail

/// Points uniform in [0,10]^2; each ordered node pair becomes an arc with
/// probability `arc_prob`; mean cost = Euclidean length, deviation = half of it.
/// Source is node 0, sink node |V|-1. Arcs are redrawn until the sink is reachable.
inline InstanceRecord gen_shortest_path(std::size_t num_nodes, double gamma, std::uint64_t seed,
                                        double arc_prob = 0.5, unsigned max_attempts = 1000) {
  if (num_nodes < 2) throw std::invalid_argument("gen_shortest_path: need at least 2 nodes");
  if (!(arc_prob > 0.0 && arc_prob <= 1.0))
    throw std::invalid_argument("gen_shortest_path: arc_prob must lie in (0, 1]");
  InstanceRecord rec;
  if (gamma != 3.0 && gamma != 6.0)
    rec.warnings.push_back("gamma outside the usual {3, 6}");
  ShortestPathData sp;
  sp.num_nodes = num_nodes;
  sp.source = 0;
  sp.sink = num_nodes - 1;
  sp.arc_prob = arc_prob;
  Rng rc(sub_seed(seed, 4));
  for (Index v = 0; v < num_nodes; ++v) {
    const double x = 10.0 * rc.uniform01();
    const double y = 10.0 * rc.uniform01();
    sp.coords.push_back({x, y});
  }
  const std::uint64_t arc_stream = sub_seed(seed, 5);
  bool ok = false;
  for (unsigned attempt = 0; attempt < max_attempts && !ok; ++attempt) {
    Rng ra(sub_seed(arc_stream, attempt));
    sp.arcs.clear();
    for (Index u = 0; u < num_nodes; ++u)
      for (Index v = 0; v < num_nodes; ++v)
        if (u != v && ra.uniform01() < arc_prob) sp.arcs.push_back({u, v});
    ok = detail::reaches(num_nodes, sp.arcs, sp.source, sp.sink);
  }
  if (!ok) throw std::runtime_error("gen_shortest_path: no connected graph within the retry limit");
  Vector mean, dev;
  for (const auto& a : sp.arcs) {
    const double dx = sp.coords[a.tail][0] - sp.coords[a.head][0];
    const double dy = sp.coords[a.tail][1] - sp.coords[a.head][1];
    const double c = std::sqrt(dx * dx + dy * dy);
    mean.push_back(c);
    dev.push_back(c / 2.0);
  }
  if (gamma > static_cast<double>(mean.size())) gamma = static_cast<double>(mean.size());
  rec.type = "shortest_path";
  rec.seed = seed;
  rec.data = std::move(sp);
  rec.uncertainty = BudgetedSet(std::move(mean), std::move(dev), gamma);
  return rec;
}

// ---- JSON ------------------------------------------------------------------------

class InstanceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

using nlohmann::json;

inline json pfunction_to_json(const PFunction& p) {
  switch (p.kind()) {
    case PFunction::Kind::constant:
      return {{"kind", "constant"}, {"value", p.coefficient()}};
    case PFunction::Kind::log_n:
      return {{"kind", "log"}};
    case PFunction::Kind::power:
      return {{"kind", "power"}, {"C", p.coefficient()}, {"delta", p.delta()}};
    case PFunction::Kind::table: {
      json values = json::object();
      for (const auto& [n, v] : p.values()) values[std::to_string(n)] = v;
      return {{"kind", "table"}, {"values", values}};
    }
  }
  return {};
}

/// Typed access with JSON-path error messages.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw InstanceFormatError(path_ + ": " + msg);
  }

  bool has(const char* key) const { return j_.is_object() && j_.contains(key); }

  Reader at(const char* key) const {
    if (!j_.is_object()) fail("expected an object");
    if (!j_.contains(key)) fail(std::string("missing field '") + key + "'");
    return Reader(j_.at(key), path_ + "." + key);
  }

  Reader at(std::size_t i) const {
    return Reader(j_.at(i), path_ + "[" + std::to_string(i) + "]");
  }

  std::size_t size() const {
    if (!j_.is_array()) fail("expected an array");
    return j_.size();
  }

  double number() const {
    if (!j_.is_number()) fail("expected a number");
    return j_.get<double>();
  }

  std::int64_t integer() const {
    if (!j_.is_number_integer()) {
      if (j_.is_number_float()) {
        const double v = j_.get<double>();
        if (std::floor(v) == v && std::abs(v) < 9e15) return static_cast<std::int64_t>(v);
      }
      fail("expected an integer");
    }
    return j_.get<std::int64_t>();
  }

  std::size_t index() const {
    const auto v = integer();
    if (v < 0) fail("expected a nonnegative integer");
    return static_cast<std::size_t>(v);
  }

  std::string string() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }

  Vector numbers() const {
    Vector out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(i).number();
    return out;
  }

  std::vector<Index> indices() const {
    std::vector<Index> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(i).index();
    return out;
  }

  const json& raw() const { return j_; }
  const std::string& path() const { return path_; }

 private:
  const json& j_;
  std::string path_;
};

inline PFunction pfunction_from_json(const Reader& r) {
  const auto kind = r.at("kind").string();
  if (kind == "constant") return PFunction::constant(r.at("value").number());
  if (kind == "log") return PFunction::log_n();
  if (kind == "power") {
    const double delta = r.at("delta").number();
    if (!(delta >= 0.0 && delta <= 1.0)) r.at("delta").fail("must lie in [0, 1]");
    return PFunction::power(r.at("C").number(), delta);
  }
  if (kind == "table") {
    std::map<std::size_t, double> values;
    const auto v = r.at("values");
    if (!v.raw().is_object()) v.fail("expected an object");
    for (const auto& [key, val] : v.raw().items()) {
      std::size_t n = 0;
      try {
        n = std::stoul(key);
      } catch (const std::exception&) {
        v.fail("table keys must be integers, got '" + key + "'");
      }
      Reader e(val, v.path() + "." + key);
      values[n] = e.number();
    }
    return PFunction::table(std::move(values));
  }
  r.at("kind").fail("unknown kind '" + kind + "'");
}

}  // namespace detail

inline nlohmann::json to_json(const InstanceRecord& rec) {
  using nlohmann::json;
  json j;
  j["schema_version"] = kSchemaVersion;
  j["type"] = rec.type;
  j["n"] = rec.dimension();
  j["seed"] = rec.seed;
  json data;
  if (const auto* k = std::get_if<KnapsackData>(&rec.data)) {
    data["weights"] = k->weights;
    data["capacity"] = k->capacity;
  } else if (const auto* p = std::get_if<ShortestPathData>(&rec.data)) {
    data["num_nodes"] = p->num_nodes;
    data["source"] = p->source;
    data["sink"] = p->sink;
    data["arc_prob"] = p->arc_prob;
    json coords = json::array(), arcs = json::array();
    for (const auto& c : p->coords) coords.push_back({c[0], c[1]});
    for (const auto& a : p->arcs) arcs.push_back({a.tail, a.head});
    data["coords"] = coords;
    data["arcs"] = arcs;
  } else {
    json sols = json::array();
    for (const auto& x : std::get<ExplicitData>(rec.data).solutions) sols.push_back(x.bits());
    data["solutions"] = sols;
  }
  j["data"] = data;
  json u;
  if (const auto* b = std::get_if<BudgetedSet>(&rec.uncertainty)) {
    u["kind"] = "budgeted";
    u["mean"] = b->mean;
    u["dev"] = b->deviation;
    u["gamma"] = b->budget;
  } else {
    const auto& p = std::get<PolytopeSet>(rec.uncertainty);
    u["kind"] = "polytope";
    u["A"] = p.A();
    u["b"] = p.b();
  }
  j["uncertainty"] = u;
  if (rec.fixation) {
    json slots = json::array();
    for (const auto& s : rec.fixation->slots()) slots.push_back({{"zero", s.zero}, {"one", s.one}});
    j["fixation"] = {{"slots", slots}};
  }
  if (rec.profile) {
    j["profile"] = {{"M_inf", rec.profile->M_inf},
                    {"m_inf", rec.profile->m_inf},
                    {"p_low", detail::pfunction_to_json(rec.profile->p_low)},
                    {"p_high", detail::pfunction_to_json(rec.profile->p_high)}};
  }
  return j;
}

inline InstanceRecord from_json(const nlohmann::json& j) {
  using detail::Reader;
  const Reader root(j, "$");
  const auto version = root.at("schema_version").integer();
  if (version != kSchemaVersion)
    root.at("schema_version").fail("unsupported version " + std::to_string(version));
  InstanceRecord rec;
  rec.type = root.at("type").string();
  const std::size_t n = root.at("n").index();
  if (root.has("seed")) {
    const auto& s = root.at("seed").raw();
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0))
      root.at("seed").fail("expected a nonnegative integer");
    rec.seed = s.get<std::uint64_t>();
  }

  const auto data = root.at("data");
  if (rec.type == "knapsack") {
    KnapsackData kd;
    const auto w = data.at("weights");
    for (std::size_t i = 0; i < w.size(); ++i) {
      kd.weights.push_back(w.at(i).integer());
      if (kd.weights.back() < 0) w.at(i).fail("weights must be nonnegative");
    }
    kd.capacity = data.at("capacity").integer();
    if (kd.capacity < 0) data.at("capacity").fail("must be nonnegative");
    if (kd.weights.size() != n) w.fail("length differs from n");
    rec.data = std::move(kd);
  } else if (rec.type == "shortest_path") {
    ShortestPathData sp;
    sp.num_nodes = data.at("num_nodes").index();
    sp.source = data.at("source").index();
    sp.sink = data.at("sink").index();
    if (data.has("arc_prob")) sp.arc_prob = data.at("arc_prob").number();
    if (sp.source >= sp.num_nodes) data.at("source").fail("out of range");
    if (sp.sink >= sp.num_nodes) data.at("sink").fail("out of range");
    if (sp.source == sp.sink) data.at("sink").fail("must differ from source");
    if (data.has("coords")) {
      const auto c = data.at("coords");
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c.at(i).size() != 2) c.at(i).fail("expected [x, y]");
        sp.coords.push_back({c.at(i).at(std::size_t{0}).number(), c.at(i).at(std::size_t{1}).number()});
      }
    }
    const auto a = data.at("arcs");
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a.at(i).size() != 2) a.at(i).fail("expected [tail, head]");
      const Arc arc{a.at(i).at(std::size_t{0}).index(), a.at(i).at(std::size_t{1}).index()};
      if (arc.tail >= sp.num_nodes || arc.head >= sp.num_nodes) a.at(i).fail("node out of range");
      if (arc.tail == arc.head) a.at(i).fail("self-loop");
      sp.arcs.push_back(arc);
    }
    if (sp.arcs.size() != n) a.fail("arc count differs from n");
    rec.data = std::move(sp);
  } else if (rec.type == "explicit") {
    ExplicitData ed;
    const auto s = data.at("solutions");
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto row = s.at(i);
      if (row.size() != n) row.fail("length differs from n");
      std::vector<std::uint8_t> bits;
      for (std::size_t q = 0; q < n; ++q) {
        const auto v = row.at(q).integer();
        if (v != 0 && v != 1) row.at(q).fail("entries must be 0 or 1");
        bits.push_back(static_cast<std::uint8_t>(v));
      }
      ed.solutions.emplace_back(std::move(bits));
    }
    if (ed.solutions.empty()) s.fail("at least one solution required");
    rec.data = std::move(ed);
  } else {
    root.at("type").fail("unknown type '" + rec.type + "'");
  }

  const auto u = root.at("uncertainty");
  const std::string kind = u.has("kind") ? u.at("kind").string() : "budgeted";
  if (kind == "budgeted") {
    Vector mean = u.at("mean").numbers();
    Vector dev = u.at("dev").numbers();
    const double gamma = u.at("gamma").number();
    if (mean.size() != n) u.at("mean").fail("length differs from n");
    if (dev.size() != n) u.at("dev").fail("length differs from n");
    for (std::size_t j = 0; j < n; ++j)
      if (!(dev[j] >= 0.0)) u.at("dev").at(j).fail("must be nonnegative");
    if (!(gamma >= 0.0)) u.at("gamma").fail("must be nonnegative");
    if (gamma > static_cast<double>(n)) u.at("gamma").fail("must not exceed n");
    rec.uncertainty = BudgetedSet(std::move(mean), std::move(dev), gamma);
  } else if (kind == "polytope") {
    const auto A = u.at("A");
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < A.size(); ++i) {
      rows.push_back(A.at(i).numbers());
      if (rows.back().size() != n) A.at(i).fail("length differs from n");
    }
    Vector b = u.at("b").numbers();
    if (b.size() != rows.size()) u.at("b").fail("length differs from the row count of A");
    try {
      rec.uncertainty = PolytopeSet(std::move(rows), std::move(b));
    } catch (const std::invalid_argument& e) {
      u.fail(e.what());
    }
  } else {
    u.at("kind").fail("unknown kind '" + kind + "'");
  }

  if (root.has("fixation")) {
    const auto f = root.at("fixation");
    const auto slots = f.at("slots");
    std::vector<SlotFixation> fs;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      SlotFixation s;
      const auto si = slots.at(i);
      if (si.has("zero")) s.zero = si.at("zero").indices();
      if (si.has("one")) s.one = si.at("one").indices();
      for (Index j : s.zero)
        if (j >= n) si.at("zero").fail("index " + std::to_string(j) + " out of range");
      for (Index j : s.one)
        if (j >= n) si.at("one").fail("index " + std::to_string(j) + " out of range");
      try {
        s.normalize();
      } catch (const std::invalid_argument& e) {
        si.fail(e.what());
      }
      fs.push_back(std::move(s));
    }
    if (fs.empty()) slots.fail("at least one slot required");
    rec.fixation = FixationSet(std::move(fs));
  }

  if (root.has("profile")) {
    const auto p = root.at("profile");
    GuaranteeProfile prof;
    prof.M_inf = p.at("M_inf").number();
    prof.m_inf = p.at("m_inf").number();
    prof.p_low = detail::pfunction_from_json(p.at("p_low"));
    prof.p_high = detail::pfunction_from_json(p.at("p_high"));
    try {
      prof.validate(n);
    } catch (const std::exception& e) {
      p.fail(e.what());
    }
    rec.profile = std::move(prof);
  }

  try {
    (void)rec.make_oracle();
  } catch (const std::invalid_argument& e) {
    data.fail(e.what());
  }
  return rec;
}

inline InstanceRecord parse_instance(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InstanceFormatError("parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return from_json(j);
}

inline void save(const InstanceRecord& rec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << to_json(rec).dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

inline InstanceRecord load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceFormatError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_instance(ss.str());
  } catch (const InstanceFormatError& e) {
    throw InstanceFormatError(path + ": " + e.what());
  }
}

}  // namespace mmm

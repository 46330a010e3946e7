#pragma once

// Closed-form approximation guarantees, policy-count bounds for k-adaptability,
// and support-size functions p_low(n) <= ||x||_0 <= p_high(n) for common problem classes.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mmm/core.hpp"

namespace mmm {

/// One of: constant v, log n, C * n^(1-delta), or an explicit table n -> value.
class PFunction {
 public:
  enum class Kind { constant, log_n, power, table };

  static PFunction constant(double v) {
    PFunction p;
    p.kind_ = Kind::constant;
    p.value_ = v;
    return p;
  }
  static PFunction log_n() {
    PFunction p;
    p.kind_ = Kind::log_n;
    return p;
  }
  /// C * n^(1-delta)
  static PFunction power(double C, double delta) {
    if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("PFunction: delta in [0,1]");
    PFunction p;
    p.kind_ = Kind::power;
    p.value_ = C;
    p.delta_ = delta;
    return p;
  }
  static PFunction table(std::map<std::size_t, double> values) {
    PFunction p;
    p.kind_ = Kind::table;
    p.table_ = std::move(values);
    return p;
  }
  static PFunction sqrt_n() { return power(1.0, 0.5); }
  static PFunction linear() { return power(1.0, 0.0); }

  Kind kind() const noexcept { return kind_; }
  double coefficient() const noexcept { return value_; }
  double delta() const noexcept { return delta_; }
  const std::map<std::size_t, double>& values() const noexcept { return table_; }

  double operator()(std::size_t n) const {
    const double x = static_cast<double>(n);
    switch (kind_) {
      case Kind::constant:
        return value_;
      case Kind::log_n:
        return std::log(x);
      case Kind::power:
        return value_ * std::pow(x, 1.0 - delta_);
      case Kind::table: {
        auto it = table_.find(n);
        if (it == table_.end())
          throw std::out_of_range("PFunction: no table entry for n=" + std::to_string(n));
        return it->second;
      }
    }
    return 0.0;
  }

  std::string describe() const {
    std::ostringstream os;
    switch (kind_) {
      case Kind::constant:
        os << value_;
        break;
      case Kind::log_n:
        os << "log n";
        break;
      case Kind::power:
        if (value_ != 1.0) os << value_ << "*";
        if (delta_ == 0.0)
          os << "n";
        else if (delta_ == 0.5)
          os << "sqrt(n)";
        else
          os << "n^" << (1.0 - delta_);
        break;
      case Kind::table:
        os << "table(" << table_.size() << ")";
        break;
    }
    return os.str();
  }

 private:
  Kind kind_ = Kind::constant;
  double value_ = 1.0;
  double delta_ = 0.0;
  std::map<std::size_t, double> table_;
};

/// Problem-class constants. `m_inf` must bound every cost from below
/// componentwise (c_j >= m_inf); `M_inf` bounds every |c_j| from above.
/// The norm-based lower bound of ScenarioBounds is not sufficient here.
struct GuaranteeProfile {
  double M_inf = 0.0;
  double m_inf = 0.0;
  PFunction p_low = PFunction::constant(1.0);
  PFunction p_high = PFunction::linear();

  /// Throws unless m_inf <= M_inf and 0 <= p_low(n) <= p_high(n) <= n.
  /// `require_positive` additionally demands m_inf > 0 and p_low(n) >= 1.
  void validate(std::size_t n, bool require_positive = false) const {
    if (m_inf > M_inf) throw std::invalid_argument("GuaranteeProfile: m_inf > M_inf");
    const double lo = p_low(n), hi = p_high(n);
    if (lo < 0.0 || lo > hi + 1e-12 || hi > static_cast<double>(n) + 1e-12)
      throw std::invalid_argument("GuaranteeProfile: need 0 <= p_low <= p_high <= n");
    if (require_positive && (m_inf <= 0.0 || lo < 1.0))
      throw std::invalid_argument("GuaranteeProfile: need m_inf > 0 and p_low >= 1");
  }
};

struct GuaranteeCertificate {
  double additive = 0.0;
  double multiplicative = 1.0;
  bool multiplicative_available = false;
  /// Smallest and largest k for which the bounds were derived.
  std::size_t k_min = 1;
  std::size_t k_max = 1;
};

class GuaranteeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---- raw formulas ----------------------------------------------------------

inline double additive_bound(double M, std::size_t s, std::size_t k) {
  if (s >= k) throw GuaranteeError("additive_bound: need s < k");
  return M * static_cast<double>(k - s) / static_cast<double>(s + 1);
}

inline double multiplicative_bound(double m_tilde, std::size_t s, std::size_t k) {
  if (s >= k) throw GuaranteeError("multiplicative_bound: need s < k");
  return 1.0 + m_tilde * static_cast<double>(k - s) / static_cast<double>(s + 1);
}

inline std::size_t max_l_additive(double M, std::size_t n, double a) {
  if (a < 0.0) throw GuaranteeError("max_l_additive: a must be >= 0");
  if (n == 0) throw GuaranteeError("max_l_additive: n must be >= 1");
  if (a == 0.0) return 0;
  const double bound =
      std::min(static_cast<double>(n - 1), a * static_cast<double>(n) / (M + a));
  return static_cast<std::size_t>(std::floor(bound + 1e-12));
}

inline double min_q_multiplicative(double m_tilde, double a) {
  if (a < 0.0) throw GuaranteeError("min_q_multiplicative: a must be >= 0");
  if (m_tilde + a <= 0.0) throw GuaranteeError("min_q_multiplicative: M~ + a must be > 0");
  return m_tilde / (m_tilde + a);
}

/// n >= l^(1/delta) * (C*M_inf/eps + 1)^(1/delta)
inline double n_threshold(double l, double delta, double C, double M_inf, double eps) {
  if (!(delta > 0.0 && delta <= 1.0)) throw GuaranteeError("n_threshold: delta in (0,1]");
  if (!(eps > 0.0)) throw GuaranteeError("n_threshold: eps must be > 0");
  return std::pow(l, 1.0 / delta) * std::pow(C * M_inf / eps + 1.0, 1.0 / delta);
}

// ---- profile-based calculators ----------------------------------------------

inline double big_m(const GuaranteeProfile& p, std::size_t n, bool conservative = false) {
  const double upper = p.M_inf * p.p_high(n);
  return conservative ? upper : upper - p.m_inf * p.p_low(n);
}

inline double m_tilde(const GuaranteeProfile& p, std::size_t n) {
  if (p.m_inf <= 0.0) throw GuaranteeError("m_tilde: m_inf must be > 0");
  const double lo = p.p_low(n);
  if (lo <= 0.0) throw GuaranteeError("m_tilde: p_low(n) must be > 0");
  return (p.M_inf / p.m_inf) * (p.p_high(n) / lo);
}

inline double additive_bound(const GuaranteeProfile& p, std::size_t n, std::size_t s,
                             std::size_t k) {
  if (k > n) throw GuaranteeError("additive_bound: need k <= n");
  return additive_bound(big_m(p, n), s, k);
}

inline double multiplicative_bound(const GuaranteeProfile& p, std::size_t n, std::size_t s,
                                   std::size_t k) {
  if (k > n) throw GuaranteeError("multiplicative_bound: need k <= n");
  return multiplicative_bound(m_tilde(p, n), s, k);
}

inline std::size_t max_l_additive(const GuaranteeProfile& p, std::size_t n, double a) {
  return max_l_additive(big_m(p, n), n, a);
}

inline double min_q_multiplicative(const GuaranteeProfile& p, std::size_t n, double a) {
  return min_q_multiplicative(m_tilde(p, n), a);
}

/// Bounds for the tuple returned by the approximation algorithm at this k.
inline GuaranteeCertificate certificate(const GuaranteeProfile& p, std::size_t n, std::size_t k) {
  GuaranteeCertificate c;
  c.k_min = c.k_max = k;
  if (k >= n) return c;
  c.additive = additive_bound(p, n, k, n);
  if (p.m_inf > 0.0 && p.p_low(n) >= 1.0) {
    c.multiplicative = multiplicative_bound(p, n, k, n);
    c.multiplicative_available = true;
  }
  return c;
}

// ---- k-adaptability policy counts -----------------------------------------

enum class GuaranteeMode { additive, multiplicative };

inline std::size_t kadapt_additive(double M, std::size_t n, double a) {
  return n - max_l_additive(M, n, a);
}

inline std::size_t kadapt_multiplicative(double m_tilde, std::size_t n, double a) {
  const double k = min_q_multiplicative(m_tilde, a) * static_cast<double>(n);
  return static_cast<std::size_t>(std::ceil(k - 1e-9));
}

/// Number of second-stage policies sufficient for guarantee `a`.
/// The multiplicative mode needs nonnegative first-stage costs.
inline std::size_t kadapt_policies(const GuaranteeProfile& p, std::size_t n, double a,
                                   GuaranteeMode mode, bool first_stage_nonneg) {
  if (mode == GuaranteeMode::additive) return kadapt_additive(big_m(p, n), n, a);
  if (!first_stage_nonneg)
    throw GuaranteeError("kadapt_policies: multiplicative mode needs first-stage costs >= 0");
  return kadapt_multiplicative(m_tilde(p, n), n, a);
}

// ---- support-size catalog ---------------------------------------------------

enum class ProblemClass {
  spanning_tree_complete,
  matching_complete,
  cardinality,
  tsp,
  vrp,
  generic
};

struct PPair {
  PFunction p_low;
  PFunction p_high;
};

/// `v` is the fixed support size of cardinality-constrained problems.
inline PPair profile_catalog(ProblemClass problem, double v = 1.0) {
  switch (problem) {
    case ProblemClass::spanning_tree_complete:
    case ProblemClass::matching_complete:
    case ProblemClass::tsp:
      return {PFunction::sqrt_n(), PFunction::sqrt_n()};
    case ProblemClass::vrp:
      return {PFunction::sqrt_n(), PFunction::power(2.0, 0.5)};
    case ProblemClass::cardinality:
      return {PFunction::constant(v), PFunction::constant(v)};
    case ProblemClass::generic:
      return {PFunction::constant(1.0), PFunction::linear()};
  }
  throw std::invalid_argument("profile_catalog: unknown problem");
}

inline ProblemClass parse_problem_class(const std::string& s) {
  if (s == "spanning_tree_complete") return ProblemClass::spanning_tree_complete;
  if (s == "matching_complete") return ProblemClass::matching_complete;
  if (s == "cardinality") return ProblemClass::cardinality;
  if (s == "tsp") return ProblemClass::tsp;
  if (s == "vrp") return ProblemClass::vrp;
  if (s == "generic") return ProblemClass::generic;
  throw std::invalid_argument("unknown problem class '" + s + "'");
}

// ---- range tables -------------------------------------------------------------

/// Smallest k with additive guarantee a: n(1 - a/(M + a)). With `conservative_M`
/// the profile's M(n) is replaced by M_inf * p_high(n).
inline double k0_additive(const GuaranteeProfile& p, std::size_t n, double a,
                          bool conservative_M = false) {
  const double M = big_m(p, n, conservative_M);
  return static_cast<double>(n) * (1.0 - a / (M + a));
}

/// Smallest k with multiplicative guarantee 1 + a: n * M~/(M~ + a).
inline double k0_multiplicative(const GuaranteeProfile& p, std::size_t n, double a) {
  return static_cast<double>(n) * min_q_multiplicative(p, n, a);
}

struct GuaranteeFunction {
  std::string label;
  std::function<double(std::size_t)> a;
};

inline GuaranteeFunction guarantee_constant(double eps) {
  std::ostringstream os;
  os << eps;
  return {os.str(), [eps](std::size_t) { return eps; }};
}
inline GuaranteeFunction guarantee_log() {
  return {"log n", [](std::size_t n) { return std::log(static_cast<double>(n)); }};
}
inline GuaranteeFunction guarantee_sqrt() {
  return {"sqrt(n)", [](std::size_t n) { return std::sqrt(static_cast<double>(n)); }};
}
/// n^(1-gamma)
inline GuaranteeFunction guarantee_power(double gamma) {
  std::ostringstream os;
  os << "n^" << (1.0 - gamma);
  return {os.str(), [gamma](std::size_t n) {
            return std::pow(static_cast<double>(n), 1.0 - gamma);
          }};
}

/// Parses "1", "2.5", "log" or "sqrt".
inline GuaranteeFunction parse_guarantee(const std::string& s) {
  if (s == "log" || s == "log n" || s == "ln") return guarantee_log();
  if (s == "sqrt" || s == "sqrt(n)") return guarantee_sqrt();
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || pos == 0)
    throw std::invalid_argument("guarantee must be a number, 'log' or 'sqrt', got '" + s + "'");
  return guarantee_constant(v);
}

struct RangeTable {
  std::vector<std::string> row_labels;
  std::vector<std::string> column_labels;
  std::vector<std::vector<double>> k0;  // [row][column]
};

/// Rows are p_high choices (additive) with the profile's other fields kept.
inline RangeTable additive_range_table(const GuaranteeProfile& base,
                                       const std::vector<std::pair<std::string, PFunction>>& rows,
                                       const std::vector<GuaranteeFunction>& columns,
                                       std::size_t n, bool conservative_M = true) {
  RangeTable t;
  for (const auto& c : columns) t.column_labels.push_back(c.label);
  for (const auto& [label, p_high] : rows) {
    GuaranteeProfile p = base;
    p.p_high = p_high;
    t.row_labels.push_back(label);
    auto& row = t.k0.emplace_back();
    for (const auto& c : columns) row.push_back(k0_additive(p, n, c.a(n), conservative_M));
  }
  return t;
}

/// Rows are p_high/p_low ratios (multiplicative); p_low is taken as 1.
inline RangeTable multiplicative_range_table(
    const GuaranteeProfile& base, const std::vector<std::pair<std::string, PFunction>>& rows,
    const std::vector<GuaranteeFunction>& columns, std::size_t n) {
  RangeTable t;
  for (const auto& c : columns) t.column_labels.push_back(c.label);
  for (const auto& [label, ratio] : rows) {
    GuaranteeProfile p = base;
    p.p_low = PFunction::constant(1.0);
    p.p_high = ratio;
    t.row_labels.push_back(label);
    auto& row = t.k0.emplace_back();
    for (const auto& c : columns) row.push_back(k0_multiplicative(p, n, c.a(n)));
  }
  return t;
}

// ---- formatting and the worked examples --------------------------------------

/// k/n rounded half-up to two decimals using integer arithmetic. Precision is
/// extended while rounding would collapse a proper fraction to 0 or 1.
inline std::string format_fraction(std::uint64_t k, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("format_fraction: n must be > 0");
  int digits = 2;
  std::uint64_t scale = 100;
  std::uint64_t r = 0;
  for (;;) {
    r = (2 * k * scale + n) / (2 * n);
    const bool collapsed = (r == 0 && k > 0) || (r == scale && k < n);
    if (!collapsed || digits >= 9) break;
    ++digits;
    scale *= 10;
  }
  std::string whole = std::to_string(r / scale);
  std::string frac = std::to_string(r % scale);
  frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
  return whole + "." + frac;
}

struct PolicyRow {
  std::string a_label;
  double a = 0.0;
  std::size_t additive_k = 0;
  std::size_t multiplicative_k = 0;
  std::string additive_fraction;
  std::string multiplicative_fraction;
};

/// Policy counts for given M(n), M~(n) and n across a(n) in {1, log n, sqrt n}.
inline std::vector<PolicyRow> policy_table(double M, double m_tilde, std::size_t n) {
  std::vector<PolicyRow> rows;
  for (const auto& g : {guarantee_constant(1.0), guarantee_log(), guarantee_sqrt()}) {
    PolicyRow r;
    r.a_label = g.label;
    r.a = g.a(n);
    r.additive_k = kadapt_additive(M, n, r.a);
    r.multiplicative_k = kadapt_multiplicative(m_tilde, n, r.a);
    r.additive_fraction = format_fraction(r.additive_k, n);
    r.multiplicative_fraction = format_fraction(r.multiplicative_k, n);
    rows.push_back(std::move(r));
  }
  return rows;
}

/// Recoverable robust setting: n = 1000, p = 10, M(n) = 400, M~ = 2.
inline std::vector<PolicyRow> recoverable_example() { return policy_table(400.0, 2.0, 1000); }

struct FacilityRow {
  std::string a_label;
  double a = 0.0;
  double q = 0.0;
};

/// Facility location setting: n = 100000, M~ = 2; q = M~/(M~ + a).
inline std::vector<FacilityRow> facility_example() {
  constexpr std::size_t n = 100000;
  std::vector<FacilityRow> rows;
  for (const auto& g : {guarantee_constant(1.0), guarantee_log(), guarantee_sqrt()}) {
    const double a = g.a(n);
    rows.push_back({g.label, a, min_q_multiplicative(2.0, a)});
  }
  return rows;
}

}  // namespace mmm

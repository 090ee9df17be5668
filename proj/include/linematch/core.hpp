#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace linematch {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Malformed instance: unbalanced roles, duplicate positions, non-finite
/// coordinates, duplicate ids.
class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A caller broke a precondition (index out of range, bad matching).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// g evaluated outside its domain, or a non-positive value fed to a log fit.
class CostDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The solver reached an inconsistent state (two certified reductions
/// disagree). Signals a non-concave cost or numerical breakdown.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problem size exceeds what an exhaustive routine accepts.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// ---------------------------------------------------------------------------
// Points and instances
// ---------------------------------------------------------------------------

enum class Role : std::uint8_t { Demand, Supply };

constexpr Role opposite(Role r) noexcept {
  return r == Role::Demand ? Role::Supply : Role::Demand;
}

const char* to_string(Role r) noexcept;

struct SitePoint {
  double position = 0.0;
  Role role = Role::Demand;
  std::size_t original_id = 0;

  friend bool operator==(const SitePoint&, const SitePoint&) = default;
};

/// Demand and supply points on the real line, sorted by position.
///
/// Construction validates: equal, non-zero role counts; finite, pairwise
/// distinct positions; ids unique per role. The instance is immutable.
class ProblemInstance {
 public:
  /// Takes points in any order; sorts them by position.
  static ProblemInstance create(std::vector<SitePoint> points);

  /// Builds an instance whose ids are the indices into `demand` / `supply`.
  static ProblemInstance from_positions(std::span<const double> demand,
                                        std::span<const double> supply);

  std::span<const SitePoint> points() const noexcept { return points_; }
  /// Number of demand points (equals the number of supply points).
  std::size_t pair_count() const noexcept { return points_.size() / 2; }

  /// Position of the demand/supply point with the given original id.
  double demand_position(std::size_t id) const;
  double supply_position(std::size_t id) const;

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;

 private:
  explicit ProblemInstance(std::vector<SitePoint> points);

  std::vector<SitePoint> points_;
  std::vector<double> demand_pos_;  // indexed by original id
  std::vector<double> supply_pos_;
};

// ---------------------------------------------------------------------------
// Cost functions
// ---------------------------------------------------------------------------

/// Tallies of cost-function work done by a solve.
struct EvalCounter {
  std::uint64_t fresh_evaluations = 0;
  std::uint64_t indicator_evaluations = 0;

  EvalCounter& operator+=(const EvalCounter& other) noexcept {
    fresh_evaluations += other.fresh_evaluations;
    indicator_evaluations += other.indicator_evaluations;
    return *this;
  }
  friend EvalCounter operator+(EvalCounter a, const EvalCounter& b) noexcept {
    return a += b;
  }
  friend bool operator==(const EvalCounter&, const EvalCounter&) = default;
};

/// The function g in c(p, q) = g(|p - q|).
///
/// Built-in variants are concave and non-decreasing on x > 0. `custom` wraps
/// an arbitrary callable; it is not checked (see check_concavity).
class CostSpec {
 public:
  enum class Kind : std::uint8_t { Linear, Sqrt, Log, Power, Custom };

  static CostSpec linear() { return CostSpec(Kind::Linear, 1.0); }
  static CostSpec sqrt() { return CostSpec(Kind::Sqrt, 0.5); }
  static CostSpec log() { return CostSpec(Kind::Log, 0.0); }
  /// x^exponent; exponent must lie in (0, 1].
  static CostSpec power(double exponent);
  static CostSpec custom(std::string label, std::function<double(double)> g);

  /// Parses "linear", "sqrt", "log", "power:<a>" (also "power=<a>").
  static CostSpec parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return exponent_; }
  /// Round-trippable through parse() for the built-in variants.
  std::string label() const;

  /// g(x) without touching any counter. x must be >= 0 (> 0 for Log).
  double operator()(double x) const;

 private:
  CostSpec(Kind kind, double exponent) : kind_(kind), exponent_(exponent) {}

  Kind kind_;
  double exponent_;
  std::string custom_label_;
  std::function<double(double)> custom_;
};

/// g(x), counted as one fresh evaluation.
double eval_g(const CostSpec& cost, double x, EvalCounter& counter);

/// g(|p - q|), counted as one fresh evaluation.
double pair_cost(const CostSpec& cost, double p, double q, EvalCounter& counter);

// ---------------------------------------------------------------------------
// Matchings
// ---------------------------------------------------------------------------

struct MatchedPair {
  std::size_t demand_id = 0;
  std::size_t supply_id = 0;

  friend auto operator<=>(const MatchedPair&, const MatchedPair&) = default;
};

struct Matching {
  std::vector<MatchedPair> pairs;  // sorted by demand id
  double total_cost = 0.0;
  EvalCounter evaluations;
};

/// Sum of pair costs. Throws ContractError unless `pairs` is a bijection
/// between the instance's demand and supply ids. Not counted.
double total_cost(const ProblemInstance& instance,
                  std::span<const MatchedPair> pairs, const CostSpec& cost);

/// Numeric spot check that g is non-decreasing and concave on a sorted grid
/// of at least three positive points (absolute tolerance 1e-12).
bool check_concavity(const CostSpec& cost, std::span<const double> grid);

/// |a - b| <= rel * max(1, |a|, |b|).
bool nearly_equal(double a, double b, double rel = 1e-9) noexcept;

}  // namespace linematch

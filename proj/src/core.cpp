#include "linematch/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace linematch {

const char* to_string(Role r) noexcept {
  return r == Role::Demand ? "demand" : "supply";
}

ProblemInstance::ProblemInstance(std::vector<SitePoint> points)
    : points_(std::move(points)) {}

ProblemInstance ProblemInstance::create(std::vector<SitePoint> points) {
  std::size_t demand = 0;
  std::size_t supply = 0;
  for (const auto& pt : points) {
    if (!std::isfinite(pt.position)) {
      throw InstanceError("non-finite position");
    }
    (pt.role == Role::Demand ? demand : supply) += 1;
  }
  if (demand == 0) {
    throw InstanceError("instance has no points");
  }
  if (demand != supply) {
    throw InstanceError("unbalanced instance: " + std::to_string(demand) +
                        " demand vs " + std::to_string(supply) + " supply points");
  }

  std::stable_sort(points.begin(), points.end(),
                   [](const SitePoint& a, const SitePoint& b) {
                     return a.position < b.position;
                   });
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].position == points[i - 1].position) {
      std::ostringstream msg;
      msg << "duplicate position " << points[i].position;
      throw InstanceError(msg.str());
    }
  }

  ProblemInstance inst(std::move(points));
  inst.demand_pos_.assign(demand, std::nan(""));
  inst.supply_pos_.assign(supply, std::nan(""));
  for (const auto& pt : inst.points_) {
    auto& table = pt.role == Role::Demand ? inst.demand_pos_ : inst.supply_pos_;
    if (pt.original_id >= table.size() || !std::isnan(table[pt.original_id])) {
      throw InstanceError(std::string(to_string(pt.role)) + " ids must be a permutation of 0.." +
                          std::to_string(table.size() - 1));
    }
    table[pt.original_id] = pt.position;
  }
  return inst;
}

ProblemInstance ProblemInstance::from_positions(std::span<const double> demand,
                                                std::span<const double> supply) {
  std::vector<SitePoint> pts;
  pts.reserve(demand.size() + supply.size());
  for (std::size_t i = 0; i < demand.size(); ++i) {
    pts.push_back({demand[i], Role::Demand, i});
  }
  for (std::size_t i = 0; i < supply.size(); ++i) {
    pts.push_back({supply[i], Role::Supply, i});
  }
  return create(std::move(pts));
}

double ProblemInstance::demand_position(std::size_t id) const {
  if (id >= demand_pos_.size()) throw ContractError("demand id out of range");
  return demand_pos_[id];
}

double ProblemInstance::supply_position(std::size_t id) const {
  if (id >= supply_pos_.size()) throw ContractError("supply id out of range");
  return supply_pos_[id];
}

// ---------------------------------------------------------------------------

CostSpec CostSpec::power(double exponent) {
  if (!(exponent > 0.0 && exponent <= 1.0)) {
    throw InstanceError("power exponent must lie in (0, 1]");
  }
  return CostSpec(Kind::Power, exponent);
}

CostSpec CostSpec::custom(std::string label, std::function<double(double)> g) {
  if (!g) throw ContractError("custom cost needs a callable");
  CostSpec c(Kind::Custom, 0.0);
  c.custom_label_ = std::move(label);
  c.custom_ = std::move(g);
  return c;
}

CostSpec CostSpec::parse(const std::string& text) {
  if (text == "linear") return linear();
  if (text == "sqrt") return sqrt();
  if (text == "log") return log();
  if (text.rfind("power", 0) == 0 && text.size() > 6 &&
      (text[5] == ':' || text[5] == '=')) {
    const char* first = text.data() + 6;
    const char* last = text.data() + text.size();
    double a = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, a);
    if (ec != std::errc() || ptr != last) {
      throw InstanceError("bad power exponent in cost '" + text + "'");
    }
    return power(a);
  }
  throw InstanceError("unknown cost '" + text + "' (expected linear, sqrt, log or power:<a>)");
}

std::string CostSpec::label() const {
  switch (kind_) {
    case Kind::Linear: return "linear";
    case Kind::Sqrt: return "sqrt";
    case Kind::Log: return "log";
    case Kind::Power: {
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof(buf), exponent_);
      return "power:" + std::string(buf, res.ptr);
    }
    case Kind::Custom: return custom_label_;
  }
  return {};
}

double CostSpec::operator()(double x) const {
  if (!(x >= 0.0)) throw CostDomainError("negative or NaN distance");
  switch (kind_) {
    case Kind::Linear: return x;
    case Kind::Sqrt: return std::sqrt(x);
    case Kind::Log:
      if (x == 0.0) throw CostDomainError("zero distance under log cost");
      return std::log(x);
    case Kind::Power: return exponent_ == 1.0 ? x : std::pow(x, exponent_);
    case Kind::Custom: return custom_(x);
  }
  return 0.0;
}

double eval_g(const CostSpec& cost, double x, EvalCounter& counter) {
  const double v = cost(x);
  ++counter.fresh_evaluations;
  return v;
}

double pair_cost(const CostSpec& cost, double p, double q, EvalCounter& counter) {
  return eval_g(cost, std::abs(p - q), counter);
}

// ---------------------------------------------------------------------------

double total_cost(const ProblemInstance& instance,
                  std::span<const MatchedPair> pairs, const CostSpec& cost) {
  const std::size_t n = instance.pair_count();
  if (pairs.size() != n) {
    throw ContractError("matching has " + std::to_string(pairs.size()) +
                        " pairs, instance has " + std::to_string(n));
  }
  std::vector<bool> seen_demand(n, false);
  std::vector<bool> seen_supply(n, false);
  double sum = 0.0;
  for (const auto& pr : pairs) {
    if (pr.demand_id >= n || pr.supply_id >= n) {
      throw ContractError("matching refers to an unknown id");
    }
    if (seen_demand[pr.demand_id] || seen_supply[pr.supply_id]) {
      throw ContractError("matching uses an id twice");
    }
    seen_demand[pr.demand_id] = true;
    seen_supply[pr.supply_id] = true;
    sum += cost(std::abs(instance.demand_position(pr.demand_id) -
                         instance.supply_position(pr.supply_id)));
  }
  return sum;
}

bool check_concavity(const CostSpec& cost, std::span<const double> grid) {
  constexpr double tol = 1e-12;
  if (grid.size() < 3) return false;
  double prev_slope = 0.0;
  double prev_value = cost(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double value = cost(grid[i]);
    const double rise = value - prev_value;
    if (rise < -tol) return false;
    const double slope = rise / (grid[i] - grid[i - 1]);
    if (i >= 2 && slope - prev_slope > tol) return false;
    prev_slope = slope;
    prev_value = value;
  }
  return true;
}

bool nearly_equal(double a, double b, double rel) noexcept {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= rel * scale;
}

}  // namespace linematch

#include "linematch/indicators.hpp"

#include <string>

namespace linematch {

double PairCostMemo::get(const CostSpec& cost, const SitePoint& p,
                         const SitePoint& q, EvalCounter& counter) {
  constexpr std::size_t id_limit = std::size_t{1} << 32;
  if (p.original_id >= id_limit || q.original_id >= id_limit) {
    throw ContractError("point id too large for the pair-cost memo");
  }
  const std::uint64_t key =
      (static_cast<std::uint64_t>(p.original_id) << 32) | q.original_id;
  if (auto it = table_.find(key); it != table_.end()) return it->second;
  const double v = pair_cost(cost, p.position, q.position, counter);
  table_.emplace(key, v);
  return v;
}

IndicatorCache::IndicatorCache(std::span<const SitePoint> p,
                               std::span<const SitePoint> q,
                               const CostSpec& cost, EvalCounter& counter,
                               PairCostMemo& memo)
    : p_(p.begin(), p.end()),
      q_(q.begin(), q.end()),
      cost_(&cost),
      counter_(&counter),
      memo_(&memo) {
  if (p_.size() != q_.size() || p_.empty()) {
    throw ContractError("indicator cache needs N >= 1 points of each side");
  }
  const std::size_t n = p_.size();
  straight_.resize(n);
  staircase_.resize(n - 1);
  straight_prefix_.assign(n + 1, 0.0L);
  staircase_prefix_.assign(n, 0.0L);

  // Extended-precision prefix sums; a range sum is rounded once.
  long double run_straight = 0.0L;
  long double run_stair = 0.0L;
  for (std::size_t j = 0; j < n; ++j) {
    straight_[j] = memo.get(cost, p_[j], q_[j], counter);
    run_straight += straight_[j];
    straight_prefix_[j + 1] = run_straight;
    if (j + 1 < n) {
      staircase_[j] = memo.get(cost, p_[j + 1], q_[j], counter);
      run_stair += staircase_[j];
      staircase_prefix_[j + 1] = run_stair;
    }
  }
}

double IndicatorCache::straight_sum(std::size_t first, std::size_t last) const {
  if (first >= last) return 0.0;
  return static_cast<double>(straight_prefix_[last] - straight_prefix_[first]);
}

double IndicatorCache::staircase_sum(std::size_t first, std::size_t last) const {
  if (first >= last) return 0.0;
  return static_cast<double>(staircase_prefix_[last] - staircase_prefix_[first]);
}

void IndicatorCache::check_p_range(std::size_t k, std::size_t i) const {
  const std::size_t n = p_.size();
  if (k < 1 || k + 1 > n || i + k >= n) {
    throw ContractError("indicator_p index out of range: k=" + std::to_string(k) +
                        " i=" + std::to_string(i) + " N=" + std::to_string(n));
  }
}

void IndicatorCache::check_q_range(std::size_t k, std::size_t i) const {
  const std::size_t n = p_.size();
  if (k < 1 || k + 2 > n || i + k + 1 >= n) {
    throw ContractError("indicator_q index out of range: k=" + std::to_string(k) +
                        " i=" + std::to_string(i) + " N=" + std::to_string(n));
  }
}

double IndicatorCache::indicator_p(std::size_t k, std::size_t i) const {
  check_p_range(k, i);
  const double jump = memo_->get(*cost_, p_[i], q_[i + k], *counter_);
  ++counter_->indicator_evaluations;
  return jump + staircase_sum(i, i + k) - straight_sum(i, i + k + 1);
}

double IndicatorCache::indicator_q(std::size_t k, std::size_t i) const {
  check_q_range(k, i);
  const double jump = memo_->get(*cost_, p_[i + k + 1], q_[i], *counter_);
  ++counter_->indicator_evaluations;
  return jump + straight_sum(i + 1, i + k + 1) - staircase_sum(i, i + k + 1);
}

double IndicatorCache::phi_p(std::size_t k, std::size_t i, double x, double y) const {
  check_p_range(k, i);
  const double inner = p_[i + k].position - q_[i].position;
  return g(x + y + inner) + staircase_sum(i, i + k) - g(x) - g(y) -
         straight_sum(i + 1, i + k);
}

double IndicatorCache::phi_q(std::size_t k, std::size_t i, double x, double y) const {
  check_q_range(k, i);
  const double inner = q_[i + k].position - p_[i + 1].position;
  return g(x + y + inner) + straight_sum(i + 1, i + k + 1) - g(x) - g(y) -
         staircase_sum(i + 1, i + k);
}

IndicatorCache build_cache(const Chain& chain, const CostSpec& cost,
                           EvalCounter& counter, PairCostMemo& memo) {
  if (chain.leading_role != Role::Demand) {
    throw ContractError("build_cache needs a canonical chain");
  }
  const std::size_t n = chain.pair_count();
  std::vector<SitePoint> p;
  std::vector<SitePoint> q;
  p.reserve(n);
  q.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    p.push_back(chain.p(j));
    q.push_back(chain.q(j));
  }
  return IndicatorCache(p, q, cost, counter, memo);
}

}  // namespace linematch

#pragma once

#include <cstddef>
#include <span>
#include <unordered_map>
#include <vector>

#include "linematch/chains.hpp"
#include "linematch/core.hpp"

namespace linematch {

/// Pair costs keyed by (p id, q id) inside one canonical chain. Lets cache
/// rebuilds after a reduction reuse every adjacency that survived it.
class PairCostMemo {
 public:
  /// Returns the cached c(p, q) or evaluates it, counting a fresh evaluation.
  double get(const CostSpec& cost, const SitePoint& p, const SitePoint& q,
             EvalCounter& counter);
  std::size_t size() const noexcept { return table_.size(); }

 private:
  std::unordered_map<std::uint64_t, double> table_;
};

/// Straight and staircase pair costs of an alternating run
/// p_0 < q_0 < p_1 < ... < p_{N-1} < q_{N-1}, with prefix sums.
///
///   straight[j]  = c(p_j, q_j),      j = 0..N-1
///   staircase[j] = c(p_{j+1}, q_j),  j = 0..N-2
///
/// Indices below are 0-based. The cache borrows the cost, counter and memo;
/// all three must outlive it. Every pair cost, including the jump term of an
/// indicator, is looked up in the memo first, so a pair is a fresh
/// evaluation only the first time it is seen.
class IndicatorCache {
 public:
  IndicatorCache(std::span<const SitePoint> p, std::span<const SitePoint> q,
                 const CostSpec& cost, EvalCounter& counter, PairCostMemo& memo);

  std::size_t pair_count() const noexcept { return p_.size(); }
  std::span<const double> straight() const noexcept { return straight_; }
  std::span<const double> staircase() const noexcept { return staircase_; }

  /// Sum of straight[first..last) / staircase[first..last).
  double straight_sum(std::size_t first, std::size_t last) const;
  double staircase_sum(std::size_t first, std::size_t last) const;

  /// c(p_i, q_{i+k}) + sum_{l<k} staircase[i+l] - sum_{l<=k} straight[i+l].
  /// Negative when nesting p_i..q_{i+k} around a staircase beats the
  /// straight run. Needs 1 <= k <= N-1, i + k <= N-1.
  double indicator_p(std::size_t k, std::size_t i) const;

  /// c(p_{i+k+1}, q_i) + sum_{1<=l<=k} straight[i+l] - sum_{l<=k} staircase[i+l].
  /// Needs 1 <= k <= N-2, i + k + 1 <= N-1.
  double indicator_q(std::size_t k, std::size_t i) const;

  /// indicator_p with the two outer straight distances replaced by x and y:
  ///   g(x + y + (p_{i+k} - q_i)) + sum_{l<k} staircase[i+l] - g(x) - g(y)
  ///     - sum_{0<l<k} straight[i+l]
  /// phi_p(k, i, q_i - p_i, q_{i+k} - p_{i+k}) == indicator_p(k, i).
  double phi_p(std::size_t k, std::size_t i, double x, double y) const;

  /// indicator_q with the two outer staircase distances replaced by x and y:
  ///   g(x + y + (q_{i+k} - p_{i+1})) + sum_{1<=l<=k} straight[i+l] - g(x)
  ///     - g(y) - sum_{0<l<k} staircase[i+l]
  /// phi_q(k, i, p_{i+1} - q_i, p_{i+k+1} - q_{i+k}) == indicator_q(k, i).
  double phi_q(std::size_t k, std::size_t i, double x, double y) const;

  std::span<const SitePoint> p() const noexcept { return p_; }
  std::span<const SitePoint> q() const noexcept { return q_; }

 private:
  void check_p_range(std::size_t k, std::size_t i) const;
  void check_q_range(std::size_t k, std::size_t i) const;
  double g(double x) const { return eval_g(*cost_, x, *counter_); }

  std::vector<SitePoint> p_;
  std::vector<SitePoint> q_;
  const CostSpec* cost_;
  EvalCounter* counter_;
  PairCostMemo* memo_;
  std::vector<double> straight_;
  std::vector<double> staircase_;
  std::vector<long double> straight_prefix_;   // size N + 1
  std::vector<long double> staircase_prefix_;  // size N
};

/// Cache over a whole canonical chain.
IndicatorCache build_cache(const Chain& chain, const CostSpec& cost,
                           EvalCounter& counter, PairCostMemo& memo);

}  // namespace linematch

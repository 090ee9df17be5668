#include "linematch/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace linematch {

BruteForceResult brute_force_detailed(const ProblemInstance& instance,
                                      const CostSpec& cost) {
  const std::size_t n = instance.pair_count();
  if (n > kBruteForceMaxPairs) {
    throw SizeError("brute force limited to " + std::to_string(kBruteForceMaxPairs) +
                    " pairs, got " + std::to_string(n));
  }
  std::vector<double> table(n * n);
  for (std::size_t d = 0; d < n; ++d) {
    for (std::size_t s = 0; s < n; ++s) {
      table[d * n + s] =
          cost(std::abs(instance.demand_position(d) - instance.supply_position(s)));
    }
  }

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::size_t> best_perm = perm;
  double best = std::numeric_limits<double>::infinity();
  double runner_up = std::numeric_limits<double>::infinity();
  do {
    double c = 0.0;
    for (std::size_t d = 0; d < n; ++d) c += table[d * n + perm[d]];
    if (c < best) {
      runner_up = best;
      best = c;
      best_perm = perm;
    } else if (c < runner_up) {
      runner_up = c;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  BruteForceResult r;
  r.runner_up_cost = runner_up;
  for (std::size_t d = 0; d < n; ++d) r.best.pairs.push_back({d, best_perm[d]});
  r.best.total_cost = total_cost(instance, r.best.pairs, cost);
  return r;
}

Matching brute_force(const ProblemInstance& instance, const CostSpec& cost) {
  return brute_force_detailed(instance, cost).best;
}

Matching noncrossing_dp(const ProblemInstance& instance, const CostSpec& cost) {
  const std::size_t half = instance.pair_count();
  if (half > kNonCrossingMaxPairs) {
    throw SizeError("non-crossing DP limited to " + std::to_string(kNonCrossingMaxPairs) +
                    " pairs, got " + std::to_string(half));
  }
  const auto w = instance.points();
  const std::size_t n = w.size();

  // balance[t] = (#demand - #supply) among w_0..w_{t-1}
  std::vector<long> balance(n + 1, 0);
  for (std::size_t t = 0; t < n; ++t) {
    balance[t + 1] = balance[t] + (w[t].role == Role::Demand ? 1 : -1);
  }
  auto balanced = [&](std::size_t a, std::size_t b_plus_1) {
    return balance[a] == balance[b_plus_1];
  };

  // Table entries for intervals [a, a + 2h - 1], h = 1..half.
  const std::size_t stride = half + 1;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> best(n * stride, inf);
  std::vector<std::uint32_t> choice(n * stride, 0);
  auto value = [&](std::size_t a, std::size_t len) -> double {
    return len == 0 ? 0.0 : best[a * stride + len / 2];
  };

  std::vector<double> row(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t m = i + 1; m < n; m += 2) {
      row[m] = w[m].role != w[i].role
                   ? cost(std::abs(w[m].position - w[i].position))
                   : inf;
    }
    for (std::size_t j = i + 1; j < n; j += 2) {
      if (!balanced(i, j + 1)) continue;
      double cell = inf;
      std::uint32_t arg = 0;
      for (std::size_t m = i + 1; m <= j; m += 2) {
        if (w[m].role == w[i].role || !balanced(i + 1, m)) continue;
        const double cand = row[m] + value(i + 1, m - i - 1) + value(m + 1, j - m);
        if (cand < cell) {
          cell = cand;
          arg = static_cast<std::uint32_t>(m);
        }
      }
      best[i * stride + (j - i + 1) / 2] = cell;
      choice[i * stride + (j - i + 1) / 2] = arg;
    }
  }

  Matching result;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, n}};
  while (!stack.empty()) {
    auto [a, len] = stack.back();
    stack.pop_back();
    if (len == 0) continue;
    const std::size_t m = choice[a * stride + len / 2];
    const SitePoint& x = w[a];
    const SitePoint& y = w[m];
    result.pairs.push_back(x.role == Role::Demand
                               ? MatchedPair{x.original_id, y.original_id}
                               : MatchedPair{y.original_id, x.original_id});
    stack.emplace_back(a + 1, m - a - 1);
    stack.emplace_back(m + 1, a + len - m - 1);
  }
  std::sort(result.pairs.begin(), result.pairs.end());
  result.total_cost = total_cost(instance, result.pairs, cost);
  return result;
}

}  // namespace linematch

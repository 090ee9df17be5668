#pragma once

#include <cstddef>

#include "linematch/core.hpp"

namespace linematch {

/// Reference solvers. Neither touches the indicator machinery; both evaluate
/// g directly and leave Matching::evaluations at zero.

inline constexpr std::size_t kBruteForceMaxPairs = 9;
inline constexpr std::size_t kNonCrossingMaxPairs = 2000;

struct BruteForceResult {
  Matching best;
  /// Cost of the cheapest permutation other than `best` (+inf when N0 == 1).
  double runner_up_cost = 0.0;
};

/// Exhaustive search over all N0! permutations. Among exact ties the
/// lexicographically smallest pair list wins. Throws SizeError past 9 pairs.
BruteForceResult brute_force_detailed(const ProblemInstance& instance,
                                      const CostSpec& cost);
Matching brute_force(const ProblemInstance& instance, const CostSpec& cost);

/// Cheapest non-crossing perfect matching by interval DP over the sorted
/// points w_0..w_{2N0-1}:
///   M(i, j) = min over m in (i, j], role(w_m) != role(w_i), with both
///             [i+1, m-1] and [m+1, j] balanced, of
///             c(w_i, w_m) + M(i+1, m-1) + M(m+1, j)
/// O(N0^3) time, O(N0^2) memory. Throws SizeError past 2000 pairs.
Matching noncrossing_dp(const ProblemInstance& instance, const CostSpec& cost);

}  // namespace linematch

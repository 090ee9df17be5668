#pragma once

#include <vector>

#include "linematch/core.hpp"

namespace linematch {

/// A maximal alternating run of demand and supply points.
///
/// Roles strictly alternate, the point count is even, positions increase.
/// A canonical chain starts with a point labelled Demand; when that required
/// exchanging the labels, `role_swapped` is set and the labels stored in
/// `points` are the exchanged ones (ids are untouched).
struct Chain {
  std::vector<SitePoint> points;
  Role leading_role = Role::Demand;
  bool role_swapped = false;

  /// Number of demand/supply pairs (N).
  std::size_t pair_count() const noexcept { return points.size() / 2; }

  /// In canonical form: p_j and q_j (0-based), so p_0 < q_0 < p_1 < ... < q_{N-1}.
  const SitePoint& p(std::size_t j) const { return points[2 * j]; }
  const SitePoint& q(std::size_t j) const { return points[2 * j + 1]; }

  /// Role the point had in the instance.
  Role original_role(const SitePoint& pt) const noexcept {
    return role_swapped ? opposite(pt.role) : pt.role;
  }
};

/// Splits an instance into chains without evaluating the cost.
///
/// Walks the points in order keeping the running balance (demand +1,
/// supply -1). Each point crosses exactly one unit level [m, m+1]; the points
/// crossing the same level form one chain. Chains come out ordered by their
/// first point.
std::vector<Chain> decompose(const ProblemInstance& instance);

/// Relabels a supply-first chain so it reads p, q, p, q, ... Idempotent.
Chain canonicalize(Chain chain);

/// True iff roles alternate, counts balance, and positions strictly increase.
bool is_valid_chain(const Chain& chain);

}  // namespace linematch

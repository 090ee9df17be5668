#include "linematch/chains.hpp"

#include <cstdint>
#include <limits>

namespace linematch {

std::vector<Chain> decompose(const ProblemInstance& instance) {
  const auto points = instance.points();
  const auto n = static_cast<std::int64_t>(instance.pair_count());

  // Levels range over [-n, n - 1]; slot holds the chain index or npos.
  constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> chain_of_level(static_cast<std::size_t>(2 * n), npos);

  std::vector<Chain> chains;
  std::int64_t balance = 0;
  for (const auto& pt : points) {
    const std::int64_t next = balance + (pt.role == Role::Demand ? 1 : -1);
    const std::int64_t level = std::min(balance, next);
    balance = next;

    auto& slot = chain_of_level[static_cast<std::size_t>(level + n)];
    if (slot == npos) {
      slot = chains.size();
      Chain c;
      c.leading_role = pt.role;
      chains.push_back(std::move(c));
    }
    chains[slot].points.push_back(pt);
  }
  return chains;
}

Chain canonicalize(Chain chain) {
  if (chain.leading_role == Role::Supply) {
    for (auto& pt : chain.points) pt.role = opposite(pt.role);
    chain.leading_role = Role::Demand;
    chain.role_swapped = !chain.role_swapped;
  }
  return chain;
}

bool is_valid_chain(const Chain& chain) {
  const auto& pts = chain.points;
  if (pts.empty() || pts.size() % 2 != 0) return false;
  if (pts.front().role != chain.leading_role) return false;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].role == pts[i - 1].role) return false;
    if (!(pts[i].position > pts[i - 1].position)) return false;
  }
  return true;
}

}  // namespace linematch

#pragma once

#include <cstddef>
#include <vector>

#include "linematch/chains.hpp"
#include "linematch/core.hpp"

namespace linematch {

enum class Branch : std::uint8_t { P, Q };

/// One certified reduction: a negative indicator at (level, start) in the
/// chain as it stood at `pass` (0-based count of reductions before it).
struct Reduction {
  std::size_t pass = 0;
  Branch branch = Branch::P;
  std::size_t level = 0;
  std::size_t start = 0;  // 0-based index into the active chain
};

struct ChainPair {
  MatchedPair pair;
  /// True when the pair was forced by a negative indicator; false for the
  /// final straight matching of the leftover run.
  bool certified = false;
};

struct ChainSolution {
  std::vector<ChainPair> pairs;  // in original ids and roles
  std::vector<Reduction> reductions;
};

/// Solves one canonical chain by the level-by-level indicator scan.
///
/// At level k every indicator_p(k, .) and indicator_q(k, .) of the active run
/// is computed. Without a negative value the level goes up. Otherwise each
/// negative indicator_p(k, i) matches p_{i+j} with q_{i+j-1} and each negative
/// indicator_q(k, i) matches p_{i+j} with q_{i+j} (j = 1..k); matched points
/// leave the run, the cache is rebuilt and the scan restarts at k = 1. Once
/// the level passes N-1 the remaining run is matched straight.
///
/// Throws IntegrityError when two firings disagree about a point's partner.
ChainSolution solve_chain(const Chain& chain, const CostSpec& cost,
                          EvalCounter& counter);

struct SolveOptions {
  /// Worker threads for independent chains; 0 picks hardware concurrency.
  unsigned threads = 1;
};

/// decompose -> canonicalize -> solve_chain per chain -> one Matching.
/// Pairs are sorted by demand id; `evaluations` is summed over chains and
/// does not include the final total_cost pass.
Matching solve(const ProblemInstance& instance, const CostSpec& cost,
               SolveOptions options = {});

/// Like solve(), but also returns the per-chain solutions in chain order.
struct DetailedSolution {
  Matching matching;
  std::vector<Chain> chains;  // canonical
  std::vector<ChainSolution> chain_solutions;
};
DetailedSolution solve_detailed(const ProblemInstance& instance,
                                const CostSpec& cost, SolveOptions options = {});

}  // namespace linematch

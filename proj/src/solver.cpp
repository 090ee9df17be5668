#include "linematch/solver.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <thread>

#include "linematch/indicators.hpp"

namespace linematch {
namespace {

constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

/// The active part of a canonical chain: positions into the chain's p and q
/// sequences, kept alternating p, q, p, q, ... in position order.
class WorkingChain {
 public:
  WorkingChain(const Chain& chain, const CostSpec& cost, EvalCounter& counter)
      : chain_(chain), cost_(cost), counter_(counter) {
    const std::size_t n = chain.pair_count();
    active_p_.resize(n);
    active_q_.resize(n);
    for (std::size_t j = 0; j < n; ++j) active_p_[j] = active_q_[j] = j;
  }

  std::size_t size() const noexcept { return active_p_.size(); }

  IndicatorCache build_cache() {
    std::vector<SitePoint> p;
    std::vector<SitePoint> q;
    p.reserve(size());
    q.reserve(size());
    for (std::size_t j = 0; j < size(); ++j) {
      p.push_back(chain_.p(active_p_[j]));
      q.push_back(chain_.q(active_q_[j]));
    }
    return IndicatorCache(p, q, cost_, counter_, memo_);
  }

  /// Applies every firing of one level at once, then drops matched points.
  void reduce(std::size_t level, std::span<const std::size_t> fired_p,
              std::span<const std::size_t> fired_q, ChainSolution& out) {
    const std::size_t n = size();
    std::vector<std::size_t> partner_of_p(n, kUnmatched);
    std::vector<std::size_t> partner_of_q(n, kUnmatched);

    auto assign = [&](std::size_t pi, std::size_t qi) {
      if (partner_of_p[pi] == qi && partner_of_q[qi] == pi) return;  // overlap
      if (partner_of_p[pi] != kUnmatched || partner_of_q[qi] != kUnmatched) {
        throw IntegrityError(
            "conflicting reductions at level " + std::to_string(level) +
            " (cost not concave, or indicator sign lost to rounding)");
      }
      partner_of_p[pi] = qi;
      partner_of_q[qi] = pi;
    };
    for (std::size_t i0 : fired_p) {
      for (std::size_t i = i0 + 1; i <= i0 + level; ++i) assign(i, i - 1);
    }
    for (std::size_t i0 : fired_q) {
      for (std::size_t i = i0 + 1; i <= i0 + level; ++i) assign(i, i);
    }

    std::vector<std::size_t> next_p;
    std::vector<std::size_t> next_q;
    for (std::size_t i = 0; i < n; ++i) {
      if (partner_of_p[i] == kUnmatched) {
        next_p.push_back(active_p_[i]);
      } else {
        emit(active_p_[i], active_q_[partner_of_p[i]], true, out);
      }
      if (partner_of_q[i] == kUnmatched) next_q.push_back(active_q_[i]);
    }
    active_p_ = std::move(next_p);
    active_q_ = std::move(next_q);
    check_alternation();
  }

  void match_straight(ChainSolution& out) {
    for (std::size_t i = 0; i < size(); ++i) {
      emit(active_p_[i], active_q_[i], false, out);
    }
    active_p_.clear();
    active_q_.clear();
  }

 private:
  void emit(std::size_t p_index, std::size_t q_index, bool certified,
            ChainSolution& out) const {
    const SitePoint& p = chain_.p(p_index);
    const SitePoint& q = chain_.q(q_index);
    MatchedPair pair = chain_.role_swapped
                           ? MatchedPair{q.original_id, p.original_id}
                           : MatchedPair{p.original_id, q.original_id};
    out.pairs.push_back({pair, certified});
  }

  // p_j < q_j < p_{j+1} must survive every reduction.
  void check_alternation() const {
    for (std::size_t j = 0; j < size(); ++j) {
      const double pp = chain_.p(active_p_[j]).position;
      const double qq = chain_.q(active_q_[j]).position;
      const bool ok = pp < qq && (j + 1 == size() ||
                                  qq < chain_.p(active_p_[j + 1]).position);
      if (!ok) throw IntegrityError("reduction broke the alternating order");
    }
  }

  const Chain& chain_;
  const CostSpec& cost_;
  EvalCounter& counter_;
  PairCostMemo memo_;
  std::vector<std::size_t> active_p_;
  std::vector<std::size_t> active_q_;
};

}  // namespace

ChainSolution solve_chain(const Chain& chain, const CostSpec& cost,
                          EvalCounter& counter) {
  ChainSolution out;
  if (chain.points.empty()) return out;
  if (!is_valid_chain(chain) || chain.leading_role != Role::Demand) {
    throw ContractError("solve_chain needs a valid canonical chain");
  }

  WorkingChain work(chain, cost, counter);
  IndicatorCache cache = work.build_cache();
  std::size_t level = 1;
  std::size_t pass = 0;
  std::vector<std::size_t> fired_p;
  std::vector<std::size_t> fired_q;

  while (work.size() > 0 && level + 1 <= work.size()) {
    const std::size_t n = work.size();
    fired_p.clear();
    fired_q.clear();
    for (std::size_t i = 0; i + level < n; ++i) {
      if (cache.indicator_p(level, i) < 0.0) fired_p.push_back(i);
    }
    for (std::size_t i = 0; i + level + 1 < n; ++i) {
      if (cache.indicator_q(level, i) < 0.0) fired_q.push_back(i);
    }

    if (fired_p.empty() && fired_q.empty()) {
      ++level;
      continue;
    }
    for (std::size_t i : fired_p) out.reductions.push_back({pass, Branch::P, level, i});
    for (std::size_t i : fired_q) out.reductions.push_back({pass, Branch::Q, level, i});
    work.reduce(level, fired_p, fired_q, out);
    ++pass;
    level = 1;
    if (work.size() > 0) cache = work.build_cache();
  }
  work.match_straight(out);
  return out;
}

DetailedSolution solve_detailed(const ProblemInstance& instance,
                                const CostSpec& cost, SolveOptions options) {
  DetailedSolution result;
  for (auto& c : decompose(instance)) result.chains.push_back(canonicalize(std::move(c)));

  const std::size_t chain_count = result.chains.size();
  result.chain_solutions.resize(chain_count);
  std::vector<EvalCounter> counters(chain_count);
  std::vector<std::exception_ptr> errors(chain_count);

  unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency()
                                          : options.threads;
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(chain_count)));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < chain_count; c = next++) {
      try {
        result.chain_solutions[c] = solve_chain(result.chains[c], cost, counters[c]);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  Matching& m = result.matching;
  m.pairs.reserve(instance.pair_count());
  for (std::size_t c = 0; c < chain_count; ++c) {
    m.evaluations += counters[c];
    for (const auto& cp : result.chain_solutions[c].pairs) m.pairs.push_back(cp.pair);
  }
  std::sort(m.pairs.begin(), m.pairs.end());
  m.total_cost = total_cost(instance, m.pairs, cost);
  return result;
}

Matching solve(const ProblemInstance& instance, const CostSpec& cost,
               SolveOptions options) {
  return solve_detailed(instance, cost, options).matching;
}

}  // namespace linematch

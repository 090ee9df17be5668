// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Tolerances are fixed here and nowhere else.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "linematch/bench.hpp"
#include "linematch/chains.hpp"
#include "linematch/indicators.hpp"
#include "linematch/oracle.hpp"
#include "linematch/solver.hpp"
#include "test_support.hpp"

namespace {

using namespace linematch;
using linematch::testing::builtin_costs;

constexpr double kRelTol = 1e-9;
constexpr double kUniqueGap = 1e-6;
constexpr double kMonotoneTol = 1e-12;
constexpr double kSlopeTol = 0.30;
constexpr std::size_t kSuiteInstances = 600;
constexpr std::uint64_t kSeed = 20260101;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct SuiteCase {
  ProblemInstance instance;
  CostSpec cost;
};

/// Criteria 1-3 share one suite: N0 cycles through 1..8.
std::vector<SuiteCase> oracle_suite() {
  std::vector<SuiteCase> suite;
  std::mt19937_64 rng(kSeed);
  for (std::size_t t = 0; t < kSuiteInstances; ++t) {
    const auto inst = linematch::testing::random_instance(rng, 1 + t % 8);
    for (const auto& cost : builtin_costs()) suite.push_back({inst, cost});
  }
  return suite;
}

Outcome oracle_equivalence(const std::vector<SuiteCase>& suite) {
  std::size_t bad = 0;
  std::ostringstream first;
  for (const auto& c : suite) {
    const double got = solve(c.instance, c.cost).total_cost;
    const double want = brute_force(c.instance, c.cost).total_cost;
    if (!nearly_equal(got, want, kRelTol)) {
      if (bad++ == 0) first << " first: " << c.cost.label() << " " << got << " vs " << want;
    }
  }
  return {bad == 0, std::to_string(suite.size()) + " cases, " + std::to_string(bad) +
                        " mismatches" + first.str()};
}

Outcome cross_oracle(const std::vector<SuiteCase>& suite) {
  std::size_t bad = 0;
  for (const auto& c : suite) {
    if (!nearly_equal(noncrossing_dp(c.instance, c.cost).total_cost,
                      brute_force(c.instance, c.cost).total_cost, kRelTol)) {
      ++bad;
    }
  }
  return {bad == 0, std::to_string(suite.size()) + " cases, " + std::to_string(bad) + " mismatches"};
}

Outcome theorem_containment(const std::vector<SuiteCase>& suite) {
  std::size_t unique = 0, certified = 0, violations = 0;
  for (const auto& c : suite) {
    const auto oracle = brute_force_detailed(c.instance, c.cost);
    if (!(oracle.runner_up_cost - oracle.best.total_cost > kUniqueGap)) continue;
    ++unique;
    const std::set<MatchedPair> optimum(oracle.best.pairs.begin(), oracle.best.pairs.end());
    for (const auto& sol : solve_detailed(c.instance, c.cost).chain_solutions) {
      for (const auto& cp : sol.pairs) {
        if (!cp.certified) continue;
        ++certified;
        if (!optimum.count(cp.pair)) ++violations;
      }
    }
  }
  return {violations == 0 && certified > 0,
          std::to_string(unique) + " unique-optimum cases, " + std::to_string(certified) +
              " certified pairs, " + std::to_string(violations) + " violations"};
}

Outcome worst_case_count() {
  std::ostringstream detail;
  bool ok = true;
  for (std::size_t n : {10u, 50u, 100u}) {
    const auto m = solve(linematch::testing::equally_spaced(n), CostSpec::linear());
    bool straight = true;
    for (std::size_t j = 0; j < n; ++j) straight &= m.pairs[j] == MatchedPair{j, j};
    const bool count_ok = m.evaluations.indicator_evaluations == (n - 1) * (n - 1);
    ok &= straight && count_ok;
    detail << "N=" << n << ": " << m.evaluations.indicator_evaluations << "/" << (n - 1) * (n - 1)
           << (straight ? " straight" : " NOT straight") << "; ";
  }
  return {ok, detail.str()};
}

Outcome slope_reproduction() {
  BenchConfig cfg;  // sizes 100..500 step 50, 100 samples, single-chain, fresh
  cfg.sizes = {100, 150, 200, 250, 300, 350, 400, 450, 500};
  cfg.samples_per_size = 100;
  cfg.costs = {CostSpec::power(0.001), CostSpec::sqrt(), CostSpec::power(0.999)};
  const double reported[] = {1.18, 1.87, 2.0};
  const auto records = run_bench(cfg);

  std::ostringstream detail;
  detail.precision(3);
  bool ok = true;
  const std::size_t per_cost = cfg.sizes.size();
  for (std::size_t c = 0; c < cfg.costs.size(); ++c) {
    const std::span<const BenchRecord> group(records.data() + c * per_cost, per_cost);
    const double alpha = fit_slope(group, Metric::Fresh);
    const bool within = std::abs(alpha - reported[c]) <= kSlopeTol;
    ok &= within;
    detail << cfg.costs[c].label() << " alpha=" << alpha << " (ref " << reported[c] << ")"
           << (within ? "" : " OUT") << "; ";
  }
  return {ok, detail.str()};
}

Outcome chain_decomposition() {
  // Reference layout: D S S D D S S D at positions 1..8.
  const auto eight = ProblemInstance::from_positions(std::vector{1.0, 4.0, 5.0, 8.0},
                                                   std::vector{2.0, 3.0, 6.0, 7.0});
  const auto chains = decompose(eight);
  auto pos = [](const Chain& c) {
    std::vector<double> v;
    for (const auto& pt : c.points) v.push_back(pt.position);
    return v;
  };
  const bool layout_ok = chains.size() == 2 && pos(chains[0]) == std::vector<double>{1, 2, 5, 6} &&
                         pos(chains[1]) == std::vector<double>{3, 4, 7, 8};

  std::mt19937_64 rng(kSeed + 6);
  std::size_t bad = 0;
  std::size_t points = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng() % 10000;
    const auto inst = linematch::testing::random_instance(rng, n);
    const auto cs = decompose(inst);
    std::vector<double> seen;
    for (const auto& c : cs) {
      if (!is_valid_chain(c)) ++bad;
      for (const auto& pt : c.points) seen.push_back(pt.position);
    }
    std::sort(seen.begin(), seen.end());
    std::vector<double> all;
    for (const auto& pt : inst.points()) all.push_back(pt.position);
    if (seen != all) ++bad;
    points += all.size();
  }
  // decompose takes no cost function, so it performs zero g evaluations by construction.
  return {layout_ok && bad == 0,
          std::string("layout ") + (layout_ok ? "ok" : "WRONG") + ", 1000 instances (" +
              std::to_string(points) + " points), " + std::to_string(bad) +
              " invariant failures, 0 g evaluations"};
}

Outcome lemma_monotonicity() {
  std::mt19937_64 rng(kSeed + 7);
  std::uniform_real_distribution<double> u(1e-4, 2.0);
  std::size_t checks = 0, bad = 0;
  for (const auto& cost : builtin_costs()) {
    for (int t = 0; t < 1000; ++t) {
      const std::size_t n = 3 + rng() % 20;
      const auto chain = linematch::testing::random_chain(rng, n);
      EvalCounter counter;
      PairCostMemo memo;
      const auto cache = build_cache(chain, cost, counter, memo);
      const std::size_t kp = 1 + rng() % (n - 1);
      const std::size_t ip = rng() % (n - kp);
      const std::size_t kq = 1 + rng() % (n - 2);
      const std::size_t iq = rng() % (n - kq - 1);
      double x = u(rng), x2 = u(rng);
      if (x > x2) std::swap(x, x2);
      const double y = u(rng);
      const double diffs[] = {
          cache.phi_p(kp, ip, x, y) - cache.phi_p(kp, ip, x2, y),
          cache.phi_p(kp, ip, y, x) - cache.phi_p(kp, ip, y, x2),
          cache.phi_q(kq, iq, x, y) - cache.phi_q(kq, iq, x2, y),
          cache.phi_q(kq, iq, y, x) - cache.phi_q(kq, iq, y, x2),
      };
      for (double d : diffs) {
        ++checks;
        if (d < -kMonotoneTol) ++bad;
      }
    }
  }
  return {bad == 0, std::to_string(checks) + " checks, " + std::to_string(bad) + " violations"};
}

Outcome incremental_identity() {
  std::mt19937_64 rng(kSeed + 8);
  std::size_t probes = 0, bad = 0;
  const auto costs = builtin_costs();
  while (probes < 10000) {
    const auto& cost = costs[probes % costs.size()];
    const std::size_t n = 3 + rng() % 60;
    const auto chain = linematch::testing::random_chain(rng, n);
    EvalCounter counter;
    PairCostMemo memo;
    const auto cache = build_cache(chain, cost, counter, memo);
    for (int r = 0; r < 10; ++r, probes += 2) {
      const std::size_t kp = 1 + rng() % (n - 1);
      const std::size_t ip = rng() % (n - kp);
      if (!nearly_equal(cache.indicator_p(kp, ip),
                        linematch::testing::direct_indicator_p(chain, cost, kp, ip), kRelTol)) {
        ++bad;
      }
      const std::size_t kq = 1 + rng() % (n - 2);
      const std::size_t iq = rng() % (n - kq - 1);
      if (!nearly_equal(cache.indicator_q(kq, iq),
                        linematch::testing::direct_indicator_q(chain, cost, kq, iq), kRelTol)) {
        ++bad;
      }
    }
  }
  return {bad == 0, std::to_string(probes) + " probes, " + std::to_string(bad) + " mismatches"};
}

}  // namespace

int main() {
  const auto suite = oracle_suite();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 oracle equivalence", [&] { return oracle_equivalence(suite); }},
      {"2 cross-oracle agreement", [&] { return cross_oracle(suite); }},
      {"3 certified-pair containment", [&] { return theorem_containment(suite); }},
      {"4 worst-case indicator count", worst_case_count},
      {"5 log-log slope reproduction", slope_reproduction},
      {"6 chain decomposition", chain_decomposition},
      {"7 phi monotonicity", lemma_monotonicity},
      {"8 incremental vs direct indicators", incremental_identity},
  };

  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %-36s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", name.c_str(),
                o.detail.c_str(), secs);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}

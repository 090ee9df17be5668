#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "linematch/core.hpp"

namespace linematch {

/// How random instances are laid out.
enum class Sampling : std::uint8_t {
  /// N demand and N supply positions drawn independently, uniform on [0, 1].
  Independent,
  /// 2N uniform positions on [0, 1], sorted and labelled demand, supply,
  /// demand, ... so the whole instance is one chain of N pairs.
  SingleChain,
};

enum class Metric : std::uint8_t { Fresh, Indicators };

const char* to_string(Sampling s) noexcept;
const char* to_string(Metric m) noexcept;

struct BenchConfig {
  std::vector<std::size_t> sizes{100, 150, 200, 250, 300, 350, 400, 450, 500};
  std::size_t samples_per_size = 100;
  std::uint64_t seed = 20090101;
  std::vector<CostSpec> costs{CostSpec::power(0.001), CostSpec::sqrt(),
                              CostSpec::power(0.999)};
  Sampling sampling = Sampling::SingleChain;
  unsigned threads = 1;

  /// Throws ContractError unless sizes are >= 2 and ascending, samples >= 1
  /// and at least one cost is given.
  void validate() const;
};

struct BenchRecord {
  std::string cost_label;
  std::size_t n = 0;
  double mean_fresh_evaluations = 0.0;
  double mean_indicator_evaluations = 0.0;
  double mean_wall_seconds = 0.0;
  double max_wall_seconds = 0.0;

  double mean(Metric m) const noexcept {
    return m == Metric::Fresh ? mean_fresh_evaluations : mean_indicator_evaluations;
  }
};

/// Generator for sample `sample` at size `n`. Seeded from (seed, n, sample)
/// alone, so each sample's stream is independent of execution order.
std::mt19937_64 sample_rng(std::uint64_t seed, std::size_t n, std::size_t sample);

/// Uniform double in [0, 1) from 53 random bits; identical on every platform.
double uniform01(std::mt19937_64& rng);

/// Random instance with `n_pairs` demand and supply points in [0, 1].
/// Redraws on the (measure-zero) event of coincident positions.
ProblemInstance generate_instance(std::size_t n_pairs, std::mt19937_64& rng,
                                  Sampling sampling = Sampling::Independent);

/// One record per (cost, size), costs outermost, means over all samples.
std::vector<BenchRecord> run_bench(const BenchConfig& config);

/// Least-squares slope of log(count) against log(n). Throws CostDomainError
/// on non-positive values, ContractError with fewer than two points.
double fit_slope(std::span<const double> n, std::span<const double> counts);
double fit_slope(std::span<const BenchRecord> records, Metric metric = Metric::Fresh);

/// CSV with header `cost,n,mean_fresh_evals,mean_indicator_evals,slope_partial`,
/// then a blank line and a `cost,alpha,metric` block with one fit per cost.
/// slope_partial is the fit over the cost's rows up to and including the row
/// (empty on the first one). Timings are left out so output is reproducible.
void write_bench_csv(std::ostream& out, std::span<const BenchRecord> records,
                     Metric metric);

/// gnuplot script drawing the bench CSV on log-log axes.
void write_plot_script(std::ostream& out, const std::string& csv_path,
                       std::span<const BenchRecord> records, Metric metric);

}  // namespace linematch

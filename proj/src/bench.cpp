#include "linematch/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <cmath>
#include <ostream>
#include <thread>

#include "linematch/solver.hpp"

namespace linematch {

const char* to_string(Sampling s) noexcept {
  return s == Sampling::Independent ? "independent" : "single-chain";
}

const char* to_string(Metric m) noexcept {
  return m == Metric::Fresh ? "fresh" : "indicators";
}

void BenchConfig::validate() const {
  if (sizes.empty()) throw ContractError("bench needs at least one size");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 2) throw ContractError("bench sizes must be >= 2");
    if (i > 0 && sizes[i] <= sizes[i - 1]) {
      throw ContractError("bench sizes must be strictly ascending");
    }
  }
  if (samples_per_size < 1) throw ContractError("bench needs at least one sample");
  if (costs.empty()) throw ContractError("bench needs at least one cost");
}

std::mt19937_64 sample_rng(std::uint64_t seed, std::size_t n, std::size_t sample) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n),
                    static_cast<std::uint32_t>(static_cast<std::uint64_t>(n) >> 32),
                    static_cast<std::uint32_t>(sample),
                    static_cast<std::uint32_t>(static_cast<std::uint64_t>(sample) >> 32)};
  return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

ProblemInstance generate_instance(std::size_t n_pairs, std::mt19937_64& rng,
                                  Sampling sampling) {
  if (n_pairs == 0) throw ContractError("generate_instance needs n_pairs >= 1");
  std::vector<double> pos(2 * n_pairs);
  for (;;) {
    for (auto& x : pos) x = uniform01(rng);
    std::vector<double> sorted = pos;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;

    if (sampling == Sampling::Independent) {
      return ProblemInstance::from_positions(
          std::span<const double>(pos).first(n_pairs),
          std::span<const double>(pos).subspan(n_pairs));
    }
    std::vector<double> demand;
    std::vector<double> supply;
    for (std::size_t t = 0; t < sorted.size(); ++t) {
      (t % 2 == 0 ? demand : supply).push_back(sorted[t]);
    }
    return ProblemInstance::from_positions(demand, supply);
  }
}

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
  config.validate();
  using clock = std::chrono::steady_clock;

  struct SampleResult {
    EvalCounter counter;
    double seconds = 0.0;
  };

  std::vector<BenchRecord> records;
  for (const auto& cost : config.costs) {
    for (std::size_t n : config.sizes) {
      std::vector<SampleResult> results(config.samples_per_size);
      std::atomic<std::size_t> next{0};
      std::exception_ptr failure;
      std::atomic<bool> failed{false};
      auto worker = [&] {
        for (std::size_t s = next++; s < results.size() && !failed; s = next++) {
          try {
            auto rng = sample_rng(config.seed, n, s);
            const auto instance = generate_instance(n, rng, config.sampling);
            const auto start = clock::now();
            const auto matching = solve(instance, cost);
            results[s].seconds =
                std::chrono::duration<double>(clock::now() - start).count();
            results[s].counter = matching.evaluations;
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      };
      const unsigned threads = std::max(
          1U, config.threads == 0 ? std::thread::hardware_concurrency() : config.threads);
      if (threads == 1) {
        worker();
      } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
      }
      if (failure) std::rethrow_exception(failure);

      EvalCounter total;
      BenchRecord rec;
      rec.cost_label = cost.label();
      rec.n = n;
      for (const auto& r : results) {
        total += r.counter;
        rec.mean_wall_seconds += r.seconds;
        rec.max_wall_seconds = std::max(rec.max_wall_seconds, r.seconds);
      }
      const auto samples = static_cast<double>(results.size());
      rec.mean_fresh_evaluations = static_cast<double>(total.fresh_evaluations) / samples;
      rec.mean_indicator_evaluations =
          static_cast<double>(total.indicator_evaluations) / samples;
      rec.mean_wall_seconds /= samples;
      records.push_back(std::move(rec));
    }
  }
  return records;
}

double fit_slope(std::span<const double> n, std::span<const double> counts) {
  if (n.size() != counts.size()) throw ContractError("fit_slope: size mismatch");
  if (n.size() < 2) throw ContractError("fit_slope needs at least two points");
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!(n[i] > 0.0) || !(counts[i] > 0.0)) {
      throw CostDomainError("fit_slope needs positive sizes and counts");
    }
    sx += std::log(n[i]);
    sy += std::log(counts[i]);
  }
  const double mx = sx / static_cast<double>(n.size());
  const double my = sy / static_cast<double>(n.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double dx = std::log(n[i]) - mx;
    sxy += dx * (std::log(counts[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw ContractError("fit_slope needs at least two distinct sizes");
  return sxy / sxx;
}

double fit_slope(std::span<const BenchRecord> records, Metric metric) {
  std::vector<double> n;
  std::vector<double> counts;
  for (const auto& r : records) {
    if (r.cost_label != records.front().cost_label) {
      throw ContractError("fit_slope: records mix several costs");
    }
    n.push_back(static_cast<double>(r.n));
    counts.push_back(r.mean(metric));
  }
  return fit_slope(n, counts);
}

namespace {

/// Consecutive runs of records sharing a cost label.
std::vector<std::span<const BenchRecord>> group_by_cost(
    std::span<const BenchRecord> records) {
  std::vector<std::span<const BenchRecord>> groups;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= records.size(); ++i) {
    if (i == records.size() || records[i].cost_label != records[start].cost_label) {
      groups.push_back(records.subspan(start, i - start));
      start = i;
    }
  }
  return groups;
}

}  // namespace

void write_bench_csv(std::ostream& out, std::span<const BenchRecord> records,
                     Metric metric) {
  const auto old_precision = out.precision(10);
  out << "cost,n,mean_fresh_evals,mean_indicator_evals,slope_partial\n";
  const auto groups = group_by_cost(records);
  for (const auto& group : groups) {
    for (std::size_t i = 0; i < group.size(); ++i) {
      const auto& r = group[i];
      out << r.cost_label << ',' << r.n << ',' << r.mean_fresh_evaluations << ','
          << r.mean_indicator_evaluations << ',';
      if (i > 0) out << fit_slope(group.first(i + 1), metric);
      out << '\n';
    }
  }
  out << "\ncost,alpha,metric\n";
  for (const auto& group : groups) {
    out << group.front().cost_label << ',';
    if (group.size() >= 2) out << fit_slope(group, metric);
    out << ',' << to_string(metric) << '\n';
  }
  out.precision(old_precision);
}

void write_plot_script(std::ostream& out, const std::string& csv_path,
                       std::span<const BenchRecord> records, Metric metric) {
  const int column = metric == Metric::Fresh ? 3 : 4;
  out << "# gnuplot script: mean evaluation counts against N on log-log axes\n"
      << "set datafile separator ','\n"
      << "set logscale xy\n"
      << "set xlabel 'Number of pairs N'\n"
      << "set ylabel 'Evaluations of g (" << to_string(metric) << ")'\n"
      << "set key left top\n"
      << "plot \\\n";
  const auto groups = group_by_cost(records);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& label = groups[g].front().cost_label;
    out << "  '" << csv_path << "' using (strcol(1) eq '" << label << "' ? $2 : 1/0):"
        << column << " with linespoints title '" << label;
    if (groups[g].size() >= 2) out << ", alpha=" << fit_slope(groups[g], metric);
    out << "', \\\n";
  }
  out << "  (x-1)**2 with lines dashtype 2 title 'worst case (N-1)^2'\n";
}

}  // namespace linematch

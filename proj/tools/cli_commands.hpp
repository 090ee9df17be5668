#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "linematch/bench.hpp"
#include "linematch/core.hpp"

namespace linematch::cli {

inline constexpr const char* kVersion = "linematch 0.1.0";

enum ExitCode : int {
  kOk = 0,
  kDisagreement = 1,
  kBadInput = 2,
  kIntegrity = 3,
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads the point-list format: one `<role>,<position>` per line, role one of
/// demand/supply (or p/q), `#` starts a comment, blank lines are skipped.
/// Ids are assigned per role in file order.
ProblemInstance parse_instance(std::istream& in);
ProblemInstance read_instance_file(const std::string& path);  // "-" is stdin

/// Writes the point-list format; parse_instance reads it back unchanged.
void write_instance(std::ostream& out, const ProblemInstance& instance);

enum class OutputFormat { Json, Tsv };

struct SolveOptions {
  std::string input;
  CostSpec cost = CostSpec::linear();
  OutputFormat format = OutputFormat::Json;
  unsigned threads = 1;
};

struct VerifyOptions {
  std::size_t max_n = 8;
  std::size_t trials = 500;
  std::uint64_t seed = 1;
  std::vector<CostSpec> costs{CostSpec::linear(), CostSpec::sqrt(),
                              CostSpec::power(0.3), CostSpec::log()};
};

struct BenchOptions {
  BenchConfig config;
  Metric metric = Metric::Fresh;
  std::optional<std::string> output;       // CSV path; stdout when empty
  std::optional<std::string> plot_script;  // gnuplot script path
};

/// Parses "a:b:step" into {a, a+step, ..., <= b}.
std::vector<std::size_t> parse_size_range(const std::string& text);

// Commands write their normal output to `out` and diagnostics to `err`, and
// return the process exit code.
int cmd_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err);
int cmd_chains(const std::string& input, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err);

/// Full command-line entry point (argv[0] included).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace linematch::cli

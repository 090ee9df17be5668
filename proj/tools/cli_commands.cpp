#include "cli_commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "linematch/chains.hpp"
#include "linematch/oracle.hpp"
#include "linematch/solver.hpp"

namespace linematch::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string shortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

/// Runs `body`, mapping library errors onto exit codes.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const InstanceError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const IntegrityError& e) {
    err << "integrity error: " << e.what() << '\n';
    return kIntegrity;
  } catch (const CostDomainError& e) {
    err << "integrity error: " << e.what() << '\n';
    return kIntegrity;
  }
}

}  // namespace

ProblemInstance parse_instance(std::istream& in) {
  std::vector<SitePoint> points;
  std::size_t demand = 0;
  std::size_t supply = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    if (auto hash = text.find('#'); hash != std::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = trim(text);
    if (text.empty()) continue;

    const auto where = "line " + std::to_string(line_no) + ": ";
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) {
      throw ParseError(where + "expected '<role>,<position>'");
    }
    const auto role_text = trim(text.substr(0, comma));
    const auto pos_text = trim(text.substr(comma + 1));

    Role role;
    if (role_text == "demand" || role_text == "p") {
      role = Role::Demand;
    } else if (role_text == "supply" || role_text == "q") {
      role = Role::Supply;
    } else {
      throw ParseError(where + "unknown role '" + std::string(role_text) + "'");
    }

    double position = 0.0;
    const char* first = pos_text.data();
    const char* last = first + pos_text.size();
    if (!pos_text.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, position);
    if (pos_text.empty() || ec != std::errc() || ptr != last || !std::isfinite(position)) {
      throw ParseError(where + "bad position '" + std::string(pos_text) + "'");
    }
    const std::size_t id = role == Role::Demand ? demand++ : supply++;
    points.push_back({position, role, id});
  }
  return ProblemInstance::create(std::move(points));
}

ProblemInstance read_instance_file(const std::string& path) {
  if (path == "-") return parse_instance(std::cin);
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_instance(in);
}

void write_instance(std::ostream& out, const ProblemInstance& instance) {
  for (std::size_t id = 0; id < instance.pair_count(); ++id) {
    out << "demand," << shortest(instance.demand_position(id)) << '\n';
  }
  for (std::size_t id = 0; id < instance.pair_count(); ++id) {
    out << "supply," << shortest(instance.supply_position(id)) << '\n';
  }
}

std::vector<std::size_t> parse_size_range(const std::string& text) {
  std::size_t parts[3] = {0, 0, 1};
  std::size_t count = 0;
  std::string_view rest = text;
  while (count < 3) {
    const auto colon = rest.find(':');
    const auto piece = rest.substr(0, colon);
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), parts[count]);
    if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size()) {
      throw ParseError("bad size range '" + text + "' (expected a:b:step)");
    }
    ++count;
    if (colon == std::string_view::npos) break;
    rest = rest.substr(colon + 1);
    if (count == 3) throw ParseError("bad size range '" + text + "' (too many fields)");
  }
  if (count == 1) parts[1] = parts[0];
  if (parts[2] == 0 || parts[1] < parts[0]) {
    throw ParseError("bad size range '" + text + "'");
  }
  std::vector<std::size_t> sizes;
  for (std::size_t n = parts[0]; n <= parts[1]; n += parts[2]) sizes.push_back(n);
  return sizes;
}

int cmd_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto instance = read_instance_file(opts.input);
    const auto matching = solve(instance, opts.cost, {.threads = opts.threads});

    if (opts.format == OutputFormat::Json) {
      nlohmann::ordered_json doc;
      doc["pairs"] = nlohmann::ordered_json::array();
      for (const auto& pr : matching.pairs) {
        const double d = std::abs(instance.demand_position(pr.demand_id) -
                                  instance.supply_position(pr.supply_id));
        doc["pairs"].push_back({{"demand", pr.demand_id},
                                {"supply", pr.supply_id},
                                {"distance", d},
                                {"cost", opts.cost(d)}});
      }
      doc["total_cost"] = matching.total_cost;
      doc["evaluations"] = {{"fresh", matching.evaluations.fresh_evaluations},
                            {"indicators", matching.evaluations.indicator_evaluations}};
      out << doc.dump() << '\n';
    } else {
      out << "demand\tsupply\tdistance\tcost\n";
      for (const auto& pr : matching.pairs) {
        const double d = std::abs(instance.demand_position(pr.demand_id) -
                                  instance.supply_position(pr.supply_id));
        out << pr.demand_id << '\t' << pr.supply_id << '\t' << shortest(d) << '\t'
            << shortest(opts.cost(d)) << '\n';
      }
      out << "\ntotal_cost\t" << shortest(matching.total_cost) << '\n'
          << "fresh_evals\t" << matching.evaluations.fresh_evaluations << '\n'
          << "indicator_evals\t" << matching.evaluations.indicator_evaluations << '\n';
    }
    return kOk;
  });
}

int cmd_chains(const std::string& input, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto instance = read_instance_file(input);
    const auto chains = decompose(instance);
    out << chains.size() << " chain(s)\n";
    for (std::size_t c = 0; c < chains.size(); ++c) {
      const auto& chain = chains[c];
      out << "chain " << c << ": leading=" << to_string(chain.leading_role)
          << " pairs=" << chain.pair_count() << " points=";
      for (std::size_t t = 0; t < chain.points.size(); ++t) {
        const auto& pt = chain.points[t];
        if (t > 0) out << ' ';
        out << to_string(pt.role) << ':' << pt.original_id << '@' << shortest(pt.position);
      }
      out << '\n';
    }
    return kOk;
  });
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.max_n < 1) {
    err << "error: --max-n must be >= 1\n";
    return kBadInput;
  }
  if (opts.max_n > kNonCrossingMaxPairs) {
    err << "error: --max-n must be <= " << kNonCrossingMaxPairs << '\n';
    return kBadInput;
  }
  std::size_t checks = 0;
  for (std::size_t trial = 0; trial < opts.trials; ++trial) {
    auto rng = sample_rng(opts.seed, opts.max_n, trial);
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % opts.max_n);
    const auto instance = generate_instance(n, rng, Sampling::Independent);

    for (const auto& cost : opts.costs) {
      std::ostringstream why;
      double solver_cost = std::nan("");
      try {
        solver_cost = solve(instance, cost).total_cost;
      } catch (const IntegrityError& e) {
        why << "solver failed: " << e.what();
      }
      const double dp_cost = noncrossing_dp(instance, cost).total_cost;
      const double bf_cost = n <= kBruteForceMaxPairs
                                 ? brute_force(instance, cost).total_cost
                                 : dp_cost;
      const bool agree = why.str().empty() && nearly_equal(solver_cost, bf_cost) &&
                         nearly_equal(dp_cost, bf_cost);
      ++checks;
      if (!agree) {
        out << "# counterexample: trial=" << trial << " cost=" << cost.label()
            << " solver=" << shortest(solver_cost) << " noncrossing_dp=" << shortest(dp_cost)
            << " brute_force=" << shortest(bf_cost);
        if (!why.str().empty()) out << " (" << why.str() << ')';
        out << '\n';
        write_instance(out, instance);
        return kDisagreement;
      }
    }
  }
  out << "ok: " << opts.trials << " instance(s), " << checks
      << " solver/oracle comparison(s) agree within 1e-9\n";
  return kOk;
}

int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const auto records = run_bench(opts.config);
    if (opts.output) {
      std::ofstream file(*opts.output);
      if (!file) {
        err << "error: cannot write '" << *opts.output << "'\n";
        return kBadInput;
      }
      write_bench_csv(file, records, opts.metric);
    } else {
      write_bench_csv(out, records, opts.metric);
    }
    if (opts.plot_script) {
      std::ofstream script(*opts.plot_script);
      if (!script) {
        err << "error: cannot write '" << *opts.plot_script << "'\n";
        return kBadInput;
      }
      write_plot_script(script, opts.output.value_or("bench.csv"), records, opts.metric);
    }
    return kOk;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const IntegrityError& e) {
    err << "integrity error: " << e.what() << '\n';
    return kIntegrity;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal matching of demand and supply points on a line under concave costs"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string cost_text = "linear";
  std::string format_text = "json";
  SolveOptions solve_opts;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file");
  solve_cmd->add_option("input", solve_opts.input, "Point file ('-' for stdin)")->required();
  solve_cmd->add_option("--cost", cost_text, "linear | sqrt | log | power:<a>");
  solve_cmd->add_option("--format", format_text, "json | tsv")
      ->check(CLI::IsMember({"json", "tsv"}));
  solve_cmd->add_option("--threads", solve_opts.threads, "Worker threads for chains");

  std::string chains_input;
  auto* chains_cmd = app.add_subcommand("chains", "List the chains of an instance");
  chains_cmd->add_option("input", chains_input, "Point file ('-' for stdin)")->required();

  VerifyOptions verify_opts;
  std::vector<std::string> verify_costs;
  auto* verify_cmd = app.add_subcommand("verify", "Compare the solver with both oracles");
  verify_cmd->add_option("--max-n", verify_opts.max_n, "Largest number of pairs");
  verify_cmd->add_option("--trials", verify_opts.trials, "Random instances");
  verify_cmd->add_option("--seed", verify_opts.seed, "Seed");
  verify_cmd->add_option("--cost", verify_costs, "Cost (repeatable)");

  BenchOptions bench_opts;
  std::string sizes_text = "100:500:50";
  std::vector<std::string> bench_costs;
  std::string metric_text = "fresh";
  std::string sampling_text = "chain";
  std::string bench_output;
  std::string plot_output;
  auto* bench_cmd = app.add_subcommand("bench", "Mean evaluation counts against N");
  bench_cmd->add_option("--sizes", sizes_text, "a:b:step");
  bench_cmd->add_option("--samples", bench_opts.config.samples_per_size, "Samples per size");
  bench_cmd->add_option("--seed", bench_opts.config.seed, "Seed");
  bench_cmd->add_option("--cost", bench_costs, "Cost (repeatable)");
  bench_cmd->add_option("--metric", metric_text, "fresh | indicators")
      ->check(CLI::IsMember({"fresh", "indicators"}));
  bench_cmd->add_option("--sampling", sampling_text, "chain | independent")
      ->check(CLI::IsMember({"chain", "independent"}));
  bench_cmd->add_option("--threads", bench_opts.config.threads, "Worker threads");
  bench_cmd->add_option("--output", bench_output, "CSV file (default stdout)");
  bench_cmd->add_option("--plot-script", plot_output, "Write a gnuplot script here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kBadInput;
  }

  auto parse_costs = [](const std::vector<std::string>& texts, std::vector<CostSpec>& into) {
    if (texts.empty()) return;
    into.clear();
    for (const auto& t : texts) into.push_back(CostSpec::parse(t));
  };

  try {
    if (*solve_cmd) {
      solve_opts.cost = CostSpec::parse(cost_text);
      solve_opts.format = format_text == "tsv" ? OutputFormat::Tsv : OutputFormat::Json;
      return cmd_solve(solve_opts, out, err);
    }
    if (*chains_cmd) return cmd_chains(chains_input, out, err);
    if (*verify_cmd) {
      parse_costs(verify_costs, verify_opts.costs);
      return cmd_verify(verify_opts, out, err);
    }
    parse_costs(bench_costs, bench_opts.config.costs);
    bench_opts.config.sizes = parse_size_range(sizes_text);
    bench_opts.metric = metric_text == "indicators" ? Metric::Indicators : Metric::Fresh;
    bench_opts.config.sampling =
        sampling_text == "independent" ? Sampling::Independent : Sampling::SingleChain;
    if (!bench_output.empty()) bench_opts.output = bench_output;
    if (!plot_output.empty()) bench_opts.plot_script = plot_output;
    return cmd_bench(bench_opts, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const InstanceError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
}

}  // namespace linematch::cli

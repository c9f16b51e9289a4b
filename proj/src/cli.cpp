#include "tsptw/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "tsptw/adapter.hpp"
#include "tsptw/io.hpp"
#include "tsptw/parallel.hpp"
#include "tsptw/protocols.hpp"
#include "tsptw/stats.hpp"

namespace tsptw {

namespace {

namespace fs = std::filesystem;

template <typename Fn>
int guard(Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const IncompleteDataError& err) {
    std::cerr << "incomplete results: " << err.what() << "\n";
    return kExitIncomplete;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitData;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitData;
  }
}

nlohmann::ordered_json expansion_params_json(const ExpansionParams& params) {
  return {{"rho", params.rho},
          {"select_lo", params.select_lo},
          {"select_hi", params.select_hi}};
}

nlohmann::ordered_json swap_params_json(const SwapParams& params) {
  return {{"swaps", params.swaps},
          {"waiting_arrivals", params.waiting_arrivals},
          {"fixed_delta", params.fixed_delta ? nlohmann::ordered_json(*params.fixed_delta)
                                             : nlohmann::ordered_json(nullptr)}};
}

}  // namespace

int cmd_generate(const GenerateOptions& options) {
  return guard([&] {
    const bool synthetic = options.synthetic_n > 0;
    if (synthetic == !options.instances.empty())
      throw ConfigError("give either --instance files or --synthetic-n, not both");
    const DistanceRounding rounding = distance_rounding_from_string(options.rounding);
    const Environment environment = environment_from_string(options.environment);

    ExpansionParams expansion;
    expansion.rho = options.rho;
    expansion.select_lo = options.select_lo;
    expansion.select_hi = options.select_hi;
    SwapParams swap;
    swap.swaps = options.swaps;
    swap.waiting_arrivals = options.waiting_arrivals;
    SequenceOptions sequence_options;
    sequence_options.reference_budget = options.reference_budget;

    std::vector<Instance> bases;
    if (synthetic) {
      SyntheticParams params;
      params.window_sigma_factor = options.synthetic_width;
      params.rounding = rounding;
      bases.push_back(synthetic_instance(options.synthetic_n, options.seed, params));
    } else {
      for (const std::string& path : options.instances)
        bases.push_back(load_instance(path, rounding));
    }

    nlohmann::ordered_json manifest;
    manifest["format"] = "tsptw-manifest";
    manifest["command"] = "generate";
    manifest["environment"] = to_string(environment);
    manifest["seed"] = options.seed;
    manifest["params"]["expansion"] = expansion_params_json(expansion);
    manifest["params"]["swap"] = swap_params_json(swap);
    manifest["rounding"] = to_string(rounding);
    manifest["reference_budget"] = options.reference_budget;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();

    for (const Instance& base : bases) {
      const TaskSequence sequence = build_sequence(base, environment, options.seed,
                                                   expansion, swap, sequence_options);
      const std::string file =
          base.name() + "." + to_string(environment) + ".seq.json";
      write_sequence(fs::path(options.out_dir) / file, sequence);
      entries.push_back({{"file", file},
                         {"id", sequence.id()},
                         {"base_name", sequence.base_name},
                         {"cities", base.size()}});
      std::cout << "generated " << sequence.id() << " (" << base.size()
                << " cities, " << sequence.tasks.size() << " tasks)\n";
    }
    manifest["sequences"] = std::move(entries);

    std::ofstream out(fs::path(options.out_dir) / "manifest.json");
    if (!out) throw ConfigError("cannot write manifest under " + options.out_dir);
    out << manifest.dump(2) << "\n";
    return kExitOk;
  });
}

int cmd_solve(const SolveOptions& options) {
  return guard([&] {
    if (options.sequences.empty()) throw ConfigError("no sequence files given");
    const Algorithm algorithm = algorithm_from_string(options.algorithm);
    std::vector<Protocol> protocols;
    if (options.protocol == "both")
      protocols = {Protocol::Standard, Protocol::Iterative};
    else
      protocols = {protocol_from_string(options.protocol)};
    if (options.jobs < 1) throw ConfigError("--jobs must be >= 1");

    nlohmann::ordered_json config;
    config["command"] = "solve";
    config["sequences"] = options.sequences;
    config["algorithm"] = options.algorithm;
    config["protocol"] = options.protocol;
    config["repetitions"] = options.repetitions;
    config["budget"] = options.budget;
    config["seed"] = options.seed;
    config["jobs"] = options.jobs;
    config["out"] = options.out_dir;

    std::vector<RunRecord> records;
    for (const std::string& path : options.sequences) {
      const TaskSequence sequence = load_sequence(path);
      ProtocolPlan plan;
      plan.sequence = &sequence;
      plan.config.algorithm = algorithm;
      plan.repetitions = options.repetitions;
      plan.budget = options.budget;
      plan.seed_root = options.seed;
      for (const Protocol protocol : protocols) {
        std::vector<RunRecord> batch = run_protocol(protocol, plan, options.jobs);
        std::cout << "solved " << sequence.id() << " " << to_string(protocol) << " ("
                  << batch.size() << " runs)\n";
        records.insert(records.end(), std::make_move_iterator(batch.begin()),
                       std::make_move_iterator(batch.end()));
      }
    }

    const fs::path out_dir(options.out_dir);
    write_records_csv(out_dir / "records.csv", records);
    write_results_bundle(out_dir / "results.json", config, records);
    if (options.timings) write_timings_csv(out_dir / "timings.csv", records);
    std::cout << "wrote " << records.size() << " records to " << options.out_dir
              << "\n";
    return kExitOk;
  });
}

int cmd_report(const ReportOptions& options) {
  return guard([&] {
    if (options.results.empty()) throw ConfigError("no results bundles given");
    std::vector<RunRecord> records;
    for (const std::string& path : options.results) {
      ResultsBundle bundle = load_results_bundle(path);
      records.insert(records.end(), std::make_move_iterator(bundle.records.begin()),
                     std::make_move_iterator(bundle.records.end()));
    }

    // One table per sequence x algorithm, matching the paper's layout.
    std::map<std::pair<std::string, std::string>, std::vector<RunRecord>> tables;
    for (const RunRecord& r : records)
      tables[{r.sequence_id, to_string(r.algorithm)}].push_back(r);

    const fs::path out_dir(options.out_dir);
    for (const auto& [key, table_records] : tables) {
      const std::vector<TableRow> rows = table_rows(table_records, options.alpha);
      write_table_csv(out_dir / ("table_" + key.first + "_" + key.second + ".csv"),
                      rows);
    }
    const std::vector<FigureRow> figures = figure_aggregates(records, options.alpha);
    write_figures_csv(out_dir / "figures.csv", figures);
    std::cout << "wrote " << tables.size() << " tables and figures.csv to "
              << options.out_dir << "\n";
    return kExitOk;
  });
}

int cmd_adapter(const AdapterOptions& options, std::istream& in, std::ostream& out) {
  return guard([&] {
    const Instance instance =
        load_instance(options.instance, distance_rounding_from_string(options.rounding));
    MeteredEvaluator evaluator(instance, options.budget);
    const SolveOutcome outcome = run_adapter(in, out, evaluator);
    std::cerr << "adapter: scored " << outcome.evaluations_used
              << " candidates, best score " << format_double(outcome.best.score)
              << (outcome.feasible ? " (feasible)" : " (infeasible)") << "\n";
    return kExitOk;
  });
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Multi-task TSPTW benchmark generator, solvers and reporting"};
  app.require_subcommand(1);

  GenerateOptions generate;
  CLI::App* gen = app.add_subcommand(
      "generate", "Build five-task sequences from base instances");
  gen->add_option("--instance", generate.instances,
                  "benchmark or native instance file(s)");
  gen->add_option("--synthetic-n", generate.synthetic_n,
                  "synthesize a base instance with this many cities");
  gen->add_option("--synthetic-width", generate.synthetic_width,
                  "synthetic window half-width factor (sigma units)");
  gen->add_option("--env", generate.environment, "expand | swap")
      ->check(CLI::IsMember({"expand", "swap"}));
  gen->add_option("--seed", generate.seed, "generation seed");
  gen->add_option("--rho", generate.rho, "expansion rate");
  gen->add_option("--select-lo", generate.select_lo, "selection fraction lower bound");
  gen->add_option("--select-hi", generate.select_hi, "selection fraction upper bound");
  gen->add_option("--swaps", generate.swaps, "swaps per step (swap environment)");
  gen->add_flag("!--no-waiting-arrivals", generate.waiting_arrivals,
                "use cumulative arrival times without waiting");
  gen->add_option("--reference-budget", generate.reference_budget,
                  "evaluations for the reference-tour search");
  gen->add_option("--rounding", generate.rounding, "truncate | round | exact")
      ->check(CLI::IsMember({"truncate", "round", "exact"}));
  gen->add_option("--out", generate.out_dir, "output directory");

  SolveOptions solve_options;
  CLI::App* solve = app.add_subcommand("solve", "Run the protocol experiment matrix");
  solve->add_option("sequences", solve_options.sequences, "sequence JSON file(s)")
      ->required();
  solve->add_option("--algo", solve_options.algorithm, "lns | vns")
      ->check(CLI::IsMember({"lns", "vns"}));
  solve->add_option("--protocol", solve_options.protocol,
                    "standard | iterative | both")
      ->check(CLI::IsMember({"standard", "iterative", "both"}));
  solve->add_option("--reps", solve_options.repetitions, "repetitions per task");
  solve->add_option("--budget", solve_options.budget, "evaluations per task run");
  solve->add_option("--seed", solve_options.seed, "seed root");
  solve->add_option("--jobs", solve_options.jobs, "parallel runs (1 = serial)");
  solve->add_flag("--timings", solve_options.timings,
                  "also write wall-clock timings (non-deterministic)");
  solve->add_option("--out", solve_options.out_dir, "output directory");

  ReportOptions report;
  CLI::App* rep = app.add_subcommand("report", "Aggregate results into tables and figures");
  rep->add_option("results", report.results, "results bundle JSON file(s)")->required();
  rep->add_option("--alpha", report.alpha, "significance level");
  rep->add_option("--out", report.out_dir, "output directory");

  AdapterOptions adapter;
  CLI::App* ada = app.add_subcommand(
      "adapter", "Meter an external solver over the candidate-line protocol");
  ada->add_option("--instance", adapter.instance, "instance file")->required();
  ada->add_option("--rounding", adapter.rounding, "truncate | round | exact")
      ->check(CLI::IsMember({"truncate", "round", "exact"}));
  ada->add_option("--budget", adapter.budget, "evaluation budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (gen->parsed()) return cmd_generate(generate);
  if (solve->parsed()) return cmd_solve(solve_options);
  if (rep->parsed()) return cmd_report(report);
  if (ada->parsed()) return cmd_adapter(adapter, std::cin, std::cout);
  return kExitConfig;
}

}  // namespace tsptw

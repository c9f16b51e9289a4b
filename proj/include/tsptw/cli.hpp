#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tsptw/generators.hpp"

namespace tsptw {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitIncomplete = 4;

struct GenerateOptions {
  std::vector<std::string> instances;  // classic benchmark or native JSON files
  int synthetic_n = 0;                 // > 0 synthesizes a base instance instead
  double synthetic_width = 1.0;        // window half-width factor (sigma units)
  std::string environment = "expand";  // expand | swap
  std::uint64_t seed = 1;
  double rho = 0.3;
  double select_lo = 0.10;
  double select_hi = 0.15;
  int swaps = 1;
  bool waiting_arrivals = true;
  long reference_budget = 20000;
  std::string rounding = "truncate";
  std::string out_dir = "out";
};

struct SolveOptions {
  std::vector<std::string> sequences;  // sequence JSON files
  std::string algorithm = "lns";       // lns | vns
  std::string protocol = "both";       // standard | iterative | both
  int repetitions = 30;
  long budget = 100000;
  std::uint64_t seed = 1;
  int jobs = 1;
  bool timings = false;  // also write wall-clock times (non-deterministic file)
  std::string out_dir = "out";
};

struct ReportOptions {
  std::vector<std::string> results;  // results bundle JSON files
  double alpha = 0.05;
  std::string out_dir = "out";
};

struct AdapterOptions {
  std::string instance;  // classic benchmark or native JSON
  std::string rounding = "truncate";
  long budget = 100000;
};

int cmd_generate(const GenerateOptions& options);
int cmd_solve(const SolveOptions& options);
int cmd_report(const ReportOptions& options);
int cmd_adapter(const AdapterOptions& options, std::istream& in, std::ostream& out);

// Full CLI: generate | solve | report | adapter.
int run_cli(int argc, const char* const* argv);

}  // namespace tsptw

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsptw/protocols.hpp"

namespace tsptw {

// Aggregates of one protocol x task x instance cell: penalized-score mean
// and standard deviation over all runs, feasibility success rate, and the
// same moments over feasible runs only (absent when none succeeded).
struct CellSummary {
  int runs = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n-1)
  double sr = 0.0;
  std::optional<double> succ_mean;
  std::optional<double> succ_stddev;
};

CellSummary summarize_cell(std::span<const RunRecord> records);

enum class Verdict { IterativeBetter, IterativeWorse, NoDifference };

// "+", "-" or "*".
std::string verdict_symbol(Verdict verdict);

struct StatVerdict {
  Verdict verdict = Verdict::NoDifference;
  double u_statistic = 0.0;  // min(U_a, U_b)
  double p_value = 1.0;
  double alpha = 0.05;
};

// Two-sided Mann-Whitney U test on penalized scores. Sides smaller than 8
// use exact enumeration of the rank-sum distribution (conditional on ties);
// otherwise the normal approximation with tie and continuity corrections.
// Direction comes from the rank sums; lower scores are better, so
// IterativeBetter means the iterative sample is stochastically lower.
StatVerdict mann_whitney(std::span<const double> iterative,
                         std::span<const double> standard, double alpha = 0.05);

// The two p-value routes, exposed separately so they can be compared.
double mann_whitney_exact_p(std::span<const double> a, std::span<const double> b);
double mann_whitney_normal_p(std::span<const double> a, std::span<const double> b);

// One table row: both protocol summaries plus the test outcome.
struct TableRow {
  std::string sequence_id;
  int task = 0;
  CellSummary iterative;
  CellSummary standard;
  StatVerdict stat;
};

// Rows ordered by (sequence_id, task) for one algorithm's records. Both
// protocols must be present for every (sequence, task) cell.
std::vector<TableRow> table_rows(std::span<const RunRecord> records,
                                 double alpha = 0.05);

// Figure-style aggregation per (algorithm, city count): proportions of
// transfer-relevant comparisons (tasks T_2..T_5, every instance) where the
// iterative protocol is significantly better / not different / worse, plus
// the mean feasibility success rate over the same cells per protocol.
struct FigureRow {
  std::string algorithm;
  int cities = 0;
  int comparisons = 0;
  double better = 0.0;
  double none = 0.0;
  double worse = 0.0;
  double sr_iterative = 0.0;
  double sr_standard = 0.0;
};

std::vector<FigureRow> figure_aggregates(std::span<const RunRecord> records,
                                         double alpha = 0.05);

}  // namespace tsptw

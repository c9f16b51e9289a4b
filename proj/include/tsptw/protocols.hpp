#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsptw/generators.hpp"
#include "tsptw/solvers.hpp"

namespace tsptw {

enum class Protocol { Standard, Iterative };

std::string to_string(Protocol protocol);
Protocol protocol_from_string(const std::string& text);

// One solver run on one task of one sequence.
struct RunRecord {
  std::string sequence_id;
  std::string environment;
  int cities = 0;
  Algorithm algorithm = Algorithm::Lns;
  Protocol protocol = Protocol::Standard;
  int task = 0;        // 1-based, 1..5
  int repetition = 0;  // 1-based
  std::uint64_t seed = 0;
  double score = 0.0;
  double cost = 0.0;
  double cv = 0.0;
  bool feasible = false;
  long evaluations_used = 0;
  std::vector<int> best_order;
  double wall_ms = 0.0;  // excluded from deterministic outputs
};

// Experiment plan over one task sequence. Both protocols draw fresh budgets
// of the same size per (task, repetition).
struct ProtocolPlan {
  const TaskSequence* sequence = nullptr;
  SolverConfig config;
  int repetitions = 30;
  long budget = MeteredEvaluator::kDefaultBudget;
  std::uint64_t seed_root = 0;

  void validate() const;
};

// Deterministic run seed from (root, task, repetition). Protocol is
// deliberately not an input: both protocols run T_1 identically, so their
// T_1 records coincide row for row.
std::uint64_t seed_plan(std::uint64_t root, int task, int repetition);

// Every task of every repetition solved from scratch. Runs are independent;
// `jobs` bounds the parallel fan-out. Records ordered by (repetition, task).
std::vector<RunRecord> run_standard(const ProtocolPlan& plan, int jobs = 1);

// Within each repetition, tasks run in order T_1..T_5 and task k starts from
// the best tour of task k-1 (re-evaluated on the new task, one evaluation
// from the new task's budget). Repetitions are independent and fan out over
// `jobs`. Records ordered by (repetition, task).
std::vector<RunRecord> run_iterative(const ProtocolPlan& plan, int jobs = 1);

std::vector<RunRecord> run_protocol(Protocol protocol, const ProtocolPlan& plan,
                                    int jobs = 1);

}  // namespace tsptw

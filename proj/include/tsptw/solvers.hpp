#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsptw/evaluator.hpp"
#include "tsptw/rng.hpp"

namespace tsptw {

enum class Algorithm { Lns, Vns };

std::string to_string(Algorithm algorithm);
Algorithm algorithm_from_string(const std::string& text);

struct SolverConfig {
  Algorithm algorithm = Algorithm::Lns;

  // Shared initialization: best of `init_samples` random permutations.
  int init_samples = 30;

  // LNS: destroy-and-repair iterations and the fraction of cities removed
  // per destroy step.
  int lns_iters = 500;
  double lns_destroy_frac = 0.15;

  // VNS: outer shake/improve iterations, random moves per shake, and the
  // neighbor-sample budget of one improvement phase.
  int vns_outer_iters = 1000;
  int vns_shake_moves = 1;
  int vns_local_samples = 200;

  // Warm-started runs skip the random bootstrap; set this to also draw the
  // samples and keep the better of the two.
  bool warm_start_also_sample = false;

  bool record_trajectory = false;

  std::uint64_t seed = 0;

  void validate() const;
};

struct Checkpoint {
  long evaluation = 0;  // evaluations used when this best was recorded
  double score = 0.0;
};

struct SolveOutcome {
  Tour best;
  long evaluations_used = 0;
  bool feasible = false;
  std::vector<Checkpoint> trajectory;  // populated when record_trajectory
};

// Initial tour: the warm start re-evaluated on this task (1 evaluation), or
// the best of `init_samples` random permutations.
Tour initialize(MeteredEvaluator& evaluator, const SolverConfig& config, Rng& rng,
                const std::vector<int>* warm_start = nullptr);

// Destroy-and-repair search with greedy insertion repair.
SolveOutcome lns_solve(MeteredEvaluator& evaluator, const SolverConfig& config,
                       const std::vector<int>* warm_start = nullptr);

// Shake + sampled local improvement over relocate and 2-opt neighborhoods.
SolveOutcome vns_solve(MeteredEvaluator& evaluator, const SolverConfig& config,
                       const std::vector<int>* warm_start = nullptr);

// Dispatch on config.algorithm.
SolveOutcome solve(MeteredEvaluator& evaluator, const SolverConfig& config,
                   const std::vector<int>* warm_start = nullptr);

// Neighborhood moves (exposed for tests). relocate: remove the city at
// `from` and reinsert so it lands at `to`; two_opt: reverse order[i..j].
void relocate_move(std::vector<int>& order, int from, int to);
void two_opt_move(std::vector<int>& order, int i, int j);

}  // namespace tsptw

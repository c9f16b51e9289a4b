// Compares the serial reference executor against the OpenMP fan-out on a
// batch of independent solver runs and checks that both produce identical
// records.
#include <chrono>
#include <cstdio>
#include <iostream>

#include "tsptw/generators.hpp"
#include "tsptw/io.hpp"
#include "tsptw/parallel.hpp"
#include "tsptw/protocols.hpp"

using namespace tsptw;

namespace {

double run_timed(const ProtocolPlan& plan, int jobs, std::vector<RunRecord>& out) {
  const auto start = std::chrono::steady_clock::now();
  out = run_standard(plan, jobs);
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

bool same_results(const std::vector<RunRecord>& a, const std::vector<RunRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].score != b[i].score || a[i].seed != b[i].seed ||
        a[i].evaluations_used != b[i].evaluations_used ||
        a[i].best_order != b[i].best_order)
      return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  int n = 60;
  int repetitions = 8;
  long budget = 20000;
  if (argc > 1) n = std::atoi(argv[1]);
  if (argc > 2) repetitions = std::atoi(argv[2]);
  if (argc > 3) budget = std::atol(argv[3]);

  SyntheticParams synth;
  synth.window_sigma_factor = 0.5;
  const Instance base = synthetic_instance(n, 7, synth);
  const TaskSequence sequence =
      build_sequence(base, Environment::Expansion, 7, {}, {});

  ProtocolPlan plan;
  plan.sequence = &sequence;
  plan.config.algorithm = Algorithm::Lns;
  plan.repetitions = repetitions;
  plan.budget = budget;
  plan.seed_root = 7;

  const int jobs = default_jobs();
  std::printf("batch: %d cities, %d reps x %zu tasks, budget %ld\n", n, repetitions,
              sequence.tasks.size(), budget);

  std::vector<RunRecord> serial, parallel;
  const double t_serial = run_timed(plan, 1, serial);
  const double t_parallel = run_timed(plan, jobs, parallel);

  std::printf("serial   (jobs=1)   %8.3f s\n", t_serial);
  std::printf("parallel (jobs=%-2d)  %8.3f s\n", jobs, t_parallel);
  std::printf("speedup  %.2fx\n", t_serial / t_parallel);

  if (!same_results(serial, parallel)) {
    std::printf("FAIL: serial and parallel executors disagree\n");
    return 1;
  }
  std::printf("serial and parallel records identical\n");
  return 0;
}

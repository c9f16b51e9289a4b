#include "tsptw/protocols.hpp"

#include <chrono>

#include "tsptw/parallel.hpp"

namespace tsptw {

std::string to_string(Protocol protocol) {
  return protocol == Protocol::Standard ? "standard" : "iterative";
}

Protocol protocol_from_string(const std::string& text) {
  if (text == "standard") return Protocol::Standard;
  if (text == "iterative") return Protocol::Iterative;
  throw ConfigError("unknown protocol: " + text);
}

void ProtocolPlan::validate() const {
  if (sequence == nullptr) throw ConfigError("plan has no task sequence");
  if (sequence->tasks.empty()) throw ConfigError("task sequence is empty");
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (budget < config.init_samples)
    throw ConfigError("budget must cover the initialization samples");
  config.validate();
}

std::uint64_t seed_plan(std::uint64_t root, int task, int repetition) {
  std::uint64_t s = splitmix64(root);
  s = splitmix64(s ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(task)));
  s = splitmix64(s ^ (0xc2b2ae3d27d4eb4fULL * static_cast<std::uint64_t>(repetition)));
  return s;
}

namespace {

RunRecord run_one(const ProtocolPlan& plan, Protocol protocol, int task, int repetition,
                  const std::vector<int>* warm_start) {
  const TaskSequence& sequence = *plan.sequence;
  const Instance& instance = sequence.tasks[static_cast<std::size_t>(task - 1)];

  MeteredEvaluator evaluator(instance, plan.budget);
  SolverConfig config = plan.config;
  config.seed = seed_plan(plan.seed_root, task, repetition);

  const auto started = std::chrono::steady_clock::now();
  const SolveOutcome outcome = solve(evaluator, config, warm_start);
  const auto finished = std::chrono::steady_clock::now();

  RunRecord record;
  record.sequence_id = sequence.id();
  record.environment = to_string(sequence.environment);
  record.cities = instance.size();
  record.algorithm = config.algorithm;
  record.protocol = protocol;
  record.task = task;
  record.repetition = repetition;
  record.seed = config.seed;
  record.score = outcome.best.score;
  record.cost = outcome.best.cost;
  record.cv = outcome.best.cv;
  record.feasible = outcome.feasible;
  record.evaluations_used = outcome.evaluations_used;
  record.best_order = outcome.best.order;
  record.wall_ms =
      std::chrono::duration<double, std::milli>(finished - started).count();
  return record;
}

}  // namespace

std::vector<RunRecord> run_standard(const ProtocolPlan& plan, int jobs) {
  plan.validate();
  const int tasks = static_cast<int>(plan.sequence->tasks.size());
  std::vector<RunRecord> records(static_cast<std::size_t>(tasks) *
                                 static_cast<std::size_t>(plan.repetitions));
  parallel_for(static_cast<int>(records.size()), jobs, [&](int index) {
    const int repetition = index / tasks + 1;
    const int task = index % tasks + 1;
    records[static_cast<std::size_t>(index)] =
        run_one(plan, Protocol::Standard, task, repetition, nullptr);
  });
  return records;
}

std::vector<RunRecord> run_iterative(const ProtocolPlan& plan, int jobs) {
  plan.validate();
  const int tasks = static_cast<int>(plan.sequence->tasks.size());
  std::vector<RunRecord> records(static_cast<std::size_t>(tasks) *
                                 static_cast<std::size_t>(plan.repetitions));
  parallel_for(plan.repetitions, jobs, [&](int rep_index) {
    const int repetition = rep_index + 1;
    std::vector<int> warm;
    for (int task = 1; task <= tasks; ++task) {
      RunRecord record = run_one(plan, Protocol::Iterative, task, repetition,
                                 task == 1 ? nullptr : &warm);
      warm = record.best_order;  // transferred unconditionally, feasible or not
      records[static_cast<std::size_t>(rep_index) * static_cast<std::size_t>(tasks) +
              static_cast<std::size_t>(task - 1)] = std::move(record);
    }
  });
  return records;
}

std::vector<RunRecord> run_protocol(Protocol protocol, const ProtocolPlan& plan,
                                    int jobs) {
  return protocol == Protocol::Standard ? run_standard(plan, jobs)
                                        : run_iterative(plan, jobs);
}

}  // namespace tsptw

#include <doctest.h>

#include <set>

#include "oracle.hpp"
#include "tsptw/generators.hpp"
#include "tsptw/protocols.hpp"

using namespace tsptw;

namespace {

TaskSequence test_sequence(int n, std::uint64_t seed, double width = 1.0) {
  SyntheticParams params;
  params.window_sigma_factor = width;
  const Instance base = synthetic_instance(n, seed, params);
  return build_sequence(base, Environment::Expansion, seed, {}, {});
}

ProtocolPlan make_plan(const TaskSequence& sequence, Algorithm algorithm, int reps,
                       long budget, std::uint64_t root) {
  ProtocolPlan plan;
  plan.sequence = &sequence;
  plan.config.algorithm = algorithm;
  plan.repetitions = reps;
  plan.budget = budget;
  plan.seed_root = root;
  return plan;
}

bool same_record(const RunRecord& a, const RunRecord& b) {
  return a.sequence_id == b.sequence_id && a.task == b.task &&
         a.repetition == b.repetition && a.seed == b.seed && a.score == b.score &&
         a.cost == b.cost && a.cv == b.cv && a.feasible == b.feasible &&
         a.evaluations_used == b.evaluations_used && a.best_order == b.best_order;
}

}  // namespace

TEST_CASE("seed_plan is deterministic and collision-free on the tested grid") {
  CHECK(seed_plan(1, 2, 3) == seed_plan(1, 2, 3));
  std::set<std::uint64_t> seen;
  for (std::uint64_t root : {1ULL, 2ULL, 99ULL})
    for (int task = 1; task <= 5; ++task)
      for (int rep = 1; rep <= 30; ++rep) seen.insert(seed_plan(root, task, rep));
  CHECK(seen.size() == 3 * 5 * 30);
}

TEST_CASE("one repetition yields one record per task within budget") {
  const TaskSequence sequence = test_sequence(8, 3);
  const ProtocolPlan plan = make_plan(sequence, Algorithm::Lns, 1, 2000, 5);
  const std::vector<RunRecord> records = run_standard(plan);
  CHECK(records.size() == 5);
  for (const RunRecord& r : records) {
    CHECK(r.evaluations_used <= 2000);
    CHECK(r.protocol == Protocol::Standard);
    CHECK(r.feasible == (r.cv == 0.0));
    CHECK(r.score == r.cost + r.cv * sequence.tasks[r.task - 1].penalty_constant());
    CHECK(r.wall_ms >= 0.0);
  }
}

TEST_CASE("T_1 records coincide between the protocols") {
  const TaskSequence sequence = test_sequence(10, 7);
  const ProtocolPlan plan = make_plan(sequence, Algorithm::Vns, 4, 1500, 11);
  const std::vector<RunRecord> standard = run_standard(plan);
  const std::vector<RunRecord> iterative = run_iterative(plan);
  REQUIRE(standard.size() == iterative.size());
  for (std::size_t i = 0; i < standard.size(); ++i) {
    if (standard[i].task != 1) continue;
    const RunRecord& s = standard[i];
    const RunRecord& t = iterative[i];
    CHECK(s.task == t.task);
    CHECK(s.repetition == t.repetition);
    CHECK(s.seed == t.seed);
    CHECK(s.score == t.score);
    CHECK(s.best_order == t.best_order);
    CHECK(s.evaluations_used == t.evaluations_used);
  }
}

TEST_CASE("record sets are complete: protocols x tasks x repetitions") {
  const TaskSequence sequence = test_sequence(8, 9);
  const ProtocolPlan plan = make_plan(sequence, Algorithm::Lns, 3, 1200, 13);
  std::set<std::tuple<std::string, int, int>> keys;
  for (const Protocol protocol : {Protocol::Standard, Protocol::Iterative}) {
    const std::vector<RunRecord> records = run_protocol(protocol, plan);
    CHECK(records.size() == 15);
    for (const RunRecord& r : records)
      keys.insert({to_string(r.protocol), r.task, r.repetition});
  }
  CHECK(keys.size() == 2 * 5 * 3);
}

TEST_CASE("identical tasks make iterative bests non-increasing in k") {
  SyntheticParams params;
  params.window_sigma_factor = 1.0;
  const Instance base = synthetic_instance(12, 21, params);
  TaskSequence sequence;
  sequence.environment = Environment::Expansion;
  sequence.base_name = base.name();
  sequence.seed = 21;
  for (int k = 1; k <= 5; ++k) sequence.tasks.push_back(base);
  const ProtocolPlan plan = make_plan(sequence, Algorithm::Vns, 3, 1500, 17);
  const std::vector<RunRecord> records = run_iterative(plan);
  for (int rep = 1; rep <= 3; ++rep) {
    double prev = std::numeric_limits<double>::infinity();
    for (const RunRecord& r : records) {
      if (r.repetition != rep) continue;
      CHECK(r.score <= prev);
      prev = r.score;
    }
  }
}

TEST_CASE("expansion transfer preserves per-run feasibility") {
  // If the run at T_{k-1} ended feasible, the warm start stays feasible under
  // containment, so the run at T_k ends feasible as well.
  const TaskSequence sequence = test_sequence(12, 23, 0.8);
  const ProtocolPlan plan = make_plan(sequence, Algorithm::Lns, 5, 3000, 19);
  const std::vector<RunRecord> records = run_iterative(plan);
  for (std::size_t i = 0; i + 1 < records.size(); ++i) {
    if (records[i].repetition != records[i + 1].repetition) continue;
    if (records[i].feasible) CHECK(records[i + 1].feasible);
  }
}

TEST_CASE("serial and OpenMP executors produce identical records") {
  const TaskSequence sequence = test_sequence(10, 25);
  const ProtocolPlan plan = make_plan(sequence, Algorithm::Lns, 4, 1500, 23);
  const std::vector<RunRecord> serial_std = run_standard(plan, 1);
  const std::vector<RunRecord> parallel_std = run_standard(plan, 4);
  REQUIRE(serial_std.size() == parallel_std.size());
  for (std::size_t i = 0; i < serial_std.size(); ++i)
    CHECK(same_record(serial_std[i], parallel_std[i]));

  const std::vector<RunRecord> serial_iter = run_iterative(plan, 1);
  const std::vector<RunRecord> parallel_iter = run_iterative(plan, 4);
  REQUIRE(serial_iter.size() == parallel_iter.size());
  for (std::size_t i = 0; i < serial_iter.size(); ++i)
    CHECK(same_record(serial_iter[i], parallel_iter[i]));
}

TEST_CASE("plans are validated") {
  const TaskSequence sequence = test_sequence(8, 27);
  ProtocolPlan plan = make_plan(sequence, Algorithm::Lns, 0, 1000, 1);
  CHECK_THROWS_AS(run_standard(plan), ConfigError);
  plan.repetitions = 1;
  plan.budget = 10;  // cannot cover the 30 initialization samples
  CHECK_THROWS_AS(run_standard(plan), ConfigError);
  plan.sequence = nullptr;
  CHECK_THROWS_AS(run_standard(plan), ConfigError);
}

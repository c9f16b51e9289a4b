#include <doctest.h>

#include <sstream>

#include "oracle.hpp"
#include "tsptw/adapter.hpp"

using namespace tsptw;

namespace {

std::string perm_line(const std::vector<int>& order) {
  std::string line = "perm:";
  for (const int city : order) line += " " + std::to_string(city);
  return line + "\n";
}

int count_lines_with(const std::string& text, const std::string& prefix) {
  int count = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.starts_with(prefix)) ++count;
  return count;
}

}  // namespace

TEST_CASE("every received candidate costs exactly one evaluation") {
  const Instance inst = oracle::random_instance(6, 31, true);
  oracle::TestRand rand(1);
  std::string script;
  for (int i = 0; i < 10; ++i) script += perm_line(rand.permutation(6));

  std::istringstream in(script);
  std::ostringstream out;
  MeteredEvaluator evaluator(inst, 1000);
  const SolveOutcome outcome = run_adapter(in, out, evaluator);
  CHECK(outcome.evaluations_used == 10);
  CHECK(evaluator.used() == 10);
  CHECK(count_lines_with(out.str(), "score:") == 10);
}

TEST_CASE("the best received candidate is reported") {
  const Instance inst = oracle::random_instance(6, 32, true);
  const auto [best_score, best_perm] = oracle::best_exhaustive(inst);
  oracle::TestRand rand(2);
  std::string script;
  for (int i = 0; i < 5; ++i) script += perm_line(rand.permutation(6));
  script += perm_line(best_perm);
  for (int i = 0; i < 5; ++i) script += perm_line(rand.permutation(6));

  std::istringstream in(script);
  std::ostringstream out;
  MeteredEvaluator evaluator(inst, 1000);
  const SolveOutcome outcome = run_adapter(in, out, evaluator);
  CHECK(outcome.best.score == doctest::Approx(best_score).epsilon(1e-12));
  CHECK(outcome.best.order == best_perm);
}

TEST_CASE("the exchange stops at the budget") {
  const Instance inst = oracle::random_instance(6, 33, true);
  const long budget = 40;
  oracle::TestRand rand(3);
  std::string script;
  for (long i = 0; i < budget + 50; ++i) script += perm_line(rand.permutation(6));

  std::istringstream in(script);
  std::ostringstream out;
  MeteredEvaluator evaluator(inst, budget);
  const SolveOutcome outcome = run_adapter(in, out, evaluator);
  CHECK(outcome.evaluations_used == budget);
  CHECK(evaluator.used() == budget);
  CHECK(count_lines_with(out.str(), "score:") == budget);
  CHECK(count_lines_with(out.str(), "stop") == 1);
}

TEST_CASE("malformed candidates report the line number") {
  const Instance inst = oracle::random_instance(6, 34, true);
  oracle::TestRand rand(4);
  const std::string script =
      perm_line(rand.permutation(6)) + "perm: 0 1 2 x 4 5\n";
  std::istringstream in(script);
  std::ostringstream out;
  MeteredEvaluator evaluator(inst, 1000);
  try {
    run_adapter(in, out, evaluator);
    FAIL("expected AdapterProtocolError");
  } catch (const AdapterProtocolError& err) {
    CHECK(err.line == 2);
    CHECK(std::string(err.what()).find("line 2") != std::string::npos);
  }

  // Duplicate cities are malformed too, and never cost budget.
  std::istringstream dup("perm: 0 0 2 3 4 5\n");
  MeteredEvaluator strict(inst, 1000);
  CHECK_THROWS_AS(run_adapter(dup, out, strict), AdapterProtocolError);
  CHECK(strict.used() == 0);
}

TEST_CASE("an exchange with no candidates is an error") {
  const Instance inst = oracle::random_instance(6, 35, true);
  MeteredEvaluator evaluator(inst, 1000);
  std::istringstream empty("");
  std::ostringstream out;
  CHECK_THROWS_AS(run_adapter(empty, out, evaluator), AdapterProtocolError);

  std::istringstream stop_only("stop\n");
  MeteredEvaluator other(inst, 1000);
  CHECK_THROWS_AS(run_adapter(stop_only, out, other), AdapterProtocolError);
}

TEST_CASE("the external side may end the exchange with stop") {
  const Instance inst = oracle::random_instance(6, 36, true);
  oracle::TestRand rand(5);
  const std::string script = perm_line(rand.permutation(6)) + "stop\n" +
                             perm_line(rand.permutation(6));
  std::istringstream in(script);
  std::ostringstream out;
  MeteredEvaluator evaluator(inst, 1000);
  const SolveOutcome outcome = run_adapter(in, out, evaluator);
  CHECK(outcome.evaluations_used == 1);
}

#include "tsptw/adapter.hpp"

#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "tsptw/io.hpp"

namespace tsptw {

namespace {

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

SolveOutcome run_adapter(std::istream& candidates, std::ostream& replies,
                         MeteredEvaluator& evaluator) {
  const int n = evaluator.instance().size();
  double best_score = std::numeric_limits<double>::infinity();
  std::vector<int> best_order;
  long scored = 0;

  std::string line;
  int line_no = 0;
  while (std::getline(candidates, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line)) continue;
    if (line == "stop") break;
    if (!line.starts_with("perm:"))
      throw AdapterProtocolError("expected 'perm:' or 'stop'", line_no);

    std::istringstream fields(line.substr(5));
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    int city = 0;
    while (fields >> city) order.push_back(city);
    if (!fields.eof())
      throw AdapterProtocolError("non-integer city index", line_no);

    double value = 0.0;
    try {
      check_permutation(n, order);
      value = evaluator.score(order);
    } catch (const InvalidTourError& err) {
      throw AdapterProtocolError(err.what(), line_no);
    } catch (const BudgetExhausted&) {
      replies << "stop\n" << std::flush;
      break;
    }
    ++scored;
    if (value < best_score) {
      best_score = value;
      best_order = std::move(order);
    }
    replies << "score: " << format_double(value) << "\n" << std::flush;
  }

  if (scored == 0)
    throw AdapterProtocolError("external solver ended without any candidate");

  SolveOutcome outcome;
  outcome.best = evaluate_tour(evaluator.instance(), best_order);
  outcome.evaluations_used = scored;
  outcome.feasible = outcome.best.feasible();
  return outcome;
}

}  // namespace tsptw

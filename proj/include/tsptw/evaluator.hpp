#pragma once

#include <span>

#include "tsptw/instance.hpp"

namespace tsptw {

// Penalized-score objective wrapped with a function-evaluation counter.
// Every score computation costs exactly one evaluation; the call that would
// exceed the budget throws BudgetExhausted and leaves the counter unchanged.
// Single-owner mutable state: parallel runs each own their evaluator.
class MeteredEvaluator {
 public:
  static constexpr long kDefaultBudget = 100000;

  explicit MeteredEvaluator(const Instance& instance, long budget = kDefaultBudget)
      : instance_(&instance), budget_(budget) {
    if (budget_ < 0) throw ConfigError("evaluation budget must be non-negative");
  }

  // score(order) = cost + cv * L. Consumes 1 evaluation.
  double score(std::span<const int> order);

  // Full evaluation (cost, cv, score). Consumes 1 evaluation.
  Tour evaluate(std::vector<int> order);

  const Instance& instance() const { return *instance_; }
  double penalty_constant() const { return instance_->penalty_constant(); }
  long budget() const { return budget_; }
  long used() const { return used_; }
  long remaining() const { return budget_ - used_; }

 private:
  void charge() {
    if (used_ >= budget_) throw BudgetExhausted{};
    ++used_;
  }

  const Instance* instance_;
  long budget_;
  long used_ = 0;
};

}  // namespace tsptw

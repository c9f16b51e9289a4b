#include "tsptw/evaluator.hpp"

#include <algorithm>
#include <utility>

namespace tsptw {

double MeteredEvaluator::score(std::span<const int> order) {
  const int n = instance_->size();
  check_permutation(n, order);
  charge();
  double cost = 0.0;
  double cv = 0.0;
  double arrive = 0.0;
  for (int i = 0; i < n; ++i) {
    const int city = order[static_cast<std::size_t>(i)];
    const TimeWindow& w = instance_->window(city);
    const double start = std::max(arrive, w.open);
    cv += std::max(0.0, start - w.close);
    const int next = order[static_cast<std::size_t>((i + 1) % n)];
    const double leg = instance_->travel(city, next);
    cost += leg;
    arrive = start + leg;
  }
  return cost + cv * instance_->penalty_constant();
}

Tour MeteredEvaluator::evaluate(std::vector<int> order) {
  check_permutation(instance_->size(), order);
  charge();
  return evaluate_tour(*instance_, std::move(order));
}

}  // namespace tsptw

#pragma once

#include <span>
#include <string>
#include <vector>

#include "tsptw/errors.hpp"

namespace tsptw {

// Interval in which service at a city must start. Arriving before `open` is
// allowed; the tour waits. Starting service after `close` counts as lateness.
struct TimeWindow {
  double open = 0.0;
  double close = 0.0;

  double width() const { return close - open; }
  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

// A TSPTW instance: city count, travel-time matrix, one time window per city
// and a designated depot. Immutable after construction, safe to share across
// threads. The penalty constant L (sum of all matrix entries) is computed
// once here.
class Instance {
 public:
  Instance() = default;
  Instance(std::string name, std::vector<double> travel,
           std::vector<TimeWindow> windows, int depot = 0);

  int size() const { return n_; }
  int depot() const { return depot_; }
  const std::string& name() const { return name_; }

  double travel(int from, int to) const {
    return travel_[static_cast<std::size_t>(from) * static_cast<std::size_t>(n_) +
                   static_cast<std::size_t>(to)];
  }
  const std::vector<double>& travel_matrix() const { return travel_; }
  const TimeWindow& window(int city) const {
    return windows_[static_cast<std::size_t>(city)];
  }
  const std::vector<TimeWindow>& windows() const { return windows_; }

  // L = sum over all (u, v) of travel(u, v); one unit of lateness weighted by
  // L outweighs the cost of any tour.
  double penalty_constant() const { return penalty_; }

  // Copy with different windows (and optionally a different name); the
  // matrix and depot are shared structure for generated task variants.
  Instance with_windows(std::vector<TimeWindow> windows, std::string name = {}) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::string name_;
  int n_ = 0;
  int depot_ = 0;
  std::vector<double> travel_;
  std::vector<TimeWindow> windows_;
  double penalty_ = 0.0;
};

// Arrival and service-start times per tour position (1..n stored at 0..n-1).
// The closing leg back to the first city contributes cost only and is not
// part of the schedule.
struct Schedule {
  std::vector<double> arrival;
  std::vector<double> service_start;
};

// A tour with its cached evaluation. `score = cost + cv * L`.
struct Tour {
  std::vector<int> order;
  double cost = 0.0;
  double cv = 0.0;
  double score = 0.0;

  bool feasible() const { return cv == 0.0; }
};

// Throws InvalidTourError unless `order` is a permutation of {0..n-1}.
void check_permutation(int n, std::span<const int> order);

// Induced schedule of a tour: arrival(1) = 0, service_start(i) =
// max(arrival(i), open), arrival(i+1) = service_start(i) + travel.
Schedule simulate_schedule(const Instance& instance, std::span<const int> order);

// Closed-tour travel cost, including the leg from the last city back to the
// first. Does not consume evaluation budget.
double tour_cost(const Instance& instance, std::span<const int> order);

// Total lateness: sum over positions of max(0, service_start - close).
// Zero iff the tour is feasible.
double constraint_violation(const Instance& instance, std::span<const int> order);

// Arrival time back at the first city after serving the whole tour.
double completion_time(const Instance& instance, std::span<const int> order);

// cost, cv and score in one pass (used by the evaluator).
Tour evaluate_tour(const Instance& instance, std::vector<int> order);

}  // namespace tsptw

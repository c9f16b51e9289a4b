#include "tsptw/instance.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace tsptw {

Instance::Instance(std::string name, std::vector<double> travel,
                   std::vector<TimeWindow> windows, int depot)
    : name_(std::move(name)),
      depot_(depot),
      travel_(std::move(travel)),
      windows_(std::move(windows)) {
  const std::size_t n = windows_.size();
  if (n < 2) throw InstanceError("instance needs at least 2 cities");
  if (travel_.size() != n * n)
    throw InstanceError("travel matrix is not square with the city count");
  n_ = static_cast<int>(n);
  if (depot_ < 0 || depot_ >= n_) throw InstanceError("depot index out of range");

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = travel_[i * n + j];
      if (!std::isfinite(d) || d < 0.0)
        throw InstanceError("travel times must be finite and non-negative");
    }
    if (travel_[i * n + i] != 0.0)
      throw InstanceError("travel matrix diagonal must be zero");
    const TimeWindow& w = windows_[i];
    if (!std::isfinite(w.open) || !std::isfinite(w.close))
      throw InstanceError("time windows must be finite");
    if (w.open < 0.0 || w.open > w.close)
      throw InstanceError("time window must satisfy 0 <= open <= close");
  }

  penalty_ = 0.0;
  for (const double d : travel_) penalty_ += d;
}

Instance Instance::with_windows(std::vector<TimeWindow> windows, std::string name) const {
  return Instance(name.empty() ? name_ : std::move(name), travel_,
                  std::move(windows), depot_);
}

namespace {

// Scratch marks for permutation checking; epoch counter avoids a clear per
// call. thread_local keeps parallel runs independent.
thread_local std::vector<std::uint32_t> perm_mark;
thread_local std::uint32_t perm_epoch = 0;

}  // namespace

void check_permutation(int n, std::span<const int> order) {
  if (static_cast<int>(order.size()) != n)
    throw InvalidTourError("tour length does not match the city count");
  if (perm_mark.size() < static_cast<std::size_t>(n))
    perm_mark.assign(static_cast<std::size_t>(n), 0);
  if (++perm_epoch == 0) {
    std::fill(perm_mark.begin(), perm_mark.end(), 0);
    perm_epoch = 1;
  }
  for (const int city : order) {
    if (city < 0 || city >= n)
      throw InvalidTourError("tour contains an out-of-range city index");
    if (perm_mark[static_cast<std::size_t>(city)] == perm_epoch)
      throw InvalidTourError("tour visits a city twice");
    perm_mark[static_cast<std::size_t>(city)] = perm_epoch;
  }
}

Schedule simulate_schedule(const Instance& instance, std::span<const int> order) {
  const int n = instance.size();
  check_permutation(n, order);
  Schedule sched;
  sched.arrival.resize(static_cast<std::size_t>(n));
  sched.service_start.resize(static_cast<std::size_t>(n));
  double arrive = 0.0;
  for (int i = 0; i < n; ++i) {
    const int city = order[static_cast<std::size_t>(i)];
    const double start = std::max(arrive, instance.window(city).open);
    sched.arrival[static_cast<std::size_t>(i)] = arrive;
    sched.service_start[static_cast<std::size_t>(i)] = start;
    if (i + 1 < n) arrive = start + instance.travel(city, order[static_cast<std::size_t>(i + 1)]);
  }
  return sched;
}

double tour_cost(const Instance& instance, std::span<const int> order) {
  const int n = instance.size();
  check_permutation(n, order);
  double cost = instance.travel(order[static_cast<std::size_t>(n - 1)], order[0]);
  for (int i = 0; i + 1 < n; ++i)
    cost += instance.travel(order[static_cast<std::size_t>(i)],
                            order[static_cast<std::size_t>(i + 1)]);
  return cost;
}

double constraint_violation(const Instance& instance, std::span<const int> order) {
  const int n = instance.size();
  check_permutation(n, order);
  double cv = 0.0;
  double arrive = 0.0;
  for (int i = 0; i < n; ++i) {
    const int city = order[static_cast<std::size_t>(i)];
    const TimeWindow& w = instance.window(city);
    const double start = std::max(arrive, w.open);
    cv += std::max(0.0, start - w.close);
    if (i + 1 < n) arrive = start + instance.travel(city, order[static_cast<std::size_t>(i + 1)]);
  }
  return cv;
}

double completion_time(const Instance& instance, std::span<const int> order) {
  const int n = instance.size();
  check_permutation(n, order);
  double arrive = 0.0;
  double start = 0.0;
  for (int i = 0; i < n; ++i) {
    const int city = order[static_cast<std::size_t>(i)];
    start = std::max(arrive, instance.window(city).open);
    const int next = order[static_cast<std::size_t>((i + 1) % n)];
    arrive = start + instance.travel(city, next);
  }
  return arrive;
}

Tour evaluate_tour(const Instance& instance, std::vector<int> order) {
  const int n = instance.size();
  check_permutation(n, order);
  double cost = 0.0;
  double cv = 0.0;
  double arrive = 0.0;
  for (int i = 0; i < n; ++i) {
    const int city = order[static_cast<std::size_t>(i)];
    const TimeWindow& w = instance.window(city);
    const double start = std::max(arrive, w.open);
    cv += std::max(0.0, start - w.close);
    const int next = order[static_cast<std::size_t>((i + 1) % n)];
    const double leg = instance.travel(city, next);
    cost += leg;
    arrive = start + leg;
  }
  Tour tour;
  tour.order = std::move(order);
  tour.cost = cost;
  tour.cv = cv;
  tour.score = cost + cv * instance.penalty_constant();
  return tour;
}

}  // namespace tsptw

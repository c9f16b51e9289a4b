#include "tsptw/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "tsptw/rng.hpp"
#include "tsptw/solvers.hpp"

namespace tsptw {

std::string to_string(Environment env) {
  return env == Environment::Expansion ? "expansion" : "swap";
}

Environment environment_from_string(const std::string& text) {
  if (text == "expansion" || text == "expand") return Environment::Expansion;
  if (text == "swap") return Environment::Swap;
  throw ConfigError("unknown environment: " + text);
}

void ExpansionParams::validate() const {
  if (rho < 0.0) throw ConfigError("expansion rho must be >= 0");
  if (!(select_lo > 0.0 && select_lo <= select_hi && select_hi < 1.0))
    throw ConfigError("selection bounds must satisfy 0 < lo <= hi < 1");
}

void SwapParams::validate() const {
  if (swaps < 0) throw ConfigError("swap count must be >= 0");
  if (fixed_delta && *fixed_delta < 0.0)
    throw ConfigError("fixed delta must be >= 0");
}

std::string TaskSequence::id() const {
  return base_name + "-" + to_string(environment) + "-" + std::to_string(seed);
}

Instance expand_windows(const Instance& prev, const ExpansionParams& params,
                        std::uint64_t seed, std::span<const int> reference_tour) {
  params.validate();
  const int n = prev.size();
  if (n < 3)
    throw InstanceError("degenerate instance: expansion needs at least 3 cities");
  check_permutation(n, reference_tour);

  Rng rng(seed);
  const int lo = std::max(1, static_cast<int>(std::ceil(params.select_lo * n)));
  int hi = std::max(lo, static_cast<int>(std::floor(params.select_hi * n)));
  hi = std::min(hi, n - 1);
  const int count = rng.uniform_int(std::min(lo, hi), hi);

  std::vector<int> non_depot;
  non_depot.reserve(static_cast<std::size_t>(n - 1));
  for (int city = 0; city < n; ++city)
    if (city != prev.depot()) non_depot.push_back(city);

  std::set<int> selected;
  for (const int idx : rng.sample(static_cast<int>(non_depot.size()), count))
    selected.insert(non_depot[static_cast<std::size_t>(idx)]);

  std::vector<TimeWindow> windows = prev.windows();
  for (const int city : selected) {  // ascending order: draws are reproducible
    TimeWindow& w = windows[static_cast<std::size_t>(city)];
    const double limit = params.rho * w.width();
    const double lower = rng.uniform_real(0.0, limit);
    const double upper = rng.uniform_real(0.0, limit);
    w.open = std::max(0.0, w.open - lower);
    w.close += upper;
  }

  // Depot closing time: the minimum upward adjustment that keeps the stored
  // reference tour feasible. Only opening times affect the schedule, so the
  // completion time can be computed before the adjustment itself.
  Instance widened = prev.with_windows(windows);
  const double completion = completion_time(widened, reference_tour);
  TimeWindow& depot_window = windows[static_cast<std::size_t>(prev.depot())];
  depot_window.close = std::max(depot_window.close, completion);
  return prev.with_windows(std::move(windows));
}

SwapResult swap_additive_windows(const Instance& instance,
                                 std::span<const int> reference_tour,
                                 const SwapParams& params, std::uint64_t seed) {
  params.validate();
  const int n = instance.size();
  check_permutation(n, reference_tour);
  if (constraint_violation(instance, reference_tour) != 0.0)
    throw GenerationError("reference tour is infeasible on the instance");

  Rng rng(seed);
  std::vector<int> swapped(reference_tour.begin(), reference_tour.end());
  for (int s = 0; s < params.swaps; ++s) {
    const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    if (j >= i) ++j;
    std::swap(swapped[static_cast<std::size_t>(i)], swapped[static_cast<std::size_t>(j)]);
  }

  // Arrival times of the swapped tour against the pre-swap windows.
  std::vector<double> arrivals(static_cast<std::size_t>(n), 0.0);
  if (params.waiting_arrivals) {
    arrivals = simulate_schedule(instance, swapped).arrival;
  } else {
    for (int i = 0; i + 1 < n; ++i)
      arrivals[static_cast<std::size_t>(i + 1)] =
          arrivals[static_cast<std::size_t>(i)] +
          instance.travel(swapped[static_cast<std::size_t>(i)],
                          swapped[static_cast<std::size_t>(i + 1)]);
  }

  double delta = 0.0;
  if (params.fixed_delta) {
    delta = *params.fixed_delta;
  } else {
    // Population (divide-by-n) standard deviation of the arrival times.
    const double mean =
        std::accumulate(arrivals.begin(), arrivals.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (const double t : arrivals) ss += (t - mean) * (t - mean);
    delta = std::sqrt(ss / static_cast<double>(n));
  }

  std::vector<TimeWindow> windows(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int city = swapped[static_cast<std::size_t>(i)];
    const double t = arrivals[static_cast<std::size_t>(i)];
    windows[static_cast<std::size_t>(city)] = {std::max(0.0, t - delta), t + delta};
  }

  SwapResult result{instance.with_windows(std::move(windows)), std::move(swapped), delta};
  return result;
}

namespace {

std::vector<int> find_reference_tour(const Instance& base, std::uint64_t seed,
                                     long budget) {
  SolverConfig config;
  config.algorithm = Algorithm::Vns;
  config.seed = seed;
  MeteredEvaluator evaluator(base, budget);
  return vns_solve(evaluator, config).best.order;
}

}  // namespace

TaskSequence build_sequence(const Instance& base, Environment environment,
                            std::uint64_t seed, const ExpansionParams& expansion,
                            const SwapParams& swap, const SequenceOptions& options) {
  expansion.validate();
  swap.validate();

  TaskSequence sequence;
  sequence.environment = environment;
  sequence.base_name = base.name();
  sequence.seed = seed;
  sequence.expansion = expansion;
  sequence.swap = swap;

  if (options.reference_tour) {
    check_permutation(base.size(), *options.reference_tour);
    sequence.reference_tour = *options.reference_tour;
  } else {
    sequence.reference_tour = find_reference_tour(
        base, splitmix64(seed ^ 0x7265666572656e63ULL), options.reference_budget);
  }
  if (environment == Environment::Swap &&
      constraint_violation(base, sequence.reference_tour) != 0.0)
    throw GenerationError(
        "no feasible reference tour for the swap environment; supply one or raise "
        "the reference budget");

  sequence.tasks.reserve(kTasksPerSequence);
  sequence.tasks.push_back(base.with_windows(base.windows(), base.name() + "-T1"));

  std::vector<int> reference = sequence.reference_tour;
  for (int k = 2; k <= kTasksPerSequence; ++k) {
    const std::uint64_t step_seed =
        splitmix64(seed ^ (0xa24baed4963ee407ULL * static_cast<std::uint64_t>(k)));
    const Instance& prev = sequence.tasks.back();
    const std::string task_name = base.name() + "-T" + std::to_string(k);
    if (environment == Environment::Expansion) {
      Instance next = expand_windows(prev, expansion, step_seed, reference);
      sequence.tasks.push_back(next.with_windows(next.windows(), task_name));
    } else {
      SwapResult step = swap_additive_windows(prev, reference, swap, step_seed);
      sequence.tasks.push_back(
          step.instance.with_windows(step.instance.windows(), task_name));
      reference = step.swapped_tour;  // the carrier becomes the next reference
      sequence.swap_tours.push_back(std::move(step.swapped_tour));
      sequence.deltas.push_back(step.delta);
    }
  }
  return sequence;
}

Instance synthetic_instance(int n, std::uint64_t seed, const SyntheticParams& params) {
  if (n < 2) throw InstanceError("synthetic instance needs at least 2 cities");
  Rng rng(seed);
  std::vector<double> xs(static_cast<std::size_t>(n)), ys(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    xs[static_cast<std::size_t>(i)] = rng.uniform_real(0.0, params.coord_range);
    ys[static_cast<std::size_t>(i)] = rng.uniform_real(0.0, params.coord_range);
  }
  std::vector<double> matrix = euclidean_matrix(xs, ys, params.rounding);

  // Hidden reference tour; windows centered on its arrival times make the
  // instance feasible by construction.
  const std::vector<int> reference = rng.permutation(n);
  std::vector<double> arrivals(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i + 1 < n; ++i)
    arrivals[static_cast<std::size_t>(i + 1)] =
        arrivals[static_cast<std::size_t>(i)] +
        matrix[static_cast<std::size_t>(reference[static_cast<std::size_t>(i)]) *
                   static_cast<std::size_t>(n) +
               static_cast<std::size_t>(reference[static_cast<std::size_t>(i + 1)])];

  const double mean =
      std::accumulate(arrivals.begin(), arrivals.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (const double t : arrivals) ss += (t - mean) * (t - mean);
  const double delta = params.window_sigma_factor * std::sqrt(ss / static_cast<double>(n));

  std::vector<TimeWindow> windows(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int city = reference[static_cast<std::size_t>(i)];
    const double t = arrivals[static_cast<std::size_t>(i)];
    windows[static_cast<std::size_t>(city)] = {std::max(0.0, t - delta), t + delta};
  }
  const std::string name = "syn" + std::to_string(n) + "s" + std::to_string(seed);
  return Instance(name, std::move(matrix), std::move(windows));
}

}  // namespace tsptw

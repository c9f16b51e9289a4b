#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsptw/geometry.hpp"
#include "tsptw/instance.hpp"

namespace tsptw {

inline constexpr int kTasksPerSequence = 5;

enum class Environment { Expansion, Swap };

std::string to_string(Environment env);
Environment environment_from_string(const std::string& text);

// Partial time-window expansion. Each step widens the windows of a random
// 10-15% subset of the non-depot cities by amounts drawn from
// U(0, rho * width) on each side.
struct ExpansionParams {
  double rho = 0.3;
  double select_lo = 0.10;
  double select_hi = 0.15;

  void validate() const;
};

// Swap-additive reassignment. Each step swaps `swaps` position pairs of a
// feasible reference tour and rebuilds every window around the swapped
// tour's arrival times with half-width delta.
struct SwapParams {
  int swaps = 1;
  // Arrival times follow the schedule recursion against the pre-swap windows
  // (waiting included). The cumulative-sum alternative without waiting is
  // kept for sensitivity checks.
  bool waiting_arrivals = true;
  // Half-width; unset means the population standard deviation of the swapped
  // tour's arrival times.
  std::optional<double> fixed_delta;

  void validate() const;
};

struct SwapResult {
  Instance instance;
  std::vector<int> swapped_tour;
  double delta = 0.0;
};

// Five related tasks sharing the matrix and city set, differing only in
// windows. T_1 is the base instance.
struct TaskSequence {
  std::vector<Instance> tasks;
  Environment environment = Environment::Expansion;
  std::string base_name;
  std::uint64_t seed = 0;
  ExpansionParams expansion;
  SwapParams swap;

  // Tour anchoring the generation: depot-closing adjustments (expansion) or
  // the T_1 reference (swap). Feasible on T_1 in the swap environment.
  std::vector<int> reference_tour;
  // Swap environment: the swapped tour behind each generated task T_2..T_5
  // (carrier tours; each has cv = 0 on the task it induced).
  std::vector<std::vector<int>> swap_tours;
  // Swap environment: half-width used at each generation step.
  std::vector<double> deltas;

  std::string id() const;
};

// One expansion step. `reference_tour` is used only for the depot-closing
// adjustment: close_depot' = max(close_depot, completion time of the
// reference tour under the already-widened windows).
Instance expand_windows(const Instance& prev, const ExpansionParams& params,
                        std::uint64_t seed, std::span<const int> reference_tour);

// One swap-additive step. `reference_tour` must be feasible on `instance`.
SwapResult swap_additive_windows(const Instance& instance,
                                 std::span<const int> reference_tour,
                                 const SwapParams& params, std::uint64_t seed);

struct SequenceOptions {
  // Externally supplied feasible tour for T_1; when absent a short VNS run
  // derives one.
  std::optional<std::vector<int>> reference_tour;
  // Evaluation budget for that VNS run.
  long reference_budget = 20000;
};

TaskSequence build_sequence(const Instance& base, Environment environment,
                            std::uint64_t seed, const ExpansionParams& expansion,
                            const SwapParams& swap,
                            const SequenceOptions& options = {});

// Random Euclidean instance whose windows are centered on the arrival times
// of a hidden reference tour, so at least one feasible tour exists by
// construction. `window_sigma_factor` scales the half-width relative to the
// population standard deviation of those arrival times; smaller is tighter.
struct SyntheticParams {
  double coord_range = 100.0;
  double window_sigma_factor = 1.0;
  DistanceRounding rounding = DistanceRounding::Truncate;
};

Instance synthetic_instance(int n, std::uint64_t seed,
                            const SyntheticParams& params = {});

}  // namespace tsptw

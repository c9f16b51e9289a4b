#include "tsptw/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace tsptw {

std::string to_string(Algorithm algorithm) {
  return algorithm == Algorithm::Lns ? "lns" : "vns";
}

Algorithm algorithm_from_string(const std::string& text) {
  if (text == "lns") return Algorithm::Lns;
  if (text == "vns") return Algorithm::Vns;
  throw ConfigError("unknown algorithm: " + text);
}

void SolverConfig::validate() const {
  if (init_samples < 1) throw ConfigError("init_samples must be >= 1");
  if (lns_iters < 0 || vns_outer_iters < 0)
    throw ConfigError("iteration counts must be >= 0");
  if (!(lns_destroy_frac > 0.0 && lns_destroy_frac < 1.0))
    throw ConfigError("lns_destroy_frac must lie in (0, 1)");
  if (vns_shake_moves < 1) throw ConfigError("vns_shake_moves must be >= 1");
  if (vns_local_samples < 0) throw ConfigError("vns_local_samples must be >= 0");
}

void relocate_move(std::vector<int>& order, int from, int to) {
  const int city = order[static_cast<std::size_t>(from)];
  order.erase(order.begin() + from);
  order.insert(order.begin() + to, city);
}

void two_opt_move(std::vector<int>& order, int i, int j) {
  std::reverse(order.begin() + i, order.begin() + j + 1);
}

namespace {

// Tracks the best tour over every evaluation of a run and owns the
// outcome-facing bookkeeping. All candidate scores flow through here.
class BestTracker {
 public:
  BestTracker(MeteredEvaluator& evaluator, bool record_trajectory)
      : evaluator_(evaluator), record_(record_trajectory) {}

  double score(const std::vector<int>& order) {
    const double value = evaluator_.score(order);
    if (value < best_score_) {
      best_score_ = value;
      best_order_ = order;
      if (record_) trajectory_.push_back({evaluator_.used(), value});
    }
    return value;
  }

  bool has_best() const { return !best_order_.empty(); }

  SolveOutcome outcome() const {
    SolveOutcome result;
    const Instance& instance = evaluator_.instance();
    // Rebuild cost/cv without spending budget; the score was already paid for.
    result.best = evaluate_tour(instance, best_order_);
    result.evaluations_used = evaluator_.used();
    result.feasible = result.best.feasible();
    result.trajectory = trajectory_;
    return result;
  }

 private:
  MeteredEvaluator& evaluator_;
  bool record_;
  double best_score_ = std::numeric_limits<double>::infinity();
  std::vector<int> best_order_;
  std::vector<Checkpoint> trajectory_;
};

struct Incumbent {
  std::vector<int> order;
  double score = std::numeric_limits<double>::infinity();
};

Incumbent initialize_incumbent(MeteredEvaluator& evaluator, const SolverConfig& config,
                               Rng& rng, BestTracker& tracker,
                               const std::vector<int>* warm_start) {
  const int n = evaluator.instance().size();
  Incumbent current;
  if (warm_start != nullptr) {
    check_permutation(n, *warm_start);
    current.order = *warm_start;
    current.score = tracker.score(current.order);
    if (!config.warm_start_also_sample) return current;
  }
  for (int s = 0; s < config.init_samples; ++s) {
    std::vector<int> order = rng.permutation(n);
    const double value = tracker.score(order);
    if (value < current.score) {
      current.score = value;
      current.order = std::move(order);
    }
  }
  return current;
}

// One uniform random move: a fair coin picks relocate or 2-opt, positions
// are uniform. Identity relocates (from == to) are legal moves.
void random_move(std::vector<int>& order, Rng& rng) {
  const int n = static_cast<int>(order.size());
  if (rng.coin()) {
    const int from = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const int to = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    relocate_move(order, from, to);
  } else {
    int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    if (j >= i) ++j;
    if (i > j) std::swap(i, j);
    two_opt_move(order, i, j);
  }
}

void run_lns(MeteredEvaluator& evaluator, const SolverConfig& config, Rng& rng,
             BestTracker& tracker, const std::vector<int>* warm_start) {
  const int n = evaluator.instance().size();
  Incumbent current = initialize_incumbent(evaluator, config, rng, tracker, warm_start);

  int remove_count = static_cast<int>(std::ceil(config.lns_destroy_frac * n));
  remove_count = std::clamp(remove_count, 1, n - 1);

  std::vector<char> removed_mark(static_cast<std::size_t>(n));
  for (int iter = 0; iter < config.lns_iters; ++iter) {
    const std::vector<int> removed = rng.sample(n, remove_count);
    std::fill(removed_mark.begin(), removed_mark.end(), 0);
    for (const int city : removed) removed_mark[static_cast<std::size_t>(city)] = 1;

    std::vector<int> partial;
    partial.reserve(static_cast<std::size_t>(n));
    for (const int city : current.order)
      if (!removed_mark[static_cast<std::size_t>(city)]) partial.push_back(city);

    // Greedy insertion: each candidate position is scored as a complete tour,
    // with the not-yet-inserted cities appended in removal order.
    double repaired_score = std::numeric_limits<double>::infinity();
    std::vector<int> candidate;
    candidate.reserve(static_cast<std::size_t>(n));
    for (std::size_t j = 0; j < removed.size(); ++j) {
      const int city = removed[j];
      int best_pos = 0;
      double best_score = std::numeric_limits<double>::infinity();
      for (std::size_t pos = 0; pos <= partial.size(); ++pos) {
        candidate.assign(partial.begin(), partial.begin() + static_cast<std::ptrdiff_t>(pos));
        candidate.push_back(city);
        candidate.insert(candidate.end(), partial.begin() + static_cast<std::ptrdiff_t>(pos),
                         partial.end());
        candidate.insert(candidate.end(), removed.begin() + static_cast<std::ptrdiff_t>(j) + 1,
                         removed.end());
        const double value = tracker.score(candidate);
        if (value < best_score) {
          best_score = value;
          best_pos = static_cast<int>(pos);
        }
      }
      partial.insert(partial.begin() + best_pos, city);
      repaired_score = best_score;
    }

    if (repaired_score < current.score) {
      current.order = partial;
      current.score = repaired_score;
    }
  }
}

void run_vns(MeteredEvaluator& evaluator, const SolverConfig& config, Rng& rng,
             BestTracker& tracker, const std::vector<int>* warm_start) {
  Incumbent current = initialize_incumbent(evaluator, config, rng, tracker, warm_start);

  for (int iter = 0; iter < config.vns_outer_iters; ++iter) {
    std::vector<int> shaken = current.order;
    for (int m = 0; m < config.vns_shake_moves; ++m) random_move(shaken, rng);
    current.order = std::move(shaken);
    current.score = tracker.score(current.order);

    // First improvement; the sample budget is shared across acceptances.
    for (int s = 0; s < config.vns_local_samples; ++s) {
      std::vector<int> neighbor = current.order;
      random_move(neighbor, rng);
      const double value = tracker.score(neighbor);
      if (value < current.score) {
        current.order = std::move(neighbor);
        current.score = value;
      }
    }
  }
}

}  // namespace

Tour initialize(MeteredEvaluator& evaluator, const SolverConfig& config, Rng& rng,
                const std::vector<int>* warm_start) {
  config.validate();
  if (evaluator.remaining() < 1) throw BudgetExhausted{};
  BestTracker tracker(evaluator, false);
  Incumbent current = initialize_incumbent(evaluator, config, rng, tracker, warm_start);
  return evaluate_tour(evaluator.instance(), current.order);
}

SolveOutcome lns_solve(MeteredEvaluator& evaluator, const SolverConfig& config,
                       const std::vector<int>* warm_start) {
  config.validate();
  if (evaluator.remaining() < 1)
    throw ConfigError("no evaluation budget left for the solver run");
  Rng rng(config.seed);
  BestTracker tracker(evaluator, config.record_trajectory);
  try {
    run_lns(evaluator, config, rng, tracker, warm_start);
  } catch (const BudgetExhausted&) {
    // Budget ran out mid-search; the tracked best is the result.
  }
  return tracker.outcome();
}

SolveOutcome vns_solve(MeteredEvaluator& evaluator, const SolverConfig& config,
                       const std::vector<int>* warm_start) {
  config.validate();
  if (evaluator.remaining() < 1)
    throw ConfigError("no evaluation budget left for the solver run");
  Rng rng(config.seed);
  BestTracker tracker(evaluator, config.record_trajectory);
  try {
    run_vns(evaluator, config, rng, tracker, warm_start);
  } catch (const BudgetExhausted&) {
  }
  return tracker.outcome();
}

SolveOutcome solve(MeteredEvaluator& evaluator, const SolverConfig& config,
                   const std::vector<int>* warm_start) {
  return config.algorithm == Algorithm::Lns ? lns_solve(evaluator, config, warm_start)
                                            : vns_solve(evaluator, config, warm_start);
}

}  // namespace tsptw

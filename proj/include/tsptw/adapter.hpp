#pragma once

#include <iosfwd>

#include "tsptw/solvers.hpp"

namespace tsptw {

// Evaluation-metering contract for external solvers. The external process
// writes newline-delimited candidate tours, one per line:
//
//   perm: i1 i2 ... in        (0-based city indices, a permutation)
//
// The adapter replies with one line per candidate:
//
//   score: <value>            (shortest round-trip decimal)
//
// and terminates the exchange with a single line "stop" once the evaluation
// budget is reached. The external side may also send "stop" to end early.
// Every candidate costs exactly one evaluation; the adapter performs no
// re-checks of its own.
SolveOutcome run_adapter(std::istream& candidates, std::ostream& replies,
                         MeteredEvaluator& evaluator);

}  // namespace tsptw

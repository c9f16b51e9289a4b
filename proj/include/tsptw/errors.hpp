#pragma once

#include <exception>
#include <stdexcept>
#include <string>

namespace tsptw {

// Base class for all failure-style errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The candidate order is not a permutation of the instance's cities.
struct InvalidTourError : Error {
  using Error::Error;
};

// Instance data violates a structural invariant (bad matrix, bad window,
// degenerate size).
struct InstanceError : Error {
  using Error::Error;
};

// Task-sequence generation could not proceed (e.g. no feasible reference
// tour in the swap environment).
struct GenerationError : Error {
  using Error::Error;
};

// Malformed input file. `line` is 1-based, 0 when not line-addressable.
struct ParseError : Error {
  int line = 0;
  ParseError(const std::string& msg, int line_no = 0)
      : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
        line(line_no) {}
};

// Invalid configuration (CLI or programmatic).
struct ConfigError : Error {
  using Error::Error;
};

// External-solver exchange violated the adapter wire protocol.
struct AdapterProtocolError : Error {
  int line = 0;
  AdapterProtocolError(const std::string& msg, int line_no = 0)
      : Error(line_no > 0 ? "candidate line " + std::to_string(line_no) + ": " + msg : msg),
        line(line_no) {}
};

// A report/aggregation step found gaps in the record set.
struct IncompleteDataError : Error {
  using Error::Error;
};

// Stop signal raised when a metered evaluator has no budget left. This is a
// control-flow condition, not a failure, so it deliberately does not derive
// from Error: a catch-all for Error must not swallow it.
struct BudgetExhausted : std::exception {
  const char* what() const noexcept override { return "evaluation budget exhausted"; }
};

}  // namespace tsptw

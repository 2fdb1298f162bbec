#pragma once

#include <stdexcept>
#include <string>

namespace credal {

// Base class for everything thrown on purpose by this library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (JSON syntax, unknown fields, wrong shapes).
struct parse_error : error {
  using error::error;
};

// A model invariant is violated (bad probabilities, cyclic graph,
// unreachable intervals, unknown node/state names, ...).
struct validation_error : error {
  using error::error;
};

// An operation precondition does not hold (conditioning on an event of zero
// upper probability, dominance test on a multiply connected subgraph, ...).
struct precondition_error : error {
  using error::error;
};

// An exact enumeration would exceed the configured cap.  Brute-force
// routines throw this instead of sampling.
struct cap_error : error {
  using error::error;
};

}  // namespace credal

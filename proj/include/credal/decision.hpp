#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "credal/credal_set.hpp"

namespace credal {

// Any lower-expectation functional on gambles of a fixed space.
using LowerPrevision = std::function<double(const Gamble&)>;

struct CoherenceViolation {
  std::string axiom;   // "L1", "L2", "L3" or "conjugacy"
  std::string detail;  // which gambles witnessed it
  double lhs = 0.0;
  double rhs = 0.0;
};

struct CoherenceReport {
  std::optional<CoherenceViolation> violation;
  int checks = 0;
  bool ok() const { return !violation.has_value(); }
};

// Checks the coherence axioms on a finite sample of gambles:
//   (L1) lower(f) >= min f            for every sampled f,
//   (L2) lower(f+g) >= lower(f) + lower(g)  for every sampled pair,
//   (L3) lower(s f) == s lower(f)     for every sampled f and scale s > 0.
// Stops at the first violation and reports the witnesses.
CoherenceReport check_coherence(
    const LowerPrevision& lower, const std::vector<Gamble>& sample,
    const std::vector<double>& scales = {0.5, 2.0, 3.0}, double tol = 1e-9);

// For linear previsions only: lower(f) + lower(-f) == 0 on the sample.
CoherenceReport check_self_conjugacy(const LowerPrevision& lower,
                                     const std::vector<Gamble>& sample,
                                     double tol = 1e-9);

// f is strictly preferred to g iff the lower expectation of f - g is
// strictly positive.  Exactly > 0: a vanishing value is not a preference.
bool strict_preference(const CredalSet& cs, const Gamble& f, const Gamble& g);

struct ActionAnalysis {
  std::vector<int> maximal;  // indices into the action list, ascending
  enum class Relation { Equivalent, Incomparable };
  // One entry per unordered pair {i, j} of maximal actions, keyed (i, j)
  // with i < j.
  std::map<std::pair<int, int>, Relation> relations;
};

// Maximality: keep the actions not strictly dominated by any other.  Two
// survivors are equivalent when both difference lower expectations vanish
// within tol, incomparable otherwise.
ActionAnalysis maximal_actions(const CredalSet& cs,
                               const std::vector<Gamble>& actions,
                               double tol = 1e-9);

}  // namespace credal

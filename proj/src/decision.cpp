#include "credal/decision.hpp"

#include <cmath>

namespace credal {

CoherenceReport check_coherence(const LowerPrevision& lower,
                                const std::vector<Gamble>& sample,
                                const std::vector<double>& scales,
                                double tol) {
  CoherenceReport rep;
  std::vector<double> val(sample.size());
  for (size_t i = 0; i < sample.size(); ++i) {
    val[i] = lower(sample[i]);
    ++rep.checks;
    if (val[i] < sample[i].min_value() - tol) {
      rep.violation = CoherenceViolation{
          "L1", "gamble #" + std::to_string(i), val[i],
          sample[i].min_value()};
      return rep;
    }
  }
  for (size_t i = 0; i < sample.size(); ++i) {
    for (size_t j = i; j < sample.size(); ++j) {
      double both = lower(sample[i] + sample[j]);
      ++rep.checks;
      if (both < val[i] + val[j] - tol) {
        rep.violation = CoherenceViolation{
            "L2",
            "gambles #" + std::to_string(i) + " and #" + std::to_string(j),
            both, val[i] + val[j]};
        return rep;
      }
    }
  }
  for (size_t i = 0; i < sample.size(); ++i) {
    for (double s : scales) {
      if (!(s > 0.0)) continue;
      double scaled = lower(s * sample[i]);
      ++rep.checks;
      if (std::fabs(scaled - s * val[i]) > tol * std::max(1.0, s)) {
        rep.violation = CoherenceViolation{
            "L3",
            "gamble #" + std::to_string(i) + " scaled by " +
                std::to_string(s),
            scaled, s * val[i]};
        return rep;
      }
    }
  }
  return rep;
}

CoherenceReport check_self_conjugacy(const LowerPrevision& lower,
                                     const std::vector<Gamble>& sample,
                                     double tol) {
  CoherenceReport rep;
  for (size_t i = 0; i < sample.size(); ++i) {
    double a = lower(sample[i]);
    double b = lower(-sample[i]);
    ++rep.checks;
    if (std::fabs(a + b) > tol) {
      rep.violation = CoherenceViolation{
          "conjugacy", "gamble #" + std::to_string(i), a, -b};
      return rep;
    }
  }
  return rep;
}

bool strict_preference(const CredalSet& cs, const Gamble& f, const Gamble& g) {
  return cs.lower(f - g) > 0.0;
}

ActionAnalysis maximal_actions(const CredalSet& cs,
                               const std::vector<Gamble>& actions,
                               double tol) {
  if (actions.empty())
    throw validation_error("maximal_actions: empty action list");
  const int n = static_cast<int>(actions.size());
  // diff[i][j] = lower expectation of actions[i] - actions[j].
  std::vector<std::vector<double>> diff(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) diff[i][j] = cs.lower(actions[i] - actions[j]);

  ActionAnalysis out;
  std::vector<bool> beaten(n, false);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (i != j && diff[i][j] > 0.0) beaten[j] = true;
  for (int i = 0; i < n; ++i)
    if (!beaten[i]) out.maximal.push_back(i);

  for (size_t a = 0; a < out.maximal.size(); ++a) {
    for (size_t b = a + 1; b < out.maximal.size(); ++b) {
      int i = out.maximal[a], j = out.maximal[b];
      bool equiv =
          std::fabs(diff[i][j]) <= tol && std::fabs(diff[j][i]) <= tol;
      out.relations[{i, j}] = equiv ? ActionAnalysis::Relation::Equivalent
                                    : ActionAnalysis::Relation::Incomparable;
    }
  }
  return out;
}

}  // namespace credal

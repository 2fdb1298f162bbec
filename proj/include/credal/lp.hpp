#pragma once

#include <vector>

#include "credal/errors.hpp"

namespace credal {

enum class Rel { LE, EQ, GE };

struct LinearConstraint {
  std::vector<double> coeffs;
  Rel rel = Rel::LE;
  double rhs = 0.0;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

// minimize objective . x  subject to rows, with x_j >= 0 unless nonneg[j] is
// false (then x_j is free).  nonneg may be empty, meaning all nonnegative.
struct LinearProgram {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<LinearConstraint> rows;
  std::vector<bool> nonneg;
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
};

// Dense two-phase simplex, Bland's rule (lowest eligible index enters; ratio
// ties leave by lowest basic variable index).  Deterministic.
LpResult solve_lp(const LinearProgram& lp);

// minimize (numerator . p + num_const) / (denominator . p + den_const) over
// the polytope given by rows, p >= 0 componentwise.  The denominator must be
// strictly positive on the feasible set.  Solved by the substitution
// y = t p, t >= 0, den . y + den_const t = 1, turning each row
// a . p rel b into a . y - b t rel 0.
struct FractionalProgram {
  int num_vars = 0;
  std::vector<double> numerator;
  double num_const = 0.0;
  std::vector<double> denominator;
  double den_const = 0.0;
  std::vector<LinearConstraint> rows;
};

struct RatioResult {
  double value = 0.0;
  std::vector<double> x;  // the minimizing p
};

RatioResult min_ratio(const FractionalProgram& fp);

}  // namespace credal

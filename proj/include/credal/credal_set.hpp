#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "credal/lp.hpp"
#include "credal/space.hpp"

namespace credal {

// Closed convex sets of mass functions on a finite space, in one of four
// representations.  All four support exact lower/upper expectation with a
// witnessing mass function (a member of the set attaining the bound).

struct LinearRep {
  MassFunction mass;
};

struct VerticesRep {
  std::vector<MassFunction> vertices;
};

// Reachable probability intervals [lower_i, upper_i] per element.
struct IntervalsRep {
  std::vector<double> lower;
  std::vector<double> upper;
};

// Additional linear constraints on the mass vector; the simplex constraints
// (p >= 0, sum p = 1) are always implicit.
struct PolytopeRep {
  std::vector<LinearConstraint> constraints;
};

// True iff the intervals are proper and reachable:
//   sum lower <= 1 <= sum upper, and for every element z
//   lower(z) + sum_{z' != z} upper(z') >= 1 and
//   upper(z) + sum_{z' != z} lower(z') <= 1.
bool reachability_check(const std::vector<double>& lower,
                        const std::vector<double>& upper, double tol = 1e-12);

struct EvalResult {
  double value;
  MassFunction witness;  // member of the set attaining value
};

class CredalSet {
 public:
  using Rep = std::variant<LinearRep, VerticesRep, IntervalsRep, PolytopeRep>;

  CredalSet(SpacePtr space, Rep rep);  // validates the representation

  static CredalSet linear(MassFunction mass);
  static CredalSet vertices(std::vector<MassFunction> vertices);
  static CredalSet intervals(SpacePtr space, std::vector<double> lower,
                             std::vector<double> upper);
  static CredalSet polytope(SpacePtr space,
                            std::vector<LinearConstraint> constraints);
  // All mass functions supported by the given elements (all of the space if
  // empty).  Vertex representation: one degenerate mass per element.
  static CredalSet vacuous(SpacePtr space, std::vector<int> support = {});

  const SpacePtr& space() const { return space_; }
  const Rep& rep() const { return rep_; }
  bool is_linear() const { return std::holds_alternative<LinearRep>(rep_); }

  // Lower/upper expectation of f over the set, with a witness.
  EvalResult eval_lower(const Gamble& f) const;
  EvalResult eval_upper(const Gamble& f) const;
  double lower(const Gamble& f) const { return eval_lower(f).value; }
  double upper(const Gamble& f) const { return eval_upper(f).value; }

  // Lower/upper probability of an element.
  std::pair<double, double> element_bounds(int element) const;

 private:
  SpacePtr space_;
  Rep rep_;
};

}  // namespace credal

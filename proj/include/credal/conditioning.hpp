#pragma once

#include <functional>
#include <vector>

#include "credal/credal_set.hpp"

namespace credal {

// One credal set over a common target space per element of the conditioning
// space.
class ConditionalFamily {
 public:
  ConditionalFamily(SpacePtr given, std::vector<CredalSet> members);

  const SpacePtr& given() const { return given_; }
  const SpacePtr& target() const { return target_; }
  const CredalSet& member(int g) const;
  int size() const { return static_cast<int>(members_.size()); }

  // Same credal set for every conditioning element.
  static ConditionalFamily constant(SpacePtr given, const CredalSet& cs);

 private:
  SpacePtr given_;
  SpacePtr target_;
  std::vector<CredalSet> members_;
};

// A coherent lower prevision on a product space, either a credal set given
// directly or the marginal extension of a marginal with one or two layers of
// conditionals.  Nested forms are evaluated lazily, inner layer first; no
// joint credal set is ever materialized.
class JointLowerPrevision {
 public:
  // cs lives on product_space(factors); factors defaults to {cs.space()}.
  static JointLowerPrevision flat(CredalSet cs,
                                  std::vector<SpacePtr> factors = {});

  // Joint over (A, B) with P(h) = marg_A( a -> cond_BA[a]( h(a, .) ) ).
  static JointLowerPrevision marginal_extension2(CredalSet marginal,
                                                 ConditionalFamily cond);

  // Joint over (A, B, C) with the inner layer conditioned on (A, B):
  // P(h) = marg_A( a -> cond_BA[a]( b -> cond_CAB[(a,b)]( h(a,b,.) ) ) ).
  static JointLowerPrevision marginal_extension3(CredalSet marginal,
                                                 ConditionalFamily cond_ba,
                                                 ConditionalFamily cond_cab);

  const SpacePtr& space() const { return space_; }
  const std::vector<SpacePtr>& factors() const { return factors_; }

  EvalResult eval_lower(const Gamble& h) const;
  double lower(const Gamble& h) const { return eval_lower(h).value; }
  double upper(const Gamble& h) const;

 private:
  JointLowerPrevision() = default;

  std::vector<SpacePtr> factors_;
  SpacePtr space_;
  std::vector<CredalSet> sets_;          // flat: [0] is the joint set;
                                          // nested: [0] is the marginal
  std::vector<ConditionalFamily> conds_;  // nested layers, outer first
};

// Convenience: marginal_extension2/3 as free functions.
JointLowerPrevision marginal_extension2(CredalSet marginal,
                                        ConditionalFamily cond);
JointLowerPrevision marginal_extension3(CredalSet marginal,
                                        ConditionalFamily cond_ba,
                                        ConditionalFamily cond_cab);

// Cylinder extensions between a space and a product containing it.
Gamble cylinder_first(const Gamble& f, const SpacePtr& second);   // h(a,b)=f(a)
Gamble cylinder_second(const Gamble& f, const SpacePtr& first);   // h(a,b)=f(b)

// Generalized Bayes rule: the unique mu with P( I_{A x {b}} (h - mu) ) = 0.
// joint must have exactly two factors; h lives on the product; b indexes the
// second factor.  Requires strictly positive lower probability of A x {b};
// throws precondition_error otherwise (use the regular or natural extension
// for zero-probability observations).
double gbr_conditional(const JointLowerPrevision& joint, int b,
                       const Gamble& h);

// Greatest root of the lower envelope of finitely many non-increasing
// piecewise-affine functions, each given by its values at the breakpoints
// (affine in between, constant extension outside is not assumed: the search
// is confined to the breakpoint span).  Returns min over members of that
// member's greatest root; a member still positive at the last breakpoint
// contributes the last breakpoint.  Throws precondition_error if some member
// is already negative at the first breakpoint ("g everywhere negative").
double greatest_root(const std::vector<std::vector<double>>& member_values,
                     const std::vector<double>& breakpoints);

// Internal engine shared by GBR and the observation updates: supporting-line
// (Newton) descent from the right for a concave piecewise-affine
// non-increasing g.  eval(mu) returns g(mu) and a slope s < 0 valid as a
// subgradient whenever g(mu) < 0.  Finite exact convergence.
double greatest_root_concave(
    const std::function<std::pair<double, double>(double)>& eval,
    double start, double scale);

}  // namespace credal

#include "credal/conditioning.hpp"

#include <algorithm>
#include <cmath>

namespace credal {

ConditionalFamily::ConditionalFamily(SpacePtr given,
                                     std::vector<CredalSet> members)
    : given_(std::move(given)), members_(std::move(members)) {
  if (!given_) throw validation_error("conditional family: null space");
  if (static_cast<int>(members_.size()) != given_->size())
    throw validation_error("conditional family on '" + given_->name() +
                           "': need one member per conditioning element");
  target_ = members_.front().space();
  for (const auto& m : members_)
    require_same_space(target_, m.space(), "conditional family");
}

const CredalSet& ConditionalFamily::member(int g) const {
  if (g < 0 || g >= size())
    throw validation_error("conditional family: index out of range");
  return members_[g];
}

ConditionalFamily ConditionalFamily::constant(SpacePtr given,
                                              const CredalSet& cs) {
  std::vector<CredalSet> members(given->size(), cs);
  return ConditionalFamily(std::move(given), std::move(members));
}

JointLowerPrevision JointLowerPrevision::flat(CredalSet cs,
                                              std::vector<SpacePtr> factors) {
  JointLowerPrevision j;
  if (factors.empty()) factors = {cs.space()};
  j.factors_ = std::move(factors);
  j.space_ = j.factors_.size() == 1 ? j.factors_[0] : product_space(j.factors_);
  require_same_space(j.space_, cs.space(), "joint (flat)");
  j.space_ = cs.space();
  j.sets_.push_back(std::move(cs));
  return j;
}

JointLowerPrevision JointLowerPrevision::marginal_extension2(
    CredalSet marginal, ConditionalFamily cond) {
  require_same_space(marginal.space(), cond.given(), "marginal_extension2");
  JointLowerPrevision j;
  j.factors_ = {marginal.space(), cond.target()};
  j.space_ = product_space(j.factors_);
  j.sets_.push_back(std::move(marginal));
  j.conds_.push_back(std::move(cond));
  return j;
}

JointLowerPrevision JointLowerPrevision::marginal_extension3(
    CredalSet marginal, ConditionalFamily cond_ba,
    ConditionalFamily cond_cab) {
  require_same_space(marginal.space(), cond_ba.given(), "marginal_extension3");
  SpacePtr ab = product_space(marginal.space(), cond_ba.target());
  require_same_space(ab, cond_cab.given(),
                     "marginal_extension3 (inner conditioning space)");
  JointLowerPrevision j;
  j.factors_ = {marginal.space(), cond_ba.target(), cond_cab.target()};
  j.space_ = product_space(j.factors_);
  j.sets_.push_back(std::move(marginal));
  j.conds_.push_back(std::move(cond_ba));
  j.conds_.push_back(std::move(cond_cab));
  return j;
}

EvalResult JointLowerPrevision::eval_lower(const Gamble& h) const {
  require_same_space(space_, h.space(), "joint eval");
  if (conds_.empty()) return sets_[0].eval_lower(h);

  const int na = factors_[0]->size();
  if (conds_.size() == 1) {
    const int nb = factors_[1]->size();
    std::vector<double> outer(na);
    std::vector<MassFunction> inner_w;
    inner_w.reserve(na);
    for (int a = 0; a < na; ++a) {
      std::vector<double> slice(nb);
      for (int b = 0; b < nb; ++b) slice[b] = h[a * nb + b];
      EvalResult r =
          conds_[0].member(a).eval_lower(Gamble(factors_[1], slice));
      outer[a] = r.value;
      inner_w.push_back(std::move(r.witness));
    }
    EvalResult m = sets_[0].eval_lower(Gamble(factors_[0], outer));
    std::vector<double> w(na * nb);
    for (int a = 0; a < na; ++a)
      for (int b = 0; b < nb; ++b) w[a * nb + b] = m.witness[a] * inner_w[a][b];
    return {m.value, MassFunction(space_, std::move(w), 1e-9)};
  }

  // Three-level: innermost layer first.
  const int nb = factors_[1]->size();
  const int nc = factors_[2]->size();
  std::vector<double> mid_vals(na * nb);
  std::vector<MassFunction> inner_w;
  inner_w.reserve(na * nb);
  for (int a = 0; a < na; ++a) {
    for (int b = 0; b < nb; ++b) {
      std::vector<double> slice(nc);
      for (int c = 0; c < nc; ++c) slice[c] = h[(a * nb + b) * nc + c];
      EvalResult r =
          conds_[1].member(a * nb + b).eval_lower(Gamble(factors_[2], slice));
      mid_vals[a * nb + b] = r.value;
      inner_w.push_back(std::move(r.witness));
    }
  }
  std::vector<double> outer(na);
  std::vector<MassFunction> mid_w;
  mid_w.reserve(na);
  for (int a = 0; a < na; ++a) {
    std::vector<double> slice(nb);
    for (int b = 0; b < nb; ++b) slice[b] = mid_vals[a * nb + b];
    EvalResult r = conds_[0].member(a).eval_lower(Gamble(factors_[1], slice));
    outer[a] = r.value;
    mid_w.push_back(std::move(r.witness));
  }
  EvalResult m = sets_[0].eval_lower(Gamble(factors_[0], outer));
  std::vector<double> w(na * nb * nc);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b)
      for (int c = 0; c < nc; ++c)
        w[(a * nb + b) * nc + c] =
            m.witness[a] * mid_w[a][b] * inner_w[a * nb + b][c];
  return {m.value, MassFunction(space_, std::move(w), 1e-9)};
}

double JointLowerPrevision::upper(const Gamble& h) const {
  return -eval_lower(-Gamble(h)).value;
}

JointLowerPrevision marginal_extension2(CredalSet marginal,
                                        ConditionalFamily cond) {
  return JointLowerPrevision::marginal_extension2(std::move(marginal),
                                                  std::move(cond));
}

JointLowerPrevision marginal_extension3(CredalSet marginal,
                                        ConditionalFamily cond_ba,
                                        ConditionalFamily cond_cab) {
  return JointLowerPrevision::marginal_extension3(
      std::move(marginal), std::move(cond_ba), std::move(cond_cab));
}

Gamble cylinder_first(const Gamble& f, const SpacePtr& second) {
  SpacePtr prod = product_space(f.space(), second);
  const int nb = second->size();
  std::vector<double> v(f.size() * nb);
  for (int a = 0; a < f.size(); ++a)
    for (int b = 0; b < nb; ++b) v[a * nb + b] = f[a];
  return Gamble(prod, std::move(v));
}

Gamble cylinder_second(const Gamble& f, const SpacePtr& first) {
  SpacePtr prod = product_space(first, f.space());
  const int nb = f.size();
  std::vector<double> v(first->size() * nb);
  for (int a = 0; a < first->size(); ++a)
    for (int b = 0; b < nb; ++b) v[a * nb + b] = f[b];
  return Gamble(prod, std::move(v));
}

double greatest_root_concave(
    const std::function<std::pair<double, double>(double)>& eval,
    double start, double scale) {
  const double atol = 1e-13 * std::max(1.0, scale);
  double mu = start;
  for (int iter = 0; iter < 256; ++iter) {
    auto [val, slope] = eval(mu);
    if (val >= -atol) return mu;
    if (!(slope < 0.0))
      throw precondition_error(
          "greatest_root: function everywhere negative (no root)");
    double next = mu - val / slope;  // root of the supporting line
    if (!(next < mu)) return mu;     // no representable progress
    mu = next;
  }
  return mu;
}

double greatest_root(const std::vector<std::vector<double>>& member_values,
                     const std::vector<double>& breakpoints) {
  const size_t k = breakpoints.size();
  if (k < 1) throw validation_error("greatest_root: no breakpoints");
  for (size_t i = 1; i < k; ++i)
    if (!(breakpoints[i] > breakpoints[i - 1]))
      throw validation_error("greatest_root: breakpoints not increasing");
  if (member_values.empty())
    throw validation_error("greatest_root: no members");

  double best = breakpoints.back();
  bool have = false;
  for (const auto& vals : member_values) {
    if (vals.size() != k)
      throw validation_error("greatest_root: member arity mismatch");
    double span = 0.0;
    for (double v : vals) span = std::max(span, std::fabs(v));
    for (size_t i = 1; i < k; ++i)
      if (vals[i] > vals[i - 1] + 1e-12 * std::max(1.0, span))
        throw validation_error("greatest_root: member not non-increasing");

    double root;
    if (vals.back() >= 0.0) {
      root = breakpoints.back();
    } else if (vals.front() < 0.0) {
      throw precondition_error(
          "greatest_root: member everywhere negative on the span");
    } else {
      root = breakpoints.front();
      for (size_t i = k; i-- > 1;) {
        if (vals[i - 1] >= 0.0 && vals[i] < 0.0) {
          double das = vals[i - 1] - vals[i];
          root = das <= 0.0 ? breakpoints[i - 1]
                            : breakpoints[i - 1] +
                                  (breakpoints[i] - breakpoints[i - 1]) *
                                      (vals[i - 1] / das);
          break;
        }
      }
    }
    if (!have || root < best) best = root;
    have = true;
  }
  return best;
}

double gbr_conditional(const JointLowerPrevision& joint, int b,
                       const Gamble& h) {
  if (joint.factors().size() != 2)
    throw validation_error("gbr_conditional: joint must have two factors");
  const SpacePtr& A = joint.factors()[0];
  const SpacePtr& B = joint.factors()[1];
  require_same_space(joint.space(), h.space(), "gbr_conditional");
  if (b < 0 || b >= B->size())
    throw validation_error("gbr_conditional: conditioning element out of range");
  const int na = A->size(), nb = B->size();

  std::vector<int> event;
  for (int a = 0; a < na; ++a) event.push_back(a * nb + b);
  double plow = joint.lower(Gamble::indicator(joint.space(), event));
  if (!(plow > 0.0))
    throw precondition_error(
        "gbr_conditional: conditioning event has zero lower probability; "
        "use the regular or natural extension");

  double start = h[event[0]];
  for (int e : event) start = std::max(start, h[e]);

  auto eval = [&](double mu) {
    std::vector<double> v(na * nb, 0.0);
    for (int e : event) v[e] = h[e] - mu;
    EvalResult r = joint.eval_lower(Gamble(joint.space(), v));
    double slope = 0.0;
    for (int e : event) slope -= r.witness[e];
    return std::make_pair(r.value, slope);
  };
  return greatest_root_concave(eval, start, h.sup_norm() + std::fabs(start));
}

}  // namespace credal

#include "credal/credal_set.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace credal {

bool reachability_check(const std::vector<double>& lower,
                        const std::vector<double>& upper, double tol) {
  if (lower.size() != upper.size() || lower.empty()) return false;
  double slo = 0.0, sup = 0.0;
  for (size_t i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i])) return false;
    if (lower[i] < -tol || upper[i] > 1.0 + tol) return false;
    if (lower[i] > upper[i] + tol) return false;
    slo += lower[i];
    sup += upper[i];
  }
  if (slo > 1.0 + tol || sup < 1.0 - tol) return false;
  for (size_t z = 0; z < lower.size(); ++z) {
    // Can element z actually attain its bounds within the simplex?
    if (lower[z] + (sup - upper[z]) < 1.0 - tol) return false;
    if (upper[z] + (slo - lower[z]) > 1.0 + tol) return false;
  }
  return true;
}

namespace {

void validate_rep(const SpacePtr& space, const CredalSet::Rep& rep) {
  const int n = space->size();
  if (const auto* lin = std::get_if<LinearRep>(&rep)) {
    require_same_space(space, lin->mass.space(), "credal set (linear)");
  } else if (const auto* vx = std::get_if<VerticesRep>(&rep)) {
    if (vx->vertices.empty())
      throw validation_error("credal set: no vertices");
    for (const auto& v : vx->vertices)
      require_same_space(space, v.space(), "credal set (vertices)");
  } else if (const auto* iv = std::get_if<IntervalsRep>(&rep)) {
    if (static_cast<int>(iv->lower.size()) != n ||
        static_cast<int>(iv->upper.size()) != n)
      throw validation_error("credal set: interval arity mismatch on '" +
                             space->name() + "'");
    if (!reachability_check(iv->lower, iv->upper))
      throw validation_error("credal set on '" + space->name() +
                             "': intervals not reachable");
  } else if (const auto* po = std::get_if<PolytopeRep>(&rep)) {
    for (const auto& c : po->constraints)
      if (static_cast<int>(c.coeffs.size()) != n)
        throw validation_error("credal set: constraint arity mismatch on '" +
                               space->name() + "'");
    // Nonempty intersection with the simplex?
    LinearProgram lp;
    lp.num_vars = n;
    lp.objective.assign(n, 0.0);
    lp.rows = po->constraints;
    LinearConstraint sum;
    sum.coeffs.assign(n, 1.0);
    sum.rel = Rel::EQ;
    sum.rhs = 1.0;
    lp.rows.push_back(std::move(sum));
    if (solve_lp(lp).status != LpStatus::Optimal)
      throw validation_error("credal set on '" + space->name() +
                             "': empty polytope");
  }
}

// Clamp tiny negative noise out of an LP mass vector so it passes the
// mass-function invariant.
MassFunction mass_from_point(const SpacePtr& space, std::vector<double> p) {
  double sum = 0.0;
  for (double& v : p) {
    if (v < 0.0 && v > -1e-9) v = 0.0;
    sum += v;
  }
  if (sum > 0.0 && std::fabs(sum - 1.0) <= 1e-7)
    for (double& v : p) v /= sum;
  return MassFunction(space, std::move(p), 1e-9);
}

EvalResult eval_lower_intervals(const SpacePtr& space, const IntervalsRep& iv,
                                const Gamble& f) {
  const int n = space->size();
  // Greedy: start every element at its lower bound, then push the remaining
  // mass onto the cheapest elements first.  Exact for reachable intervals
  // (the induced lower probability is 2-monotone).
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return f[a] < f[b]; });
  std::vector<double> p = iv.lower;
  double budget = 1.0;
  for (double l : iv.lower) budget -= l;
  for (int idx : order) {
    if (budget <= 0.0) break;
    double take = std::min(iv.upper[idx] - iv.lower[idx], budget);
    p[idx] += take;
    budget -= take;
  }
  MassFunction w(space, std::move(p), 1e-9);
  return {w.expectation(f), std::move(w)};
}

EvalResult eval_lower_polytope(const SpacePtr& space, const PolytopeRep& po,
                               const Gamble& f) {
  const int n = space->size();
  LinearProgram lp;
  lp.num_vars = n;
  lp.objective = f.values();
  lp.rows = po.constraints;
  LinearConstraint sum;
  sum.coeffs.assign(n, 1.0);
  sum.rel = Rel::EQ;
  sum.rhs = 1.0;
  lp.rows.push_back(std::move(sum));
  LpResult r = solve_lp(lp);
  if (r.status != LpStatus::Optimal)
    throw validation_error("credal set on '" + space->name() +
                           "': empty polytope");
  MassFunction w = mass_from_point(space, r.x);
  return {w.expectation(f), std::move(w)};
}

}  // namespace

CredalSet::CredalSet(SpacePtr space, Rep rep)
    : space_(std::move(space)), rep_(std::move(rep)) {
  if (!space_) throw validation_error("credal set: null space");
  validate_rep(space_, rep_);
}

CredalSet CredalSet::linear(MassFunction mass) {
  SpacePtr sp = mass.space();
  return CredalSet(sp, LinearRep{std::move(mass)});
}

CredalSet CredalSet::vertices(std::vector<MassFunction> vertices) {
  if (vertices.empty()) throw validation_error("credal set: no vertices");
  SpacePtr sp = vertices.front().space();
  return CredalSet(sp, VerticesRep{std::move(vertices)});
}

CredalSet CredalSet::intervals(SpacePtr space, std::vector<double> lower,
                               std::vector<double> upper) {
  return CredalSet(space, IntervalsRep{std::move(lower), std::move(upper)});
}

CredalSet CredalSet::polytope(SpacePtr space,
                              std::vector<LinearConstraint> constraints) {
  return CredalSet(space, PolytopeRep{std::move(constraints)});
}

CredalSet CredalSet::vacuous(SpacePtr space, std::vector<int> support) {
  if (!space) throw validation_error("credal set: null space");
  if (support.empty()) {
    support.resize(space->size());
    std::iota(support.begin(), support.end(), 0);
  }
  std::vector<MassFunction> vs;
  vs.reserve(support.size());
  for (int e : support) vs.push_back(MassFunction::degenerate(space, e));
  return CredalSet(space, VerticesRep{std::move(vs)});
}

EvalResult CredalSet::eval_lower(const Gamble& f) const {
  require_same_space(space_, f.space(), "eval_lower");
  if (const auto* lin = std::get_if<LinearRep>(&rep_)) {
    return {lin->mass.expectation(f), lin->mass};
  }
  if (const auto* vx = std::get_if<VerticesRep>(&rep_)) {
    int best = 0;
    double bv = vx->vertices[0].expectation(f);
    for (int i = 1; i < static_cast<int>(vx->vertices.size()); ++i) {
      double v = vx->vertices[i].expectation(f);
      if (v < bv) {
        bv = v;
        best = i;
      }
    }
    return {bv, vx->vertices[best]};
  }
  if (const auto* iv = std::get_if<IntervalsRep>(&rep_))
    return eval_lower_intervals(space_, *iv, f);
  return eval_lower_polytope(space_, std::get<PolytopeRep>(rep_), f);
}

EvalResult CredalSet::eval_upper(const Gamble& f) const {
  EvalResult r = eval_lower(-Gamble(f));
  return {-r.value, std::move(r.witness)};
}

std::pair<double, double> CredalSet::element_bounds(int element) const {
  Gamble ind = Gamble::indicator(space_, {element});
  return {eval_lower(ind).value, eval_upper(ind).value};
}

}  // namespace credal

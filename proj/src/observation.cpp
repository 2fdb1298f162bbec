#include "credal/observation.hpp"

#include <algorithm>
#include <cmath>

namespace credal {

MultiValuedMap::MultiValuedMap(SpacePtr states, SpacePtr observations,
                               std::vector<std::vector<int>> images)
    : states_(std::move(states)),
      observations_(std::move(observations)),
      images_(std::move(images)) {
  if (!states_ || !observations_)
    throw validation_error("multi-valued map: null space");
  if (static_cast<int>(images_.size()) != states_->size())
    throw validation_error("multi-valued map: need one image per state");
  std::vector<bool> seen(observations_->size(), false);
  for (int x = 0; x < states_->size(); ++x) {
    auto& im = images_[x];
    if (im.empty())
      throw validation_error("multi-valued map: empty image for state '" +
                             states_->label(x) + "'");
    std::sort(im.begin(), im.end());
    im.erase(std::unique(im.begin(), im.end()), im.end());
    for (int o : im) {
      if (o < 0 || o >= observations_->size())
        throw validation_error("multi-valued map: observation out of range");
      seen[o] = true;
    }
  }
  for (int o = 0; o < observations_->size(); ++o)
    if (!seen[o])
      throw validation_error("multi-valued map: observation '" +
                             observations_->label(o) +
                             "' cannot be produced by any state");
}

const std::vector<int>& MultiValuedMap::image(int x) const {
  if (x < 0 || x >= states_->size())
    throw validation_error("multi-valued map: state out of range");
  return images_[x];
}

std::vector<int> MultiValuedMap::compatible(int o) const {
  if (o < 0 || o >= observations_->size())
    throw validation_error("multi-valued map: observation out of range");
  std::vector<int> out;
  for (int x = 0; x < states_->size(); ++x)
    if (std::binary_search(images_[x].begin(), images_[x].end(), o))
      out.push_back(x);
  return out;
}

std::vector<int> MultiValuedMap::forcing(int o) const {
  if (o < 0 || o >= observations_->size())
    throw validation_error("multi-valued map: observation out of range");
  std::vector<int> out;
  for (int x = 0; x < states_->size(); ++x)
    if (images_[x].size() == 1 && images_[x][0] == o) out.push_back(x);
  return out;
}

std::vector<int> compatible_states(const MultiValuedMap& mvm, int o) {
  return mvm.compatible(o);
}

std::vector<int> forcing_states(const MultiValuedMap& mvm, int o) {
  return mvm.forcing(o);
}

namespace {

// Shared Newton descent for the regular/natural extension root: the gamble
//   x in {o}+            : f(x) - mu
//   x in {o}* \ {o}+     : min{f(x) - mu, 0}
//   elsewhere            : 0
// evaluated under the prior, as a function of mu.
double observation_root(const CredalSet& prior, const Gamble& f,
                        const std::vector<int>& compat,
                        const std::vector<int>& forcing) {
  const SpacePtr& X = prior.space();
  std::vector<bool> is_forcing(X->size(), false);
  for (int x : forcing) is_forcing[x] = true;

  double start = f[compat.front()];
  for (int x : compat) start = std::max(start, f[x]);

  auto eval = [&](double mu) {
    std::vector<double> v(X->size(), 0.0);
    for (int x : compat) {
      double d = f[x] - mu;
      v[x] = is_forcing[x] ? d : std::min(d, 0.0);
    }
    EvalResult r = prior.eval_lower(Gamble(X, v));
    double slope = 0.0;
    for (int x : compat)
      if (is_forcing[x] || f[x] <= mu) slope -= r.witness[x];
    return std::make_pair(r.value, slope);
  };
  return greatest_root_concave(eval, start, f.sup_norm() + std::fabs(start));
}

}  // namespace

ObsUpdate regular_extension_obs(const CredalSet& prior,
                                const MultiValuedMap& mvm, int o,
                                const Gamble& f) {
  require_same_space(prior.space(), mvm.states(), "regular_extension_obs");
  require_same_space(prior.space(), f.space(), "regular_extension_obs");
  std::vector<int> compat = mvm.compatible(o);
  double pupper =
      prior.eval_upper(Gamble::indicator(prior.space(), compat)).value;
  if (!(pupper > 0.0)) return {f.min_value(), true};
  return {observation_root(prior, f, compat, mvm.forcing(o)), false};
}

ObsUpdate natural_extension_obs(const CredalSet& prior,
                                const MultiValuedMap& mvm, int o,
                                const Gamble& f) {
  require_same_space(prior.space(), mvm.states(), "natural_extension_obs");
  require_same_space(prior.space(), f.space(), "natural_extension_obs");
  std::vector<int> forcing = mvm.forcing(o);
  double plower =
      prior.eval_lower(Gamble::indicator(prior.space(), forcing)).value;
  if (!(plower > 0.0)) return {f.min_value(), true};
  return {observation_root(prior, f, mvm.compatible(o), forcing), false};
}

double naive_update(const MassFunction& prior, const MultiValuedMap& mvm,
                    int o, const Gamble& f) {
  require_same_space(prior.space(), mvm.states(), "naive_update");
  require_same_space(prior.space(), f.space(), "naive_update");
  std::vector<int> compat = mvm.compatible(o);
  double pb = prior.mass_of(compat);
  if (!(pb > 0.0))
    throw precondition_error(
        "naive_update: compatible set has zero probability");
  double num = 0.0;
  for (int x : compat) num += prior[x] * f[x];
  return num / pb;
}

double car_posterior(const CredalSet& prior, const MultiValuedMap& mvm, int o,
                     const Gamble& f) {
  require_same_space(prior.space(), mvm.states(), "car_posterior");
  require_same_space(prior.space(), f.space(), "car_posterior");
  std::vector<int> compat = mvm.compatible(o);
  Gamble ind = Gamble::indicator(prior.space(), compat);
  double plower = prior.eval_lower(ind).value;
  if (!(plower > 0.0))
    throw precondition_error(
        "car_posterior: compatible set needs positive lower probability");

  // Under coarsening at random the posterior is the lower envelope of the
  // naively-updated members.  Linear and vertex priors: Bayes per vertex.
  // Interval and polytope priors: minimize the linear-fractional objective
  // p(f 1_{{o}*}) / p({o}*) directly.
  const SpacePtr& X = prior.space();
  if (const auto* lin = std::get_if<LinearRep>(&prior.rep()))
    return naive_update(lin->mass, mvm, o, f);
  if (const auto* vx = std::get_if<VerticesRep>(&prior.rep())) {
    double best = 0.0;
    bool have = false;
    for (const auto& v : vx->vertices) {
      if (!(v.mass_of(compat) > 0.0)) continue;
      double val = naive_update(v, mvm, o, f);
      if (!have || val < best) best = val;
      have = true;
    }
    if (!have)
      throw precondition_error("car_posterior: no vertex gives the "
                               "compatible set positive probability");
    return best;
  }

  FractionalProgram fp;
  fp.num_vars = X->size();
  fp.numerator.assign(X->size(), 0.0);
  fp.denominator.assign(X->size(), 0.0);
  for (int x : compat) {
    fp.numerator[x] = f[x];
    fp.denominator[x] = 1.0;
  }
  LinearConstraint sum;
  sum.coeffs.assign(X->size(), 1.0);
  sum.rel = Rel::EQ;
  sum.rhs = 1.0;
  if (const auto* iv = std::get_if<IntervalsRep>(&prior.rep())) {
    for (int x = 0; x < X->size(); ++x) {
      LinearConstraint lo, hi;
      lo.coeffs.assign(X->size(), 0.0);
      lo.coeffs[x] = 1.0;
      lo.rel = Rel::GE;
      lo.rhs = iv->lower[x];
      hi = lo;
      hi.rel = Rel::LE;
      hi.rhs = iv->upper[x];
      fp.rows.push_back(std::move(lo));
      fp.rows.push_back(std::move(hi));
    }
  } else {
    fp.rows = std::get<PolytopeRep>(prior.rep()).constraints;
  }
  fp.rows.push_back(std::move(sum));
  return min_ratio(fp).value;
}

bool naive_ok(const MultiValuedMap& mvm, int o) {
  return mvm.forcing(o) == mvm.compatible(o);
}

double vacuous_posterior(const CredalSet& prior, const MultiValuedMap& mvm,
                         int o, const Gamble& f) {
  require_same_space(prior.space(), mvm.states(), "vacuous_posterior");
  require_same_space(prior.space(), f.space(), "vacuous_posterior");
  if (!mvm.forcing(o).empty())
    throw precondition_error(
        "vacuous_posterior: some state forces this observation");
  std::vector<int> compat = mvm.compatible(o);
  double best = f[compat.front()];
  for (int x : compat) {
    if (!(prior.eval_upper(Gamble::indicator(prior.space(), {x})).value > 0.0))
      throw precondition_error("vacuous_posterior: compatible state '" +
                               prior.space()->label(x) +
                               "' has zero upper probability");
    best = std::min(best, f[x]);
  }
  return best;
}

MissingnessPattern::MissingnessPattern(std::vector<SpacePtr> attributes,
                                       std::vector<std::optional<int>> observed)
    : attributes_(std::move(attributes)), observed_(std::move(observed)) {
  if (attributes_.empty())
    throw validation_error("missingness pattern: no attributes");
  if (observed_.size() != attributes_.size())
    throw validation_error(
        "missingness pattern: one observation slot per attribute");
  for (size_t k = 0; k < attributes_.size(); ++k) {
    if (!attributes_[k])
      throw validation_error("missingness pattern: null attribute space");
    if (observed_[k] &&
        (*observed_[k] < 0 || *observed_[k] >= attributes_[k]->size()))
      throw validation_error("missingness pattern: observed value out of "
                             "range for attribute '" +
                             attributes_[k]->name() + "'");
  }
  attribute_space_ = attributes_.size() == 1 ? attributes_[0]
                                             : product_space(attributes_);
}

MissingnessPattern MissingnessPattern::from_labels(
    std::vector<SpacePtr> attributes,
    const std::vector<std::optional<std::string>>& observed) {
  std::vector<std::optional<int>> idx(observed.size());
  for (size_t k = 0; k < observed.size(); ++k)
    if (observed[k]) idx[k] = attributes.at(k)->index(*observed[k]);
  return MissingnessPattern(std::move(attributes), std::move(idx));
}

std::vector<int> MissingnessPattern::missing_indices() const {
  std::vector<int> out;
  for (int k = 0; k < num_attributes(); ++k)
    if (is_missing(k)) out.push_back(k);
  return out;
}

long long MissingnessPattern::completion_count() const {
  long long n = 1;
  for (int k = 0; k < num_attributes(); ++k) {
    if (!is_missing(k)) continue;
    n *= attributes_[k]->size();
    if (n > (1LL << 40))
      throw validation_error("missingness pattern: completion count overflow");
  }
  return n;
}

void MissingnessPattern::for_each_completion(
    const std::function<void(const std::vector<int>&)>& fn) const {
  std::vector<int> full(num_attributes(), 0);
  for (int k = 0; k < num_attributes(); ++k)
    if (!is_missing(k)) full[k] = *observed_[k];
  std::vector<int> missing = missing_indices();
  std::vector<int> radix;
  radix.reserve(missing.size());
  for (int k : missing) radix.push_back(attributes_[k]->size());
  long long total = completion_count();
  for (long long flat = 0; flat < total; ++flat) {
    if (!missing.empty()) {
      std::vector<int> d = unflatten(static_cast<int>(flat), radix);
      for (size_t j = 0; j < missing.size(); ++j) full[missing[j]] = d[j];
    }
    fn(full);
  }
}

double cur_posterior(const ConditionalFamily& class_given_attrs,
                     const MissingnessPattern& pattern, const Gamble& f,
                     long long cap) {
  require_same_space(class_given_attrs.given(), pattern.attribute_space(),
                     "cur_posterior");
  require_same_space(class_given_attrs.target(), f.space(), "cur_posterior");
  if (pattern.completion_count() > cap)
    throw cap_error("cur_posterior: " +
                    std::to_string(pattern.completion_count()) +
                    " completions exceed cap " + std::to_string(cap));

  std::vector<int> radix;
  for (const auto& sp : pattern.attributes()) radix.push_back(sp->size());
  double best = 0.0;
  bool have = false;
  pattern.for_each_completion([&](const std::vector<int>& full) {
    int flat = flat_index(full, radix);
    double val = class_given_attrs.member(flat).eval_lower(f).value;
    if (!have || val < best) best = val;
    have = true;
  });
  return best;
}

}  // namespace credal

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "credal/conditioning.hpp"

namespace credal {

// An incomplete observation mechanism: for each underlying state x a
// non-empty set of observations Gamma(x) that the mechanism may produce.
// Which one is produced is left entirely unspecified.
class MultiValuedMap {
 public:
  MultiValuedMap(SpacePtr states, SpacePtr observations,
                 std::vector<std::vector<int>> images);

  const SpacePtr& states() const { return states_; }
  const SpacePtr& observations() const { return observations_; }
  const std::vector<int>& image(int x) const;  // Gamma(x), sorted

  // {o}* : states that can produce o.
  std::vector<int> compatible(int o) const;
  // {o}+ : states that can produce nothing but o.
  std::vector<int> forcing(int o) const;

 private:
  SpacePtr states_;
  SpacePtr observations_;
  std::vector<std::vector<int>> images_;
};

std::vector<int> compatible_states(const MultiValuedMap& mvm, int o);
std::vector<int> forcing_states(const MultiValuedMap& mvm, int o);

// Result of updating on an observation: the zero-probability branch returns
// the vacuous value over the whole state space, flagged, never an error.
struct ObsUpdate {
  double value = 0.0;
  bool vacuous = false;
};

// Regular extension: when the compatible set {o}* has positive upper
// probability, the greatest mu with
//   lower( I_{{o}+} (f - mu) + I_{{o}* \ {o}+} min{f - mu, 0} ) >= 0;
// otherwise vacuous (min of f over all states).
ObsUpdate regular_extension_obs(const CredalSet& prior,
                                const MultiValuedMap& mvm, int o,
                                const Gamble& f);

// Natural extension: vacuous unless the forcing set {o}+ has positive lower
// probability, in which case it coincides with the regular extension.
ObsUpdate natural_extension_obs(const CredalSet& prior,
                                const MultiValuedMap& mvm, int o,
                                const Gamble& f);

// Naive updating of a precise prior: condition on the compatible set,
// p(f 1_{{o}*}) / p({o}*).  Requires p({o}*) > 0.
double naive_update(const MassFunction& prior, const MultiValuedMap& mvm,
                    int o, const Gamble& f);

// Updating under the coarsening-at-random assumption: conditioning on {o}*
// member by member, then taking the lower envelope.  Requires strictly
// positive lower probability of {o}*.
double car_posterior(const CredalSet& prior, const MultiValuedMap& mvm, int o,
                     const Gamble& f);

// Naive updating is justified for this observation exactly when every
// compatible state is forcing: {o}+ == {o}*.
bool naive_ok(const MultiValuedMap& mvm, int o);

// When {o}+ is empty and every compatible state has positive upper
// probability, the regular extension collapses to the vacuous value over
// {o}*: min of f there.  Throws precondition_error when either condition
// fails (callers fall back to regular_extension_obs).
double vacuous_posterior(const CredalSet& prior, const MultiValuedMap& mvm,
                         int o, const Gamble& f);

// Attribute vector with some coordinates unobserved.
class MissingnessPattern {
 public:
  MissingnessPattern(std::vector<SpacePtr> attributes,
                     std::vector<std::optional<int>> observed);
  static MissingnessPattern from_labels(
      std::vector<SpacePtr> attributes,
      const std::vector<std::optional<std::string>>& observed);

  int num_attributes() const { return static_cast<int>(attributes_.size()); }
  const std::vector<SpacePtr>& attributes() const { return attributes_; }
  const std::vector<std::optional<int>>& observed() const { return observed_; }
  bool is_missing(int k) const { return !observed_[k].has_value(); }
  std::vector<int> missing_indices() const;
  long long completion_count() const;
  const SpacePtr& attribute_space() const { return attribute_space_; }

  // Calls fn once per completion with the full attribute assignment
  // (observed coordinates fixed, missing ones enumerated, the last missing
  // attribute varying fastest).
  void for_each_completion(
      const std::function<void(const std::vector<int>&)>& fn) const;

 private:
  std::vector<SpacePtr> attributes_;
  std::vector<std::optional<int>> observed_;
  SpacePtr attribute_space_;
};

// Conservative updating rule: the lower posterior expectation of f under an
// unknown (possibly malicious) missingness process is the minimum over all
// completions r of the conditional lower expectation given (e, r).
// class_given_attrs maps every full attribute assignment (flat index in
// pattern.attribute_space()) to a credal set over the class space; f is a
// gamble on that class space.  The caller guarantees every completed
// attribute vector has positive upper probability.
double cur_posterior(const ConditionalFamily& class_given_attrs,
                     const MissingnessPattern& pattern, const Gamble& f,
                     long long cap = 1LL << 20);

}  // namespace credal

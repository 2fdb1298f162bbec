#pragma once

#include "credal/bayesnet.hpp"
#include "credal/credalnet.hpp"
#include "credal/observation.hpp"

namespace credal {

// Exact reference implementations by exhaustive enumeration.  They never
// sample: when an enumeration would exceed `cap`, they throw cap_error.

// min over completions r of the unobserved non-class nodes of
// p0(c_num, e, r) / p0(c_den, e, r).
double brute_min_ratio(const BayesNet& net, int class_node, int c_num,
                       int c_den, const Evidence& evidence,
                       long long cap = 1LL << 16);

// Same minimum, additionally over every extreme point of the strong
// extension: each row of each node independently set to one of its vertices.
// Rows must be in linear or vertex representation; interval rows are
// expanded into their extreme points first.
double brute_credal_min_ratio(const CredalNet& net, int class_node, int c_num,
                              int c_den, const Evidence& evidence,
                              long long cap = 1LL << 16);

// inf over prior extreme points p and selections s (one observation from
// Gamma(x) per state) with p(s^{-1}(o)) > 0 of the conditional expectation
// of f given s^{-1}(o).  Returns min f over all states when no pair gives
// the event positive probability.  The prior must be in linear or vertex
// representation.
double brute_regular_extension(const CredalSet& prior,
                               const MultiValuedMap& mvm, int o,
                               const Gamble& f, long long cap = 1LL << 16);

// The observation mechanism of an attribute vector with possibly missing
// coordinates, materialized: the observation space is the product of the
// per-attribute spaces extended with a '*' element, and Gamma(x) holds every
// observation whose coordinates each show either the true value or '*'.
// Intended for small test fixtures.
MultiValuedMap materialize_missing_data_map(const MissingnessPattern& pattern,
                                            long long cap = 1LL << 16);

// Flat observation index in the materialized map for the pattern's own
// observation (its observed coordinates, '*' on the missing ones).
int pattern_observation_index(const MissingnessPattern& pattern);

// All extreme points of an interval credal set (small spaces only).
std::vector<MassFunction> interval_extreme_points(const CredalSet& cs);

}  // namespace credal

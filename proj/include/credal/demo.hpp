#pragma once

#include <string>

#include "credal/bayesnet.hpp"
#include "credal/observation.hpp"

namespace credal {

// The eight-node chest-clinic network (binary nodes V, S, T, C, H, L, D...)
// used throughout the tests and the demo command.
BayesNet build_asia();

// Three doors, a car behind one of them, uniform prior on the position.
// The player holds door 1; the host opens door 2 or 3, never the player's
// door, never the car's.  When the car is behind door 1 the host's choice
// is unspecified: Gamma(1) = {2, 3}, Gamma(2) = {3}, Gamma(3) = {2}.
struct MontySetup {
  SpacePtr states;        // car position: 1, 2, 3
  SpacePtr observations;  // door opened
  MultiValuedMap map;
  CredalSet prior;  // uniform
};

MontySetup make_monty();

// Variant where the host may also walk away without opening anything
// (observation 0): Gamma(1) = {0, 2, 3}, Gamma(2) = {0, 3},
// Gamma(3) = {0, 2}.
MontySetup make_monty_extended();

// Deterministic demo transcripts for the command line tool.
std::string demo_asia_text();
std::string demo_monty_text();

}  // namespace credal

#pragma once

#include <cstddef>
#include <cstdint>

#include "opacity/document.hpp"

namespace opacity {

struct GeneratorParams {
  std::size_t states = 5;
  std::size_t events = 3;
  double obs_ratio = 0.6;     // probability that an event is observable
  double secret_ratio = 0.3;  // probability that a state is secret
  double density = 0.15;      // probability of each extra (source, event, target) triple
  double initial_ratio = 0.25;  // probability that a state other than x0 is initial
};

/// Throws std::invalid_argument on counts < 1 or ratios outside [0, 1].
void check_params(const GeneratorParams& p);

/// Random automaton whose states are all reachable from x0: a random spanning
/// tree rooted at x0 is laid down first, extra transitions are added on top.
/// States are x0..x{n-1}; observable events are o0, o1, ..., unobservable
/// events u0, u1, .... The same (params, seed) always yields the same document.
AutomatonDocument generate_automaton(const GeneratorParams& params, std::uint64_t seed);

}  // namespace opacity

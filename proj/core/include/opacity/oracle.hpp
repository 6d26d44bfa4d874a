#pragma once

#include <span>
#include <string>

#include "opacity/verdict.hpp"

namespace opacity {

// Direct deciders for the opacity properties. They explore pairs
// (reach, safe) of state sets indexed by observation words: `reach` holds the
// endpoints of all runs from the relevant initial states, `safe` the endpoints
// of runs from X_NS (restricted to non-secret runs except for ISO). None of the
// subautomaton, observer or product constructions are used.

bool oracle_scso(const Automaton& g);
bool oracle_siso(const Automaton& g);
bool oracle_inf_sso(const Automaton& g);
bool oracle_cso(const Automaton& g);
bool oracle_iso(const Automaton& g);
bool oracle(const Automaton& g, Property p);

/// Endpoints of runs from `sources` whose projection equals `observation`
/// (including trailing unobservable moves). With `non_secret_only`, runs may
/// not visit secret states.
StateSet states_after(const Automaton& g, const StateSet& sources, std::span<const EventId> observation,
                      bool non_secret_only);

enum class ReplayStatus { confirmed, malformed, rejected };

struct ReplayResult {
  ReplayStatus status = ReplayStatus::confirmed;
  std::string reason;
  explicit operator bool() const { return status == ReplayStatus::confirmed; }
};

/// Checks that a witness is a genuine violation of `p` in `g`: the run is a
/// real run of `g` spelling the witness sequence (otherwise malformed), it has
/// the shape the property quantifies over, and no matching non-secret run (any
/// run, for ISO; a non-secret current state, for CSO) exists for its
/// observation (otherwise rejected).
ReplayResult replay_witness(const Automaton& g, const Witness& w, Property p);

}  // namespace opacity

#pragma once

#include <functional>

#include "opacity/constructions.hpp"
#include "opacity/verdict.hpp"

namespace opacity {

struct CheckOptions {
  bool witness = false;
  /// Explore the whole product instead of stopping at the first offending
  /// state; needed for complete statistics and offending-state lists.
  bool exhaustive = false;
};

/// Strong current-state opacity: no product state (x, Empty) with x secret in
/// Cc(G, Obs(G_dss)).
Verdict check_scso(const Automaton& g, CheckOptions opts = {});
/// Strong initial-state opacity: no product state with Empty right component
/// in Cc(Ĝ, Obs(G_dss)).
Verdict check_siso(const Automaton& g, CheckOptions opts = {});
/// Strong infinite-step opacity: no product state with Empty right component
/// in Cc(G, Obs(G_dss)).
Verdict check_inf_sso(const Automaton& g, CheckOptions opts = {});
/// Standard current-state opacity: no reachable state estimate of G lies
/// entirely inside X_S.
Verdict check_cso(const Automaton& g, CheckOptions opts = {});
/// Standard initial-state opacity: Cc(Ĝ, Obs(G')) where G' is the part of G
/// reachable from X_NS with secret states kept; no Empty right component.
Verdict check_iso(const Automaton& g, CheckOptions opts = {});

Verdict check(const Automaton& g, Property p, CheckOptions opts = {});

using CCPredicate = std::function<bool(const CCAutomaton&, CCStateId)>;

/// Shortest path (BFS, ties by event order) from an initial product state to a
/// state satisfying `bad`. The witness is expressed in the index space of
/// cc.left(). Throws std::logic_error when no such state is reachable.
Witness extract_witness(const CCAutomaton& cc, const CCPredicate& bad);

/// Re-expresses a witness over `from` in the index space of `to` by name.
Witness translate_witness(const Witness& w, const Automaton& from, const Automaton& to);

}  // namespace opacity

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "opacity/automaton.hpp"

namespace opacity {

/// Non-secret subautomaton: the states reachable from X_NS by runs that never
/// visit a secret state, with initial set X_NS and the alphabet shrunk to the
/// events that still label a transition.
Automaton build_gdss(const Automaton& g);

/// Initial-secret subautomaton: the part of `g` reachable from X0 ∩ X_S
/// (secret or not), with initial set X0 ∩ X_S.
Automaton build_ghat(const Automaton& g);

/// The part of `g` reachable from X_NS without deleting secret states. Its
/// observer tracks every run from a non-secret initial state, which is what
/// standard initial-state opacity compares against.
Automaton build_ns_initial_part(const Automaton& g);

struct ObserverStateId {
  std::uint32_t index = 0;
  friend auto operator<=>(const ObserverStateId&, const ObserverStateId&) = default;
};

/// Powerset observer over nonempty subsets of the source automaton's states.
/// Only the part accessible from the initial estimate is stored; states are
/// numbered in BFS discovery order.
class ObserverAutomaton {
 public:
  const Automaton& source() const { return source_; }
  std::size_t num_states() const { return subsets_.size(); }
  std::size_t num_transitions() const { return num_transitions_; }

  /// Absent when the unobservable reach of the source's initial states is empty.
  std::optional<ObserverStateId> initial() const { return initial_; }
  const StateSet& subset(ObserverStateId q) const { return subsets_[q.index]; }
  std::optional<ObserverStateId> find(const StateSet& subset) const;

  /// Observable events of the source automaton, in name order.
  const std::vector<EventId>& alphabet() const { return alphabet_; }
  /// Successor under an event of the source automaton; nullopt when undefined
  /// or when `e` is unobservable.
  std::optional<ObserverStateId> next(ObserverStateId q, EventId e) const;

  std::string label(ObserverStateId q) const { return source_.format_set(subset(q)); }

 private:
  friend ObserverAutomaton build_observer(const Automaton& aut);

  Automaton source_;
  std::vector<StateSet> subsets_;
  std::unordered_map<StateSet, std::uint32_t> index_;
  std::vector<EventId> alphabet_;
  std::vector<std::int32_t> next_;  // num_states × source events, -1 = undefined
  std::size_t num_transitions_ = 0;
  std::optional<ObserverStateId> initial_;
};

ObserverAutomaton build_observer(const Automaton& aut);

/// Product state: a state of the left operand paired with an observer state,
/// or with Empty (nullopt) once the observation left the observer's language.
struct CCState {
  StateId left;
  std::optional<ObserverStateId> right;
  friend bool operator==(const CCState&, const CCState&) = default;
};

struct CCStateHash {
  std::size_t operator()(const CCState& s) const noexcept {
    std::size_t r = s.right ? s.right->index + 1u : 0u;
    return (static_cast<std::size_t>(s.left.index) << 32) ^ r;
  }
};

using CCStateId = std::uint32_t;

struct CCTransition {
  CCStateId from;
  EventId event;  // event of the left operand
  CCStateId to;
};

/// Concurrent composition of a left automaton (the system or its
/// initial-secret part) with an observer.
class CCAutomaton {
 public:
  const Automaton& left() const { return left_; }
  const ObserverAutomaton& observer() const { return observer_; }

  std::size_t num_states() const { return states_.size(); }
  std::size_t num_transitions() const { return transitions_.size(); }
  const CCState& state(CCStateId i) const { return states_[i]; }
  std::optional<CCStateId> find(const CCState& s) const;
  const std::vector<CCStateId>& initial_states() const { return initial_; }
  const std::vector<CCTransition>& transitions() const { return transitions_; }
  /// Outgoing transitions in (event, target) order of the left operand.
  std::span<const CCTransition> out(CCStateId i) const;

  bool left_secret(CCStateId i) const { return left_.is_secret(states_[i].left); }
  bool right_empty(CCStateId i) const { return !states_[i].right.has_value(); }

  /// False when construction stopped at the first state matching a stop
  /// predicate.
  bool complete() const { return complete_; }

  std::string label(CCStateId i) const;       // "(x4,{x1,x5})", "(x5,{})"
  std::string event_label(EventId e) const;   // "(a,a)", "(u,eps)"

 private:
  friend CCAutomaton build_cc(const Automaton& left, const ObserverAutomaton& obs,
                              const std::function<bool(const CCAutomaton&, CCStateId)>& stop_at);

  Automaton left_;
  ObserverAutomaton observer_;
  std::vector<CCState> states_;
  std::unordered_map<CCState, CCStateId, CCStateHash> index_;
  std::vector<CCStateId> initial_;
  std::vector<CCTransition> transitions_;  // grouped by source, BFS order
  std::vector<std::size_t> out_begin_;
  std::vector<std::size_t> out_end_;
  bool complete_ = true;
};

/// Builds the accessible part of the product by BFS (initial states in order,
/// then outgoing transitions in event/target order). With `stop_at`,
/// construction halts as soon as a discovered state satisfies it.
CCAutomaton build_cc(const Automaton& left, const ObserverAutomaton& obs,
                     const std::function<bool(const CCAutomaton&, CCStateId)>& stop_at = {});

}  // namespace opacity

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "opacity/document.hpp"
#include "opacity/state_set.hpp"

namespace opacity {

struct ValidationResult;

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Transition {
  StateId source;
  EventId event;
  StateId target;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

enum class AlphabetPolicy { keep, shrink };

/// Nondeterministic finite automaton with an observable/unobservable event
/// partition and a set of secret states.
///
/// States and events are identified by dense indices assigned in
/// lexicographic order of their names, so iterating by index is iterating by
/// name. Instances are immutable once built.
class Automaton {
 public:
  Automaton() = default;

  std::size_t num_states() const { return state_names_.size(); }
  std::size_t num_events() const { return event_names_.size(); }
  std::size_t num_transitions() const { return transitions_.size(); }

  const std::string& state_name(StateId s) const { return state_names_[s.index]; }
  const std::string& event_name(EventId e) const { return event_names_[e.index]; }
  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<EventId> find_event(std::string_view name) const;

  bool observable(EventId e) const { return observable_[e.index]; }
  bool is_secret(StateId s) const { return secret_mask_[s.index]; }

  const StateSet& initial_states() const { return initial_; }
  const StateSet& secret_states() const { return secret_; }
  /// X0 minus the secret states.
  const StateSet& non_secret_initials() const { return non_secret_initial_; }

  /// All transitions, sorted by (source, event, target).
  std::span<const Transition> transitions() const { return transitions_; }
  /// Outgoing transitions of `s`, sorted by (event, target).
  std::span<const Transition> out(StateId s) const;
  bool has_transition(StateId source, EventId event, StateId target) const;

  std::vector<EventId> observable_events() const;
  std::vector<EventId> unobservable_events() const;

  /// Restriction to `keep`: transitions between kept states survive, secret
  /// marks are inherited and the initial set is replaced by `initial`. With
  /// AlphabetPolicy::shrink only events labelling a surviving transition stay.
  Automaton restrict_to(const StateSet& keep, const StateSet& initial,
                        AlphabetPolicy alphabet = AlphabetPolicy::shrink) const;

  /// States reachable from `sources`; with `avoid_secret` only runs that never
  /// touch a secret state count (secret sources are dropped).
  StateSet reachable_from(const StateSet& sources, bool avoid_secret) const;

  AutomatonDocument to_document() const;

  StateSet states_named(std::span<const std::string> names) const;
  std::string format_set(const StateSet& s) const;  // "{x1,x5}"

 private:
  friend ValidationResult validate(const AutomatonDocument& doc);

  void build_index();

  std::vector<std::string> state_names_;
  std::vector<std::string> event_names_;
  std::vector<bool> observable_;
  std::vector<Transition> transitions_;
  std::vector<std::size_t> out_offsets_;
  StateSet initial_;
  StateSet secret_;
  StateSet non_secret_initial_;
  std::vector<bool> secret_mask_;
};

struct ValidationResult {
  Automaton automaton;
  std::vector<std::string> pruned_states;
  std::vector<std::string> warnings;
};

/// Checks a document against the model's well-formedness rules and prunes
/// states that are not reachable from the initial states. Throws
/// ValidationError on undeclared references, an event declared twice
/// (possibly with conflicting observability) or an empty state set.
ValidationResult validate(const AutomatonDocument& doc);

/// One-step image of `src` under `e`.
StateSet post(const Automaton& aut, const StateSet& src, EventId e);

/// States reachable from `src` through zero or more unobservable transitions.
StateSet unobservable_reach(const Automaton& aut, const StateSet& src);

/// States reachable from `src` under exactly `s`.
StateSet delta_extended(const Automaton& aut, const StateSet& src, std::span<const EventId> s);

/// Natural projection: drops unobservable events.
EventSeq project(const Automaton& aut, std::span<const EventId> s);

struct Step {
  EventId event;
  StateId state;
  friend bool operator==(const Step&, const Step&) = default;
};

struct Run {
  StateId start;
  std::vector<Step> steps;

  StateId last() const { return steps.empty() ? start : steps.back().state; }
  EventSeq events() const;
  friend bool operator==(const Run&, const Run&) = default;
};

/// Every consecutive triple is a transition of `aut`.
bool is_valid_run(const Automaton& aut, const Run& run);
/// No visited state, the start included, is secret.
bool is_non_secret(const Automaton& aut, const Run& run);

/// All runs with at most `max_len` steps starting in an initial state, ordered
/// by length, then event sequence, then start state, then visited states.
std::vector<Run> enumerate_runs(const Automaton& aut, std::size_t max_len);

/// Shortest run from `sources` whose projection equals `observation` and
/// whose last state satisfies `accept`; ties are broken by event then state
/// order. With `avoid_secret` the run may not visit secret states.
std::optional<Run> find_run_with_observation(const Automaton& aut, const StateSet& sources,
                                             std::span<const EventId> observation,
                                             const std::function<bool(StateId)>& accept,
                                             bool avoid_secret = false);

std::string format_sequence(const Automaton& aut, std::span<const EventId> s);  // "a.u.b" or "eps"

}  // namespace opacity

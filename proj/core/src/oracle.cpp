#include "opacity/oracle.hpp"

#include <deque>
#include <functional>
#include <set>
#include <utility>

namespace opacity {
namespace {

// Unobservable closure, optionally confined to non-secret states. Kept local
// so the oracle shares no code path with the observer construction.
StateSet closure(const Automaton& g, StateSet set, bool non_secret_only) {
  std::vector<StateId> frontier;
  std::vector<StateId> members;
  for (StateId s : set) {
    if (non_secret_only && g.is_secret(s)) continue;
    members.push_back(s);
    frontier.push_back(s);
  }
  std::vector<bool> in(g.num_states(), false);
  for (StateId s : members) in[s.index] = true;
  while (!frontier.empty()) {
    StateId s = frontier.back();
    frontier.pop_back();
    for (const Transition& t : g.out(s)) {
      if (g.observable(t.event) || in[t.target.index]) continue;
      if (non_secret_only && g.is_secret(t.target)) continue;
      in[t.target.index] = true;
      members.push_back(t.target);
      frontier.push_back(t.target);
    }
  }
  return StateSet(std::move(members));
}

StateSet observe(const Automaton& g, const StateSet& set, EventId e, bool non_secret_only) {
  std::vector<StateId> image;
  for (StateId s : set)
    for (const Transition& t : g.out(s))
      if (t.event == e) image.push_back(t.target);
  return closure(g, StateSet(std::move(image)), non_secret_only);
}

using Violation = std::function<bool(const StateSet& reach, const StateSet& companion)>;

// Explores every observation word reachable from (reach0, companion0) and
// reports whether some pair violates. `companion` follows the same
// observation from its own sources; an empty companion means no matching run.
bool violation_reachable(const Automaton& g, StateSet reach0, StateSet companion0,
                         bool companion_non_secret, const Violation& violates) {
  if (reach0.empty()) return false;
  std::set<std::pair<StateSet, StateSet>> seen;
  std::deque<std::pair<StateSet, StateSet>> queue;
  seen.emplace(reach0, companion0);
  queue.emplace_back(std::move(reach0), std::move(companion0));
  const std::vector<EventId> observable = g.observable_events();
  while (!queue.empty()) {
    auto [reach, companion] = std::move(queue.front());
    queue.pop_front();
    if (violates(reach, companion)) return true;
    for (EventId e : observable) {
      StateSet next_reach = observe(g, reach, e, false);
      if (next_reach.empty()) continue;
      StateSet next_companion = observe(g, companion, e, companion_non_secret);
      auto key = std::make_pair(next_reach, next_companion);
      if (seen.insert(key).second) queue.push_back(std::move(key));
    }
  }
  return false;
}

StateSet secret_initials(const Automaton& g) {
  return set_intersection(g.initial_states(), g.secret_states());
}

}  // namespace

bool oracle_scso(const Automaton& g) {
  return !violation_reachable(g, closure(g, g.initial_states(), false),
                              closure(g, g.non_secret_initials(), true), true,
                              [&](const StateSet& reach, const StateSet& safe) {
                                return reach.intersects(g.secret_states()) && safe.empty();
                              });
}

bool oracle_siso(const Automaton& g) {
  return !violation_reachable(g, closure(g, secret_initials(g), false),
                              closure(g, g.non_secret_initials(), true), true,
                              [](const StateSet& reach, const StateSet& safe) {
                                return !reach.empty() && safe.empty();
                              });
}

bool oracle_inf_sso(const Automaton& g) {
  return !violation_reachable(g, closure(g, g.initial_states(), false),
                              closure(g, g.non_secret_initials(), true), true,
                              [](const StateSet& reach, const StateSet& safe) {
                                return !reach.empty() && safe.empty();
                              });
}

bool oracle_cso(const Automaton& g) {
  return !violation_reachable(g, closure(g, g.initial_states(), false), StateSet{}, false,
                              [&](const StateSet& reach, const StateSet&) {
                                return !reach.empty() && reach.is_subset_of(g.secret_states());
                              });
}

bool oracle_iso(const Automaton& g) {
  return !violation_reachable(g, closure(g, secret_initials(g), false),
                              closure(g, g.non_secret_initials(), false), false,
                              [](const StateSet& reach, const StateSet& companion) {
                                return !reach.empty() && companion.empty();
                              });
}

bool oracle(const Automaton& g, Property p) {
  switch (p) {
    case Property::cso: return oracle_cso(g);
    case Property::iso: return oracle_iso(g);
    case Property::scso: return oracle_scso(g);
    case Property::siso: return oracle_siso(g);
    case Property::inf_sso: return oracle_inf_sso(g);
  }
  return false;
}

StateSet states_after(const Automaton& g, const StateSet& sources, std::span<const EventId> observation,
                      bool non_secret_only) {
  StateSet cur = closure(g, sources, non_secret_only);
  for (EventId e : observation) {
    if (cur.empty()) break;
    cur = observe(g, cur, e, non_secret_only);
  }
  return cur;
}

ReplayResult replay_witness(const Automaton& g, const Witness& w, Property p) {
  auto malformed = [](std::string why) { return ReplayResult{ReplayStatus::malformed, std::move(why)}; };
  auto rejected = [](std::string why) { return ReplayResult{ReplayStatus::rejected, std::move(why)}; };

  const Run& run = w.run;
  if (run.start.index >= g.num_states()) return malformed("run starts at an unknown state");
  for (const Step& st : run.steps)
    if (st.event.index >= g.num_events() || st.state.index >= g.num_states())
      return malformed("run mentions an unknown state or event");
  for (EventId e : w.event_sequence)
    if (e.index >= g.num_events()) return malformed("event sequence mentions an unknown event");
  if (!g.initial_states().contains(run.start)) return malformed("run does not start in an initial state");
  if (!is_valid_run(g, run)) return malformed("run uses a transition the system does not have");
  if (run.events() != w.event_sequence) return malformed("run does not spell the event sequence");
  if (project(g, w.event_sequence) != w.observation)
    return malformed("observation is not the projection of the event sequence");

  const bool secret_start = g.is_secret(run.start);
  switch (p) {
    case Property::scso:
    case Property::cso:
      if (!g.is_secret(run.last())) return rejected("run does not end in a secret state");
      break;
    case Property::siso:
    case Property::iso:
      if (!secret_start) return rejected("run does not start in a secret initial state");
      break;
    case Property::inf_sso:
      if (is_non_secret(g, run)) return rejected("run never visits a secret state");
      break;
  }

  switch (p) {
    case Property::cso: {
      StateSet estimate = states_after(g, g.initial_states(), w.observation, false);
      if (!estimate.is_subset_of(g.secret_states()))
        return rejected("a non-secret state is consistent with the observation");
      break;
    }
    case Property::iso:
      if (!states_after(g, g.non_secret_initials(), w.observation, false).empty())
        return rejected("a run from a non-secret initial state matches the observation");
      break;
    default:
      if (!states_after(g, g.non_secret_initials(), w.observation, true).empty())
        return rejected("a non-secret run matches the observation");
      break;
  }
  return {};
}

}  // namespace opacity

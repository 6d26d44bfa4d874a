#include "opacity/verifiers.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <stdexcept>

namespace opacity {

std::string_view to_string(Property p) {
  switch (p) {
    case Property::cso: return "cso";
    case Property::iso: return "iso";
    case Property::scso: return "scso";
    case Property::siso: return "siso";
    case Property::inf_sso: return "inf-sso";
  }
  return "?";
}

std::optional<Property> parse_property(std::string_view name) {
  for (Property p : kAllProperties)
    if (to_string(p) == name) return p;
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Verdict product_check(Property property, const Automaton& g, const Automaton& left,
                      const Automaton& tracked, const CCPredicate& bad, CheckOptions opts) {
  const auto start = Clock::now();
  Verdict v;
  v.property = property;

  ObserverAutomaton obs = build_observer(tracked);
  CCAutomaton cc = build_cc(left, obs, opts.exhaustive ? CCPredicate{} : bad);

  for (CCStateId i = 0; i < cc.num_states(); ++i) {
    if (!bad(cc, i)) continue;
    v.holds = false;
    if (!opts.exhaustive) break;
    v.offending_states.push_back(cc.label(i));
  }
  if (!v.holds && opts.witness) v.witness = translate_witness(extract_witness(cc, bad), left, g);

  v.stats.subautomaton_states = tracked.num_states();
  v.stats.observer_states = obs.num_states();
  v.stats.observer_transitions = obs.num_transitions();
  v.stats.product_states = cc.num_states();
  v.stats.product_transitions = cc.num_transitions();
  v.stats.exhaustive = cc.complete();
  v.stats.seconds = seconds_since(start);
  return v;
}

bool leaking_secret(const CCAutomaton& cc, CCStateId i) { return cc.right_empty(i) && cc.left_secret(i); }
bool leaking(const CCAutomaton& cc, CCStateId i) { return cc.right_empty(i); }

}  // namespace

Verdict check_scso(const Automaton& g, CheckOptions opts) {
  return product_check(Property::scso, g, g, build_gdss(g), leaking_secret, opts);
}

Verdict check_siso(const Automaton& g, CheckOptions opts) {
  return product_check(Property::siso, g, build_ghat(g), build_gdss(g), leaking, opts);
}

Verdict check_inf_sso(const Automaton& g, CheckOptions opts) {
  return product_check(Property::inf_sso, g, g, build_gdss(g), leaking, opts);
}

Verdict check_iso(const Automaton& g, CheckOptions opts) {
  return product_check(Property::iso, g, build_ghat(g), build_ns_initial_part(g), leaking, opts);
}

Verdict check_cso(const Automaton& g, CheckOptions opts) {
  const auto start = Clock::now();
  Verdict v;
  v.property = Property::cso;

  ObserverAutomaton est = build_observer(g);
  auto revealing = [&](ObserverStateId q) { return est.subset(q).is_subset_of(g.secret_states()); };

  // Estimates are numbered in BFS order, so the first revealing index is at
  // minimal observation length.
  std::optional<ObserverStateId> first;
  for (std::uint32_t i = 0; i < est.num_states(); ++i) {
    ObserverStateId q{i};
    if (!revealing(q)) continue;
    if (!first) first = q;
    v.offending_states.push_back(est.label(q));
  }
  v.holds = !first.has_value();
  if (!opts.exhaustive) v.offending_states.clear();

  if (first && opts.witness) {
    // BFS over estimates to recover the observation reaching `first`.
    std::vector<std::int64_t> parent(est.num_states(), -2);
    std::vector<EventId> via(est.num_states());
    std::deque<std::uint32_t> queue{est.initial()->index};
    parent[est.initial()->index] = -1;
    while (!queue.empty() && parent[first->index] == -2) {
      std::uint32_t q = queue.front();
      queue.pop_front();
      for (EventId e : est.alphabet()) {
        auto n = est.next(ObserverStateId{q}, e);
        if (!n || parent[n->index] != -2) continue;
        parent[n->index] = q;
        via[n->index] = e;
        queue.push_back(n->index);
      }
    }
    EventSeq observation;
    for (std::int64_t q = first->index; parent[q] >= 0; q = parent[q]) observation.push_back(via[q]);
    std::reverse(observation.begin(), observation.end());

    const StateSet& estimate = est.subset(*first);
    auto run = find_run_with_observation(g, g.initial_states(), observation,
                                         [&](StateId s) { return estimate.contains(s); });
    if (!run) throw std::logic_error("estimate not realized by any run");
    Witness w;
    w.event_sequence = run->events();
    w.observation = std::move(observation);
    w.offending_state = est.label(*first);
    w.run = std::move(*run);
    v.witness = std::move(w);
  }

  v.stats.observer_states = est.num_states();
  v.stats.observer_transitions = est.num_transitions();
  v.stats.exhaustive = true;
  v.stats.seconds = seconds_since(start);
  return v;
}

Verdict check(const Automaton& g, Property p, CheckOptions opts) {
  switch (p) {
    case Property::cso: return check_cso(g, opts);
    case Property::iso: return check_iso(g, opts);
    case Property::scso: return check_scso(g, opts);
    case Property::siso: return check_siso(g, opts);
    case Property::inf_sso: return check_inf_sso(g, opts);
  }
  throw std::invalid_argument("unknown property");
}

Witness extract_witness(const CCAutomaton& cc, const CCPredicate& bad) {
  std::vector<std::int64_t> parent(cc.num_states(), -2);
  std::vector<EventId> via(cc.num_states());
  std::deque<CCStateId> queue;
  std::optional<CCStateId> hit;

  for (CCStateId i : cc.initial_states()) {
    if (parent[i] != -2) continue;
    parent[i] = -1;
    if (bad(cc, i)) {
      hit = i;
      break;
    }
    queue.push_back(i);
  }
  while (!hit && !queue.empty()) {
    CCStateId cur = queue.front();
    queue.pop_front();
    for (const CCTransition& t : cc.out(cur)) {
      if (parent[t.to] != -2) continue;
      parent[t.to] = cur;
      via[t.to] = t.event;
      if (bad(cc, t.to)) {
        hit = t.to;
        break;
      }
      queue.push_back(t.to);
    }
  }
  if (!hit) throw std::logic_error("extract_witness: no offending product state is reachable");

  std::vector<CCStateId> path;
  for (std::int64_t i = *hit; i >= 0; i = parent[i]) path.push_back(static_cast<CCStateId>(i));
  std::reverse(path.begin(), path.end());

  Witness w;
  w.run.start = cc.state(path.front()).left;
  for (std::size_t k = 1; k < path.size(); ++k) w.run.steps.push_back(Step{via[path[k]], cc.state(path[k]).left});
  w.event_sequence = w.run.events();
  w.observation = project(cc.left(), w.event_sequence);
  w.offending_state = cc.label(*hit);
  return w;
}

Witness translate_witness(const Witness& w, const Automaton& from, const Automaton& to) {
  auto state = [&](StateId s) {
    auto id = to.find_state(from.state_name(s));
    if (!id) throw std::logic_error("state '" + from.state_name(s) + "' missing from target automaton");
    return *id;
  };
  auto event = [&](EventId e) {
    auto id = to.find_event(from.event_name(e));
    if (!id) throw std::logic_error("event '" + from.event_name(e) + "' missing from target automaton");
    return *id;
  };
  Witness r;
  r.run.start = state(w.run.start);
  for (const Step& st : w.run.steps) r.run.steps.push_back(Step{event(st.event), state(st.state)});
  for (EventId e : w.event_sequence) r.event_sequence.push_back(event(e));
  for (EventId e : w.observation) r.observation.push_back(event(e));
  r.offending_state = w.offending_state;
  return r;
}

}  // namespace opacity

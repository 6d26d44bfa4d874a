#include "opacity/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace opacity {
namespace {

template <typename Range>
std::size_t index_of(const Range& sorted_names, std::string_view name) {
  auto it = std::lower_bound(sorted_names.begin(), sorted_names.end(), name);
  if (it == sorted_names.end() || *it != name) return sorted_names.size();
  return static_cast<std::size_t>(it - sorted_names.begin());
}

}  // namespace

std::optional<StateId> Automaton::find_state(std::string_view name) const {
  std::size_t i = index_of(state_names_, name);
  if (i == state_names_.size()) return std::nullopt;
  return StateId{static_cast<std::uint32_t>(i)};
}

std::optional<EventId> Automaton::find_event(std::string_view name) const {
  std::size_t i = index_of(event_names_, name);
  if (i == event_names_.size()) return std::nullopt;
  return EventId{static_cast<std::uint32_t>(i)};
}

std::span<const Transition> Automaton::out(StateId s) const {
  return std::span<const Transition>(transitions_)
      .subspan(out_offsets_[s.index], out_offsets_[s.index + 1] - out_offsets_[s.index]);
}

bool Automaton::has_transition(StateId source, EventId event, StateId target) const {
  if (source.index >= num_states()) return false;
  auto edges = out(source);
  return std::binary_search(edges.begin(), edges.end(), Transition{source, event, target});
}

std::vector<EventId> Automaton::observable_events() const {
  std::vector<EventId> r;
  for (std::uint32_t e = 0; e < num_events(); ++e)
    if (observable_[e]) r.push_back(EventId{e});
  return r;
}

std::vector<EventId> Automaton::unobservable_events() const {
  std::vector<EventId> r;
  for (std::uint32_t e = 0; e < num_events(); ++e)
    if (!observable_[e]) r.push_back(EventId{e});
  return r;
}

void Automaton::build_index() {
  std::sort(transitions_.begin(), transitions_.end());
  transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());
  out_offsets_.assign(num_states() + 1, 0);
  for (const Transition& t : transitions_) ++out_offsets_[t.source.index + 1];
  for (std::size_t i = 0; i < num_states(); ++i) out_offsets_[i + 1] += out_offsets_[i];

  secret_mask_.assign(num_states(), false);
  for (StateId s : secret_) secret_mask_[s.index] = true;
  non_secret_initial_ = set_difference(initial_, secret_);
}

Automaton Automaton::restrict_to(const StateSet& keep, const StateSet& initial,
                                 AlphabetPolicy alphabet) const {
  std::vector<std::int64_t> state_map(num_states(), -1);
  Automaton r;
  for (StateId s : keep) {
    state_map[s.index] = static_cast<std::int64_t>(r.state_names_.size());
    r.state_names_.push_back(state_names_[s.index]);
  }
  auto mapped = [&](StateId s) { return StateId{static_cast<std::uint32_t>(state_map[s.index])}; };

  std::vector<bool> used(num_events(), alphabet == AlphabetPolicy::keep);
  for (const Transition& t : transitions_)
    if (state_map[t.source.index] >= 0 && state_map[t.target.index] >= 0) used[t.event.index] = true;

  std::vector<std::int64_t> event_map(num_events(), -1);
  for (std::uint32_t e = 0; e < num_events(); ++e) {
    if (!used[e]) continue;
    event_map[e] = static_cast<std::int64_t>(r.event_names_.size());
    r.event_names_.push_back(event_names_[e]);
    r.observable_.push_back(observable_[e]);
  }

  for (const Transition& t : transitions_) {
    if (state_map[t.source.index] < 0 || state_map[t.target.index] < 0) continue;
    r.transitions_.push_back(Transition{mapped(t.source),
                                        EventId{static_cast<std::uint32_t>(event_map[t.event.index])},
                                        mapped(t.target)});
  }
  std::vector<StateId> init, secret;
  for (StateId s : initial)
    if (state_map[s.index] >= 0) init.push_back(mapped(s));
  for (StateId s : secret_)
    if (state_map[s.index] >= 0) secret.push_back(mapped(s));
  r.initial_ = StateSet(std::move(init));
  r.secret_ = StateSet(std::move(secret));
  r.build_index();
  return r;
}

StateSet Automaton::reachable_from(const StateSet& sources, bool avoid_secret) const {
  std::vector<bool> seen(num_states(), false);
  std::vector<StateId> stack;
  for (StateId s : sources) {
    if (avoid_secret && is_secret(s)) continue;
    seen[s.index] = true;
    stack.push_back(s);
  }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const Transition& t : out(s)) {
      if (seen[t.target.index] || (avoid_secret && is_secret(t.target))) continue;
      seen[t.target.index] = true;
      stack.push_back(t.target);
    }
  }
  std::vector<StateId> r;
  for (std::uint32_t i = 0; i < num_states(); ++i)
    if (seen[i]) r.push_back(StateId{i});
  return StateSet(std::move(r));
}

AutomatonDocument Automaton::to_document() const {
  AutomatonDocument doc;
  doc.states = state_names_;
  for (std::size_t e = 0; e < num_events(); ++e) doc.events.push_back({event_names_[e], observable_[e]});
  for (const Transition& t : transitions_)
    doc.transitions.push_back({state_name(t.source), event_name(t.event), state_name(t.target)});
  for (StateId s : initial_) doc.initial.push_back(state_name(s));
  for (StateId s : secret_) doc.secret.push_back(state_name(s));
  return doc;
}

StateSet Automaton::states_named(std::span<const std::string> names) const {
  std::vector<StateId> ids;
  for (const std::string& n : names)
    if (auto id = find_state(n)) ids.push_back(*id);
  return StateSet(std::move(ids));
}

std::string Automaton::format_set(const StateSet& s) const {
  std::string r = "{";
  bool first = true;
  for (StateId id : s) {
    if (!first) r += ',';
    first = false;
    r += state_name(id);
  }
  return r + "}";
}

ValidationResult validate(const AutomatonDocument& doc) {
  if (doc.format_version != kFormatVersion)
    throw ValidationError("unsupported format version " + std::to_string(doc.format_version));
  if (doc.states.empty()) throw ValidationError("automaton has no states");

  std::vector<std::string> states = doc.states;
  std::sort(states.begin(), states.end());
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!is_valid_name(states[i])) throw ValidationError("invalid state name '" + states[i] + "'");
    if (i > 0 && states[i] == states[i - 1])
      throw ValidationError("state '" + states[i] + "' declared twice");
  }

  std::map<std::string, bool> events;
  for (const EventDecl& e : doc.events) {
    if (!is_valid_name(e.name)) throw ValidationError("invalid event name '" + e.name + "'");
    auto [it, inserted] = events.emplace(e.name, e.observable);
    if (!inserted) {
      if (it->second != e.observable)
        throw ValidationError("event '" + e.name +
                              "' is both observable and unobservable; the alphabet must be partitioned");
      throw ValidationError("event '" + e.name + "' declared twice");
    }
  }

  Automaton a;
  a.state_names_ = states;
  for (const auto& [name, obs] : events) {
    a.event_names_.push_back(name);
    a.observable_.push_back(obs);
  }

  auto state_ref = [&](const std::string& name, const char* what) {
    auto id = a.find_state(name);
    if (!id) throw ValidationError(std::string(what) + " references undeclared state '" + name + "'");
    return *id;
  };

  std::set<Transition> seen;
  for (const TransitionDecl& t : doc.transitions) {
    StateId src = state_ref(t.source, "transition");
    StateId dst = state_ref(t.target, "transition");
    auto ev = a.find_event(t.event);
    if (!ev) throw ValidationError("transition references undeclared event '" + t.event + "'");
    Transition tr{src, *ev, dst};
    if (!seen.insert(tr).second)
      throw ValidationError("duplicate transition " + t.source + " " + t.event + " " + t.target);
    a.transitions_.push_back(tr);
  }

  std::vector<StateId> init, secret;
  for (const std::string& n : doc.initial) init.push_back(state_ref(n, "initial set"));
  for (const std::string& n : doc.secret) secret.push_back(state_ref(n, "secret set"));
  a.initial_ = StateSet(std::move(init));
  a.secret_ = StateSet(std::move(secret));
  if (a.initial_.empty()) throw ValidationError("automaton has no initial states");
  a.build_index();

  ValidationResult result;
  StateSet reachable = a.reachable_from(a.initial_, false);
  if (reachable.size() != a.num_states()) {
    for (std::uint32_t i = 0; i < a.num_states(); ++i)
      if (!reachable.contains(StateId{i})) result.pruned_states.push_back(a.state_names_[i]);
    std::string msg = "pruned states unreachable from the initial states:";
    for (const std::string& n : result.pruned_states) msg += " " + n;
    result.warnings.push_back(msg);
    a = a.restrict_to(reachable, a.initial_, AlphabetPolicy::keep);
  }
  if (a.secret_.size() == a.num_states())
    result.warnings.push_back("every state is secret; no non-secret run exists");
  result.automaton = std::move(a);
  return result;
}

StateSet post(const Automaton& aut, const StateSet& src, EventId e) {
  std::vector<StateId> r;
  for (StateId s : src)
    for (const Transition& t : aut.out(s))
      if (t.event == e) r.push_back(t.target);
  return StateSet(std::move(r));
}

StateSet unobservable_reach(const Automaton& aut, const StateSet& src) {
  std::vector<bool> seen(aut.num_states(), false);
  std::vector<StateId> stack(src.begin(), src.end());
  for (StateId s : src) seen[s.index] = true;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const Transition& t : aut.out(s)) {
      if (aut.observable(t.event) || seen[t.target.index]) continue;
      seen[t.target.index] = true;
      stack.push_back(t.target);
    }
  }
  std::vector<StateId> r;
  for (std::uint32_t i = 0; i < aut.num_states(); ++i)
    if (seen[i]) r.push_back(StateId{i});
  return StateSet(std::move(r));
}

StateSet delta_extended(const Automaton& aut, const StateSet& src, std::span<const EventId> s) {
  StateSet cur = src;
  for (EventId e : s) {
    if (cur.empty()) break;
    cur = post(aut, cur, e);
  }
  return cur;
}

EventSeq project(const Automaton& aut, std::span<const EventId> s) {
  EventSeq r;
  for (EventId e : s)
    if (aut.observable(e)) r.push_back(e);
  return r;
}

EventSeq Run::events() const {
  EventSeq r;
  r.reserve(steps.size());
  for (const Step& st : steps) r.push_back(st.event);
  return r;
}

bool is_valid_run(const Automaton& aut, const Run& run) {
  if (run.start.index >= aut.num_states()) return false;
  StateId cur = run.start;
  for (const Step& st : run.steps) {
    if (st.event.index >= aut.num_events() || !aut.has_transition(cur, st.event, st.state)) return false;
    cur = st.state;
  }
  return true;
}

bool is_non_secret(const Automaton& aut, const Run& run) {
  if (aut.is_secret(run.start)) return false;
  return std::none_of(run.steps.begin(), run.steps.end(),
                      [&](const Step& st) { return aut.is_secret(st.state); });
}

std::vector<Run> enumerate_runs(const Automaton& aut, std::size_t max_len) {
  auto key_less = [](const Run& a, const Run& b) {
    for (std::size_t i = 0; i < a.steps.size(); ++i)
      if (a.steps[i].event != b.steps[i].event) return a.steps[i].event < b.steps[i].event;
    if (a.start != b.start) return a.start < b.start;
    for (std::size_t i = 0; i < a.steps.size(); ++i)
      if (a.steps[i].state != b.steps[i].state) return a.steps[i].state < b.steps[i].state;
    return false;
  };

  std::vector<Run> all;
  std::vector<Run> layer;
  for (StateId s : aut.initial_states()) layer.push_back(Run{s, {}});
  for (std::size_t len = 0;; ++len) {
    std::sort(layer.begin(), layer.end(), key_less);
    all.insert(all.end(), layer.begin(), layer.end());
    if (len == max_len) break;
    std::vector<Run> next;
    for (const Run& r : layer) {
      for (const Transition& t : aut.out(r.last())) {
        Run ext = r;
        ext.steps.push_back(Step{t.event, t.target});
        next.push_back(std::move(ext));
      }
    }
    if (next.empty()) break;
    layer = std::move(next);
  }
  return all;
}

std::optional<Run> find_run_with_observation(const Automaton& aut, const StateSet& sources,
                                             std::span<const EventId> observation,
                                             const std::function<bool(StateId)>& accept,
                                             bool avoid_secret) {
  struct Node {
    StateId state;
    std::size_t pos;
    std::int64_t parent;
    EventId via;
  };
  const std::size_t width = observation.size() + 1;
  std::vector<bool> seen(aut.num_states() * width, false);
  std::vector<Node> nodes;
  std::deque<std::size_t> queue;

  auto build = [&](std::size_t idx) {
    std::vector<Step> rev;
    while (nodes[idx].parent >= 0) {
      rev.push_back(Step{nodes[idx].via, nodes[idx].state});
      idx = static_cast<std::size_t>(nodes[idx].parent);
    }
    Run run{nodes[idx].state, {rev.rbegin(), rev.rend()}};
    return run;
  };
  auto discover = [&](StateId s, std::size_t pos, std::int64_t parent, EventId via) -> bool {
    if (avoid_secret && aut.is_secret(s)) return false;
    std::size_t key = s.index * width + pos;
    if (seen[key]) return false;
    seen[key] = true;
    nodes.push_back(Node{s, pos, parent, via});
    queue.push_back(nodes.size() - 1);
    return pos == observation.size() && accept(s);
  };

  for (StateId s : sources)
    if (discover(s, 0, -1, EventId{})) return build(nodes.size() - 1);
  while (!queue.empty()) {
    std::size_t idx = queue.front();
    queue.pop_front();
    const Node cur = nodes[idx];
    for (const Transition& t : aut.out(cur.state)) {
      std::size_t pos = cur.pos;
      if (aut.observable(t.event)) {
        if (pos == observation.size() || observation[pos] != t.event) continue;
        ++pos;
      }
      if (discover(t.target, pos, static_cast<std::int64_t>(idx), t.event)) return build(nodes.size() - 1);
    }
  }
  return std::nullopt;
}

std::string format_sequence(const Automaton& aut, std::span<const EventId> s) {
  if (s.empty()) return "eps";
  std::string r;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) r += '.';
    r += aut.event_name(s[i]);
  }
  return r;
}

}  // namespace opacity

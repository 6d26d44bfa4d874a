#include "opacity/constructions.hpp"

#include <deque>

namespace opacity {

Automaton build_gdss(const Automaton& g) {
  const StateSet& ns = g.non_secret_initials();
  return g.restrict_to(g.reachable_from(ns, /*avoid_secret=*/true), ns);
}

Automaton build_ghat(const Automaton& g) {
  StateSet secret_initial = set_intersection(g.initial_states(), g.secret_states());
  return g.restrict_to(g.reachable_from(secret_initial, false), secret_initial);
}

Automaton build_ns_initial_part(const Automaton& g) {
  const StateSet& ns = g.non_secret_initials();
  return g.restrict_to(g.reachable_from(ns, false), ns);
}

std::optional<ObserverStateId> ObserverAutomaton::find(const StateSet& subset) const {
  auto it = index_.find(subset);
  if (it == index_.end()) return std::nullopt;
  return ObserverStateId{it->second};
}

std::optional<ObserverStateId> ObserverAutomaton::next(ObserverStateId q, EventId e) const {
  std::int32_t n = next_[q.index * source_.num_events() + e.index];
  if (n < 0) return std::nullopt;
  return ObserverStateId{static_cast<std::uint32_t>(n)};
}

ObserverAutomaton build_observer(const Automaton& aut) {
  ObserverAutomaton obs;
  obs.source_ = aut;
  obs.alphabet_ = aut.observable_events();
  const std::size_t width = aut.num_events();

  auto intern = [&](StateSet s) -> std::pair<std::uint32_t, bool> {
    auto [it, inserted] = obs.index_.emplace(s, static_cast<std::uint32_t>(obs.subsets_.size()));
    if (inserted) {
      obs.subsets_.push_back(std::move(s));
      obs.next_.resize(obs.subsets_.size() * width, -1);
    }
    return {it->second, inserted};
  };

  StateSet init = unobservable_reach(aut, aut.initial_states());
  if (init.empty()) return obs;
  obs.initial_ = ObserverStateId{intern(std::move(init)).first};

  std::deque<std::uint32_t> queue{obs.initial_->index};
  while (!queue.empty()) {
    std::uint32_t q = queue.front();
    queue.pop_front();
    for (EventId e : obs.alphabet_) {
      StateSet succ = unobservable_reach(aut, post(aut, obs.subsets_[q], e));
      if (succ.empty()) continue;
      auto [id, inserted] = intern(std::move(succ));
      obs.next_[q * width + e.index] = static_cast<std::int32_t>(id);
      ++obs.num_transitions_;
      if (inserted) queue.push_back(id);
    }
  }
  return obs;
}

std::optional<CCStateId> CCAutomaton::find(const CCState& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const CCTransition> CCAutomaton::out(CCStateId i) const {
  return std::span<const CCTransition>(transitions_).subspan(out_begin_[i], out_end_[i] - out_begin_[i]);
}

std::string CCAutomaton::label(CCStateId i) const {
  const CCState& s = states_[i];
  std::string right = s.right ? observer_.label(*s.right) : std::string("{}");
  return "(" + left_.state_name(s.left) + "," + right + ")";
}

std::string CCAutomaton::event_label(EventId e) const {
  const std::string& name = left_.event_name(e);
  return "(" + name + "," + (left_.observable(e) ? name : std::string("eps")) + ")";
}

CCAutomaton build_cc(const Automaton& left, const ObserverAutomaton& obs,
                     const std::function<bool(const CCAutomaton&, CCStateId)>& stop_at) {
  CCAutomaton cc;
  cc.left_ = left;
  cc.observer_ = obs;

  // Observer event for each observable left event, matched by name.
  std::vector<std::optional<EventId>> to_obs(left.num_events());
  for (std::uint32_t e = 0; e < left.num_events(); ++e) {
    EventId ev{e};
    if (!left.observable(ev)) continue;
    auto oe = obs.source().find_event(left.event_name(ev));
    if (oe && obs.source().observable(*oe)) to_obs[e] = *oe;
  }

  std::deque<CCStateId> queue;
  bool stopped = false;
  auto discover = [&](const CCState& s) -> std::pair<CCStateId, bool> {
    auto [it, inserted] = cc.index_.emplace(s, static_cast<CCStateId>(cc.states_.size()));
    if (inserted) {
      cc.states_.push_back(s);
      cc.out_begin_.push_back(0);
      cc.out_end_.push_back(0);
      queue.push_back(it->second);
    }
    return {it->second, inserted};
  };
  auto should_stop = [&](CCStateId id) { return stop_at && stop_at(cc, id); };

  for (StateId x0 : left.initial_states()) {
    auto [id, inserted] = discover(CCState{x0, obs.initial()});
    cc.initial_.push_back(id);
    if (inserted && should_stop(id)) {
      stopped = true;
      break;
    }
  }

  while (!stopped && !queue.empty()) {
    CCStateId cur = queue.front();
    queue.pop_front();
    const CCState src = cc.states_[cur];
    cc.out_begin_[cur] = cc.transitions_.size();
    for (const Transition& t : left.out(src.left)) {
      std::optional<ObserverStateId> right = src.right;
      if (left.observable(t.event) && right) {
        right = to_obs[t.event.index] ? obs.next(*right, *to_obs[t.event.index]) : std::nullopt;
      }
      auto [id, inserted] = discover(CCState{t.target, right});
      cc.transitions_.push_back(CCTransition{cur, t.event, id});
      if (inserted && should_stop(id)) {
        stopped = true;
        break;
      }
    }
    cc.out_end_[cur] = cc.transitions_.size();
  }
  cc.complete_ = !stopped;
  return cc;
}

}  // namespace opacity

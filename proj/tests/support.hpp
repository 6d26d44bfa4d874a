#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "opacity/automaton.hpp"
#include "opacity/generator.hpp"
#include "opacity/io.hpp"

// Helpers shared by the test binaries. The naive_* functions deliberately
// reimplement semantics from scratch (plain fixpoints over std::set) so that
// library results can be compared against them.
namespace testing_support {

using namespace opacity;

inline std::filesystem::path fixture_dir() { return OPACITY_FIXTURE_DIR; }

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Automaton from_text(std::string_view text) { return validate(parse(text)).automaton; }

inline Automaton fixture(const std::string& name) { return from_text(read_text(fixture_dir() / name)); }

inline Automaton random_automaton(std::size_t states, std::size_t events, std::uint64_t seed,
                                  double density = 0.2, double secret_ratio = 0.3) {
  GeneratorParams p;
  p.states = states;
  p.events = events;
  p.density = density;
  p.secret_ratio = secret_ratio;
  p.obs_ratio = 0.6;
  return validate(generate_automaton(p, seed)).automaton;
}

/// A small family of random automata with varied sizes, used by property tests.
inline std::vector<Automaton> random_family(std::size_t count, std::size_t max_states, std::size_t max_events,
                                            std::uint64_t seed) {
  std::vector<Automaton> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t n = 1 + (seed + i * 7) % max_states;
    std::size_t m = 1 + (seed + i * 3) % max_events;
    double secret = 0.1 + 0.1 * static_cast<double>(i % 5);
    out.push_back(random_automaton(n, m, seed * 1000 + i, 0.1 + 0.05 * static_cast<double>(i % 5), secret));
  }
  return out;
}

using NameSet = std::set<std::string>;

inline NameSet names_of(const Automaton& g, const StateSet& s) {
  NameSet r;
  for (StateId x : s) r.insert(g.state_name(x));
  return r;
}

inline std::set<std::uint32_t> naive_unobservable_reach(const Automaton& g, std::set<std::uint32_t> cur,
                                                        bool non_secret_only = false) {
  if (non_secret_only)
    std::erase_if(cur, [&](std::uint32_t s) { return g.is_secret(StateId{s}); });
  bool grew = true;
  while (grew) {
    grew = false;
    for (const Transition& t : g.transitions()) {
      if (g.observable(t.event) || !cur.contains(t.source.index)) continue;
      if (non_secret_only && g.is_secret(t.target)) continue;
      grew |= cur.insert(t.target.index).second;
    }
  }
  return cur;
}

inline std::set<std::uint32_t> to_index_set(const StateSet& s) {
  std::set<std::uint32_t> r;
  for (StateId x : s) r.insert(x.index);
  return r;
}

/// Endpoints of runs from `sources` whose projection is `obs` (observable
/// events given by name), with trailing unobservable moves.
inline std::set<std::uint32_t> naive_after(const Automaton& g, const StateSet& sources,
                                           const std::vector<std::string>& obs, bool non_secret_only) {
  std::set<std::uint32_t> cur = naive_unobservable_reach(g, to_index_set(sources), non_secret_only);
  for (const std::string& name : obs) {
    std::set<std::uint32_t> next;
    for (const Transition& t : g.transitions())
      if (g.observable(t.event) && g.event_name(t.event) == name && cur.contains(t.source.index))
        next.insert(t.target.index);
    cur = naive_unobservable_reach(g, std::move(next), non_secret_only);
  }
  return cur;
}

/// Every run of `g` from an initial state with at most `depth` steps, passed
/// to `visit` as (states, events).
inline void naive_runs(const Automaton& g, std::size_t depth,
                       const std::function<void(const std::vector<StateId>&, const std::vector<EventId>&)>& visit) {
  std::vector<StateId> states;
  std::vector<EventId> events;
  std::function<void()> rec = [&] {
    visit(states, events);
    if (events.size() == depth) return;
    for (const Transition& t : g.transitions()) {
      if (t.source != states.back()) continue;
      states.push_back(t.target);
      events.push_back(t.event);
      rec();
      states.pop_back();
      events.pop_back();
    }
  };
  for (StateId x0 : g.initial_states()) {
    states = {x0};
    rec();
  }
}

inline std::vector<std::string> observation_names(const Automaton& g, const std::vector<EventId>& events) {
  std::vector<std::string> r;
  for (EventId e : events)
    if (g.observable(e)) r.push_back(g.event_name(e));
  return r;
}

}  // namespace testing_support

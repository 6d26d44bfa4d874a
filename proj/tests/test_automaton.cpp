#include <doctest.h>

#include <map>

#include "opacity/automaton.hpp"
#include "support.hpp"

using namespace opacity;
using namespace testing_support;

namespace {

EventSeq seq(const Automaton& g, std::initializer_list<const char*> names) {
  EventSeq r;
  for (const char* n : names) r.push_back(*g.find_event(n));
  return r;
}

StateSet states(const Automaton& g, std::initializer_list<const char*> names) {
  StateSet r;
  for (const char* n : names) r.insert(*g.find_state(n));
  return r;
}

AutomatonDocument small_doc() {
  AutomatonDocument d;
  d.states = {"p", "q", "r"};
  d.events = {{"a", true}, {"u", false}};
  d.transitions = {{"p", "a", "q"}, {"q", "u", "r"}};
  d.initial = {"p"};
  d.secret = {"r"};
  return d;
}

}  // namespace

TEST_SUITE("automaton-core") {

TEST_CASE("validated fixture keeps the declared structure") {
  Automaton g = fixture("current_leak.aut");
  CHECK(g.num_states() == 7);
  CHECK(g.num_events() == 3);
  CHECK(g.num_transitions() == 10);
  CHECK(g.observable(*g.find_event("a")));
  CHECK_FALSE(g.observable(*g.find_event("u")));
  CHECK(g.secret_states() == states(g, {"x4", "x5"}));
  CHECK(g.non_secret_initials() == states(g, {"x0"}));
  CHECK(g.format_set(g.secret_states()) == "{x4,x5}");
}

TEST_CASE("indices follow name order") {
  Automaton g = from_text("format 1\nstates z m a\nevents y:obs b:unobs\ninitial z\ntransition z y m\ntransition m b a\n");
  CHECK(g.state_name(StateId{0}) == "a");
  CHECK(g.state_name(StateId{2}) == "z");
  CHECK(g.event_name(EventId{0}) == "b");
}

TEST_CASE("validation rejects malformed documents") {
  SUBCASE("undeclared transition endpoint") {
    AutomatonDocument d = small_doc();
    d.transitions.push_back({"p", "a", "ghost"});
    CHECK_THROWS_AS(validate(d), ValidationError);
  }
  SUBCASE("undeclared event") {
    AutomatonDocument d = small_doc();
    d.transitions.push_back({"p", "zz", "q"});
    CHECK_THROWS_AS(validate(d), ValidationError);
  }
  SUBCASE("event both observable and unobservable") {
    AutomatonDocument d = small_doc();
    d.events.push_back({"a", false});
    CHECK_THROWS_WITH_AS(validate(d), doctest::Contains("observable"), ValidationError);
  }
  SUBCASE("duplicate state") {
    AutomatonDocument d = small_doc();
    d.states.push_back("q");
    CHECK_THROWS_AS(validate(d), ValidationError);
  }
  SUBCASE("empty state set") {
    AutomatonDocument d;
    CHECK_THROWS_AS(validate(d), ValidationError);
  }
  SUBCASE("no initial state") {
    AutomatonDocument d = small_doc();
    d.initial.clear();
    CHECK_THROWS_WITH_AS(validate(d), "automaton has no initial states", ValidationError);
  }
  SUBCASE("undeclared secret state") {
    AutomatonDocument d = small_doc();
    d.secret.push_back("nowhere");
    CHECK_THROWS_AS(validate(d), ValidationError);
  }
  SUBCASE("wrong format version") {
    AutomatonDocument d = small_doc();
    d.format_version = 2;
    CHECK_THROWS_AS(validate(d), ValidationError);
  }
}

TEST_CASE("unreachable states are pruned with a warning") {
  AutomatonDocument d = small_doc();
  d.states.push_back("island");
  d.events.push_back({"b", true});
  d.transitions.push_back({"island", "b", "p"});
  ValidationResult vr = validate(d);
  CHECK(vr.pruned_states == std::vector<std::string>{"island"});
  REQUIRE(vr.warnings.size() == 1);
  CHECK(vr.automaton.num_states() == 3);
  CHECK(vr.automaton.num_transitions() == 2);
  // Pruning never changes the declared alphabet.
  CHECK(vr.automaton.find_event("b").has_value());
}

TEST_CASE("an all-secret automaton validates with a warning") {
  AutomatonDocument d = small_doc();
  d.secret = {"p", "q", "r"};
  ValidationResult vr = validate(d);
  CHECK(vr.automaton.non_secret_initials().empty());
  CHECK_FALSE(vr.warnings.empty());
}

TEST_CASE("extended transition function on a fixture") {
  Automaton g = fixture("current_leak.aut");
  StateSet x0 = g.initial_states();
  CHECK(delta_extended(g, x0, seq(g, {"a", "a"})) == states(g, {"x5"}));
  CHECK(delta_extended(g, x0, seq(g, {"u", "a", "a"})) == states(g, {"x6"}));
  CHECK(delta_extended(g, x0, seq(g, {"a", "a", "b", "b"})) == states(g, {"x5"}));
  CHECK(delta_extended(g, x0, seq(g, {"u", "a", "a", "b"})) == states(g, {"x6"}));
  CHECK(delta_extended(g, x0, {}) == x0);
  CHECK(delta_extended(g, x0, seq(g, {"b"})).empty());
  CHECK(unobservable_reach(g, x0) == states(g, {"x0", "x1"}));
}

TEST_CASE("unobservable reach matches a naive fixpoint and is a closure operator") {
  for (const Automaton& g : random_family(60, 7, 4, 11)) {
    for (std::uint32_t s = 0; s < g.num_states(); ++s) {
      StateSet src{StateId{s}};
      StateSet r = unobservable_reach(g, src);
      CHECK(to_index_set(r) == naive_unobservable_reach(g, {s}));
      CHECK(src.is_subset_of(r));
      CHECK(unobservable_reach(g, r) == r);
    }
    StateSet all = StateSet::range(g.num_states());
    CHECK(unobservable_reach(g, all) == all);
    StateSet init = g.initial_states();
    CHECK(unobservable_reach(g, init).is_subset_of(unobservable_reach(g, set_union(init, g.secret_states()))));
  }
}

TEST_CASE("post and delta_extended agree with naive stepping") {
  for (const Automaton& g : random_family(40, 6, 3, 5)) {
    naive_runs(g, 3, [&](const std::vector<StateId>& xs, const std::vector<EventId>& es) {
      StateSet reached = delta_extended(g, g.initial_states(), es);
      CHECK(reached.contains(xs.back()));
      if (!es.empty()) {
        EventSeq prefix(es.begin(), es.end() - 1);
        CHECK(post(g, delta_extended(g, g.initial_states(), prefix), es.back()) == reached);
      }
    });
  }
}

TEST_CASE("projection erases unobservable events and is a monoid morphism") {
  Automaton g = fixture("current_leak.aut");
  CHECK(project(g, seq(g, {"u", "a", "u", "b"})) == seq(g, {"a", "b"}));
  CHECK(project(g, seq(g, {"u", "u"})).empty());
  CHECK(format_sequence(g, {}) == "eps");
  CHECK(format_sequence(g, seq(g, {"u", "a"})) == "u.a");

  std::vector<EventSeq> words = {{}, seq(g, {"u"}), seq(g, {"a", "u"}), seq(g, {"b", "a", "u", "u"}),
                                 seq(g, {"u", "b"})};
  for (const EventSeq& s : words) {
    for (const EventSeq& t : words) {
      EventSeq st = s;
      st.insert(st.end(), t.begin(), t.end());
      EventSeq ps = project(g, s), pt = project(g, t);
      ps.insert(ps.end(), pt.begin(), pt.end());
      CHECK(project(g, st) == ps);
    }
  }
}

TEST_CASE("runs: validity and the non-secret predicate") {
  Automaton g = fixture("current_leak.aut");
  auto x = [&](const char* n) { return *g.find_state(n); };
  auto e = [&](const char* n) { return *g.find_event(n); };
  Run good{x("x0"), {{e("u"), x("x1")}, {e("a"), x("x4")}}};
  CHECK(is_valid_run(g, good));
  CHECK_FALSE(is_non_secret(g, good));
  CHECK(good.last() == x("x4"));
  CHECK(good.events() == seq(g, {"u", "a"}));

  Run clean{x("x0"), {{e("a"), x("x2")}, {e("u"), x("x3")}}};
  CHECK(is_valid_run(g, clean));
  CHECK(is_non_secret(g, clean));

  Run bogus{x("x0"), {{e("b"), x("x2")}}};
  CHECK_FALSE(is_valid_run(g, bogus));

  Run empty{x("x4"), {}};
  CHECK_FALSE(is_non_secret(g, empty));
}

TEST_CASE("enumerate_runs matches a recursive path count and is ordered") {
  for (const Automaton& g : random_family(40, 6, 3, 23)) {
    for (std::size_t depth = 0; depth <= 4; ++depth) {
      std::size_t expected = 0;
      naive_runs(g, depth, [&](const auto&, const auto&) { ++expected; });
      std::vector<Run> runs = enumerate_runs(g, depth);
      CHECK(runs.size() == expected);
      for (std::size_t i = 0; i < runs.size(); ++i) {
        CHECK(is_valid_run(g, runs[i]));
        CHECK(g.initial_states().contains(runs[i].start));
        if (i > 0) {
          const Run& a = runs[i - 1];
          const Run& b = runs[i];
          CHECK(a.steps.size() <= b.steps.size());
          if (a.steps.size() == b.steps.size()) CHECK(a.events() <= b.events());
        }
      }
    }
  }
}

TEST_CASE("find_run_with_observation returns a shortest matching run") {
  for (const Automaton& g : random_family(40, 6, 3, 31)) {
    // Shortest run length for each (observation, end state) from bounded enumeration.
    std::map<std::pair<EventSeq, std::uint32_t>, std::size_t> shortest;
    naive_runs(g, 4, [&](const std::vector<StateId>& xs, const std::vector<EventId>& es) {
      auto key = std::make_pair(project(g, es), xs.back().index);
      auto [it, fresh] = shortest.emplace(key, es.size());
      if (!fresh) it->second = std::min(it->second, es.size());
    });
    for (const auto& [key, len] : shortest) {
      auto run = find_run_with_observation(g, g.initial_states(), key.first,
                                           [&](StateId s) { return s.index == key.second; });
      REQUIRE(run.has_value());
      CHECK(run->steps.size() == len);
      CHECK(project(g, run->events()) == key.first);
      CHECK(is_valid_run(g, *run));
    }
  }
}

TEST_CASE("restriction and reachability") {
  Automaton g = fixture("current_leak.aut");
  StateSet ns = g.reachable_from(g.non_secret_initials(), true);
  CHECK(names_of(g, ns) == NameSet{"x0", "x1", "x2", "x3"});
  StateSet all = g.reachable_from(g.initial_states(), false);
  CHECK(all.size() == g.num_states());

  Automaton r = g.restrict_to(ns, g.non_secret_initials());
  CHECK(r.num_states() == 4);
  CHECK(r.num_transitions() == 4);
  CHECK(r.secret_states().empty());
  StateSet pair = states(g, {"x0", "x1"});
  CHECK(g.restrict_to(pair, g.initial_states()).num_events() == 1);
  CHECK(g.restrict_to(pair, g.initial_states(), AlphabetPolicy::keep).num_events() == 3);
}

}  // TEST_SUITE

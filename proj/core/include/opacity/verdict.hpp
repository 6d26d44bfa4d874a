#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opacity/automaton.hpp"

namespace opacity {

enum class Property { cso, iso, scso, siso, inf_sso };

inline constexpr std::array<Property, 5> kAllProperties = {Property::cso, Property::iso, Property::scso,
                                                           Property::siso, Property::inf_sso};

std::string_view to_string(Property p);  // "cso", "iso", "scso", "siso", "inf-sso"
std::optional<Property> parse_property(std::string_view name);

/// A violating behaviour of the original system, in its index space.
struct Witness {
  EventSeq event_sequence;
  EventSeq observation;
  std::string offending_state;  // product state label, or the estimate for CSO
  Run run;
};

struct Stats {
  std::size_t subautomaton_states = 0;  // G_dss, Ĝ or the X_NS part (0 for CSO)
  std::size_t observer_states = 0;
  std::size_t observer_transitions = 0;
  std::size_t product_states = 0;
  std::size_t product_transitions = 0;
  bool exhaustive = false;
  double seconds = 0.0;
};

struct Verdict {
  Property property = Property::scso;
  bool holds = true;
  std::optional<Witness> witness;
  /// Labels of every offending state, in discovery order. Only filled by an
  /// exhaustive check.
  std::vector<std::string> offending_states;
  Stats stats;
};

}  // namespace opacity

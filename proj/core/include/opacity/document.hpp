#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace opacity {

inline constexpr int kFormatVersion = 1;

struct EventDecl {
  std::string name;
  bool observable = true;

  friend bool operator==(const EventDecl&, const EventDecl&) = default;
};

struct TransitionDecl {
  std::string source;
  std::string event;
  std::string target;

  friend auto operator<=>(const TransitionDecl&, const TransitionDecl&) = default;
};

// Unvalidated textual description of an automaton. Order of the lists is
// whatever the producer used; canonicalize() sorts them.
struct AutomatonDocument {
  int format_version = kFormatVersion;
  std::vector<std::string> states;
  std::vector<EventDecl> events;
  std::vector<TransitionDecl> transitions;
  std::vector<std::string> initial;
  std::vector<std::string> secret;

  friend bool operator==(const AutomatonDocument&, const AutomatonDocument&) = default;
};

AutomatonDocument canonicalize(AutomatonDocument doc);

/// Names are nonempty and free of whitespace, control characters and the
/// reserved characters # : " and backslash.
bool is_valid_name(std::string_view name);

}  // namespace opacity

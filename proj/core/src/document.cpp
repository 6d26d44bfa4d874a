#include "opacity/document.hpp"

#include <algorithm>

namespace opacity {

AutomatonDocument canonicalize(AutomatonDocument doc) {
  std::sort(doc.states.begin(), doc.states.end());
  std::sort(doc.events.begin(), doc.events.end(),
            [](const EventDecl& a, const EventDecl& b) { return a.name < b.name; });
  std::sort(doc.transitions.begin(), doc.transitions.end());
  std::sort(doc.initial.begin(), doc.initial.end());
  std::sort(doc.secret.begin(), doc.secret.end());
  return doc;
}

bool is_valid_name(std::string_view name) {
  if (name.empty()) return false;
  return std::none_of(name.begin(), name.end(), [](unsigned char c) {
    return c <= ' ' || c == '#' || c == ':' || c == '"' || c == '\\' || c == 0x7f;
  });
}

}  // namespace opacity

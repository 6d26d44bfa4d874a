#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "opacity/constructions.hpp"
#include "opacity/document.hpp"

namespace opacity {

class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Line-oriented automaton format:
//
//   format 1
//   states x0 x1 x2
//   events a:obs b:obs u:unobs
//   initial x0
//   secret x2
//   transition x0 a x1
//
// `#` starts a comment. `format` must come first; `states` and `events` are
// required, `initial` and `secret` default to empty, each header appears at
// most once and `transition` lines may appear anywhere after `format`.
AutomatonDocument parse(std::string_view text);

/// Canonical form: fixed key order, sorted lists, one transition per line.
std::string serialize(const AutomatonDocument& doc);

std::string export_dot(const Automaton& aut, std::string_view name = "G");
std::string export_dot(const ObserverAutomaton& obs, std::string_view name = "Obs");
std::string export_dot(const CCAutomaton& cc, std::string_view name = "Cc");

/// Observer and product rendered in the native format: subset and pair labels
/// become state names, product events become "(a,a)" / "(u,eps)".
AutomatonDocument to_document(const ObserverAutomaton& obs);
AutomatonDocument to_document(const CCAutomaton& cc);

}  // namespace opacity

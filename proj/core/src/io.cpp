#include "opacity/io.hpp"

#include <charconv>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace opacity {

FormatError::FormatError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back(Token{line.substr(start, i - start), start + 1});
  }
  return tokens;
}

struct Reference {
  std::string name;
  std::size_t line;
  std::size_t column;
};

}  // namespace

AutomatonDocument parse(std::string_view text) {
  AutomatonDocument doc;
  std::set<std::string> headers;
  std::set<std::string> state_names;
  std::map<std::string, bool> event_names;
  std::vector<Reference> state_refs;
  std::vector<Reference> event_refs;
  std::set<TransitionDecl> triples;
  bool have_format = false;
  std::size_t line_no = 0;

  auto name_token = [&](const Token& t, const char* what) {
    if (!is_valid_name(t.text))
      throw FormatError(line_no, t.column, std::string("invalid ") + what + " name '" + std::string(t.text) + "'");
    return std::string(t.text);
  };

  auto state_list = [&](const std::vector<Token>& tokens, std::vector<std::string>& out, const char* what) {
    std::set<std::string> seen;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      std::string name = name_token(tokens[i], "state");
      if (!seen.insert(name).second)
        throw FormatError(line_no, tokens[i].column, "duplicate name '" + name + "' in " + what);
      state_refs.push_back({name, line_no, tokens[i].column});
      out.push_back(std::move(name));
    }
  };

  // Errors about missing headers point at the last line that had content.
  std::size_t last_content_line = 1;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    std::vector<Token> tokens = tokenize(line);
    if (tokens.empty()) continue;
    last_content_line = line_no;
    const std::string key(tokens[0].text);

    if (!have_format) {
      if (key != "format") throw FormatError(line_no, tokens[0].column, "expected 'format' header first");
      if (tokens.size() != 2) throw FormatError(line_no, tokens[0].column, "'format' takes one version number");
      int version = 0;
      auto [ptr, ec] = std::from_chars(tokens[1].text.data(), tokens[1].text.data() + tokens[1].text.size(), version);
      if (ec != std::errc{} || ptr != tokens[1].text.data() + tokens[1].text.size())
        throw FormatError(line_no, tokens[1].column, "malformed version number");
      if (version != kFormatVersion)
        throw FormatError(line_no, tokens[1].column,
                          "unsupported format version " + std::to_string(version) + " (expected " +
                              std::to_string(kFormatVersion) + ")");
      doc.format_version = version;
      have_format = true;
      headers.insert(key);
      continue;
    }

    if (key == "transition") {
      if (tokens.size() != 4)
        throw FormatError(line_no, tokens[0].column, "'transition' takes source, event and target");
      TransitionDecl t{name_token(tokens[1], "state"), name_token(tokens[2], "event"),
                       name_token(tokens[3], "state")};
      if (!triples.insert(t).second)
        throw FormatError(line_no, tokens[0].column,
                          "duplicate transition " + t.source + " " + t.event + " " + t.target);
      state_refs.push_back({t.source, line_no, tokens[1].column});
      event_refs.push_back({t.event, line_no, tokens[2].column});
      state_refs.push_back({t.target, line_no, tokens[3].column});
      doc.transitions.push_back(std::move(t));
      continue;
    }

    if (key != "states" && key != "events" && key != "initial" && key != "secret")
      throw FormatError(line_no, tokens[0].column, "unknown keyword '" + key + "'");
    if (!headers.insert(key).second) throw FormatError(line_no, tokens[0].column, "repeated '" + key + "' line");

    if (key == "states") {
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        std::string name = name_token(tokens[i], "state");
        if (!state_names.insert(name).second)
          throw FormatError(line_no, tokens[i].column, "duplicate state name '" + name + "'");
        doc.states.push_back(std::move(name));
      }
    } else if (key == "events") {
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        std::string_view tok = tokens[i].text;
        auto colon = tok.rfind(':');
        if (colon == std::string_view::npos)
          throw FormatError(line_no, tokens[i].column, "event must be written name:obs or name:unobs");
        std::string_view flag = tok.substr(colon + 1);
        if (flag != "obs" && flag != "unobs")
          throw FormatError(line_no, tokens[i].column + colon + 1, "observability flag must be 'obs' or 'unobs'");
        std::string name(tok.substr(0, colon));
        if (!is_valid_name(name)) throw FormatError(line_no, tokens[i].column, "invalid event name '" + name + "'");
        bool observable = flag == "obs";
        auto [it, inserted] = event_names.emplace(name, observable);
        if (!inserted)
          throw FormatError(line_no, tokens[i].column,
                            it->second != observable ? "event '" + name + "' is both observable and unobservable"
                                                     : "duplicate event name '" + name + "'");
        doc.events.push_back({std::move(name), observable});
      }
    } else if (key == "initial") {
      state_list(tokens, doc.initial, "initial");
    } else {
      state_list(tokens, doc.secret, "secret");
    }
  }

  if (!have_format) throw FormatError(last_content_line, 1, "missing 'format' header");
  if (!headers.count("states")) throw FormatError(last_content_line, 1, "missing 'states' line");
  if (!headers.count("events")) throw FormatError(last_content_line, 1, "missing 'events' line");
  for (const Reference& r : state_refs)
    if (!state_names.count(r.name)) throw FormatError(r.line, r.column, "unknown state '" + r.name + "'");
  for (const Reference& r : event_refs)
    if (!event_names.count(r.name)) throw FormatError(r.line, r.column, "unknown event '" + r.name + "'");
  return doc;
}

std::string serialize(const AutomatonDocument& raw) {
  AutomatonDocument doc = canonicalize(raw);
  std::ostringstream out;
  auto list = [&](const char* key, const std::vector<std::string>& names) {
    out << key;
    for (const std::string& n : names) out << ' ' << n;
    out << '\n';
  };
  out << "format " << doc.format_version << '\n';
  list("states", doc.states);
  out << "events";
  for (const EventDecl& e : doc.events) out << ' ' << e.name << (e.observable ? ":obs" : ":unobs");
  out << '\n';
  list("initial", doc.initial);
  list("secret", doc.secret);
  for (const TransitionDecl& t : doc.transitions)
    out << "transition " << t.source << ' ' << t.event << ' ' << t.target << '\n';
  return out.str();
}

namespace {

std::string quote(std::string_view s) {
  std::string r = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') r += '\\';
    r += c;
  }
  return r + "\"";
}

class DotWriter {
 public:
  explicit DotWriter(std::string_view name) {
    out_ << "digraph " << quote(name) << " {\n  rankdir=LR;\n  node [shape=circle];\n";
  }

  void node(std::string_view id, const std::vector<std::string>& attrs) {
    out_ << "  " << quote(id);
    write_attrs(attrs);
    out_ << ";\n";
  }

  void entry(std::string_view target) {
    std::string start = "__init" + std::to_string(entries_++);
    out_ << "  " << quote(start) << " [shape=point, label=\"\"];\n";
    out_ << "  " << quote(start) << " -> " << quote(target) << ";\n";
  }

  void edge(std::string_view from, std::string_view to, std::string_view label, bool dashed) {
    std::vector<std::string> attrs{"label=" + quote(label)};
    if (dashed) attrs.push_back("style=dashed");
    out_ << "  " << quote(from) << " -> " << quote(to);
    write_attrs(attrs);
    out_ << ";\n";
  }

  std::string finish() {
    out_ << "}\n";
    return out_.str();
  }

 private:
  void write_attrs(const std::vector<std::string>& attrs) {
    if (attrs.empty()) return;
    out_ << " [";
    for (std::size_t i = 0; i < attrs.size(); ++i) out_ << (i ? ", " : "") << attrs[i];
    out_ << "]";
  }

  std::ostringstream out_;
  std::size_t entries_ = 0;
};

}  // namespace

std::string export_dot(const Automaton& aut, std::string_view name) {
  DotWriter dot(name);
  for (std::uint32_t i = 0; i < aut.num_states(); ++i) {
    StateId s{i};
    std::vector<std::string> attrs;
    if (aut.is_secret(s)) attrs = {"shape=box", "style=filled", "fillcolor=lightgray"};
    dot.node(aut.state_name(s), attrs);
  }
  for (StateId s : aut.initial_states()) dot.entry(aut.state_name(s));
  for (const Transition& t : aut.transitions())
    dot.edge(aut.state_name(t.source), aut.state_name(t.target), aut.event_name(t.event),
             !aut.observable(t.event));
  return dot.finish();
}

std::string export_dot(const ObserverAutomaton& obs, std::string_view name) {
  DotWriter dot(name);
  for (std::uint32_t i = 0; i < obs.num_states(); ++i) dot.node(obs.label(ObserverStateId{i}), {"shape=box"});
  if (obs.initial()) dot.entry(obs.label(*obs.initial()));
  for (std::uint32_t i = 0; i < obs.num_states(); ++i) {
    ObserverStateId q{i};
    for (EventId e : obs.alphabet())
      if (auto n = obs.next(q, e)) dot.edge(obs.label(q), obs.label(*n), obs.source().event_name(e), false);
  }
  return dot.finish();
}

std::string export_dot(const CCAutomaton& cc, std::string_view name) {
  DotWriter dot(name);
  for (CCStateId i = 0; i < cc.num_states(); ++i) {
    std::vector<std::string> attrs{"shape=box"};
    if (cc.left_secret(i)) {
      attrs.push_back("style=filled");
      attrs.push_back("fillcolor=lightgray");
    }
    if (cc.right_empty(i)) attrs.push_back("color=red");
    dot.node(cc.label(i), attrs);
  }
  for (CCStateId i : cc.initial_states()) dot.entry(cc.label(i));
  for (const CCTransition& t : cc.transitions())
    dot.edge(cc.label(t.from), cc.label(t.to), cc.event_label(t.event), !cc.left().observable(t.event));
  return dot.finish();
}

AutomatonDocument to_document(const ObserverAutomaton& obs) {
  AutomatonDocument doc;
  for (std::uint32_t i = 0; i < obs.num_states(); ++i) doc.states.push_back(obs.label(ObserverStateId{i}));
  for (EventId e : obs.alphabet()) doc.events.push_back({obs.source().event_name(e), true});
  if (obs.initial()) doc.initial.push_back(obs.label(*obs.initial()));
  for (std::uint32_t i = 0; i < obs.num_states(); ++i) {
    ObserverStateId q{i};
    for (EventId e : obs.alphabet())
      if (auto n = obs.next(q, e)) doc.transitions.push_back({obs.label(q), obs.source().event_name(e), obs.label(*n)});
  }
  return canonicalize(std::move(doc));
}

AutomatonDocument to_document(const CCAutomaton& cc) {
  AutomatonDocument doc;
  std::set<EventId> used;
  for (CCStateId i = 0; i < cc.num_states(); ++i) {
    doc.states.push_back(cc.label(i));
    if (cc.left_secret(i)) doc.secret.push_back(cc.label(i));
  }
  for (CCStateId i : cc.initial_states()) doc.initial.push_back(cc.label(i));
  for (const CCTransition& t : cc.transitions()) {
    used.insert(t.event);
    doc.transitions.push_back({cc.label(t.from), cc.event_label(t.event), cc.label(t.to)});
  }
  for (EventId e : used) doc.events.push_back({cc.event_label(e), cc.left().observable(e)});
  return canonicalize(std::move(doc));
}

}  // namespace opacity

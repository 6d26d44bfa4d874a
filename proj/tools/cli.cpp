#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "opacity/automaton.hpp"
#include "opacity/campaign.hpp"
#include "opacity/constructions.hpp"
#include "opacity/generator.hpp"
#include "opacity/io.hpp"
#include "opacity/verifiers.hpp"

namespace opacity::cli {
namespace {

using json = nlohmann::ordered_json;

// Input problems that map to exit status 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Automaton load(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    ValidationResult vr = validate(parse(text.str()));
    for (const std::string& w : vr.warnings) err << "warning: " << w << '\n';
    return std::move(vr.automaton);
  } catch (const FormatError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const ValidationError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_output(const std::string& path, const std::string& bytes, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << bytes;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + path + "'");
  file << bytes;
}

std::vector<std::string> names(const Automaton& g, std::span<const EventId> seq) {
  std::vector<std::string> r;
  for (EventId e : seq) r.push_back(g.event_name(e));
  return r;
}

std::string format_run(const Automaton& g, const Run& run) {
  std::string r = g.state_name(run.start);
  for (const Step& st : run.steps) r += " -" + g.event_name(st.event) + "-> " + g.state_name(st.state);
  return r;
}

json verdict_json(const Automaton& g, const Verdict& v, bool timing) {
  json j;
  j["property"] = to_string(v.property);
  j["holds"] = v.holds;
  if (v.witness) {
    const Witness& w = *v.witness;
    json steps = json::array();
    for (const Step& st : w.run.steps) steps.push_back({g.event_name(st.event), g.state_name(st.state)});
    j["witness"] = {{"events", names(g, w.event_sequence)},
                    {"observation", names(g, w.observation)},
                    {"offending_state", w.offending_state},
                    {"run", {{"start", g.state_name(w.run.start)}, {"steps", steps}}}};
  }
  if (v.stats.exhaustive && !v.offending_states.empty()) j["offending_states"] = v.offending_states;
  json stats = {{"subautomaton_states", v.stats.subautomaton_states},
                {"observer_states", v.stats.observer_states},
                {"observer_transitions", v.stats.observer_transitions},
                {"product_states", v.stats.product_states},
                {"product_transitions", v.stats.product_transitions},
                {"exhaustive", v.stats.exhaustive}};
  if (timing) stats["seconds"] = v.stats.seconds;
  j["stats"] = stats;
  return j;
}

void print_human(const Automaton& g, const Verdict& v, bool timing, std::ostream& out) {
  out << to_string(v.property) << ": " << (v.holds ? "holds" : "fails") << '\n';
  if (!v.offending_states.empty()) {
    out << "  offending states:";
    for (const std::string& s : v.offending_states) out << ' ' << s;
    out << '\n';
  }
  if (v.witness) {
    const Witness& w = *v.witness;
    out << "  witness state: " << w.offending_state << '\n'
        << "  events: " << format_sequence(g, w.event_sequence) << '\n'
        << "  observation: " << format_sequence(g, w.observation) << '\n'
        << "  run: " << format_run(g, w.run) << '\n';
  }
  if (timing) out << "  time: " << v.stats.seconds << " s\n";
}

struct CheckArgs {
  std::string file;
  std::string properties = "cso,iso,scso,siso,inf-sso";
  bool witness = false;
  bool exhaustive = false;
  bool timing = false;
  std::string output = "human";
};

int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<Property> props;
  std::stringstream list(a.properties);
  for (std::string name; std::getline(list, name, ',');) {
    if (name.empty()) continue;
    auto p = parse_property(name);
    if (!p) throw InputError("unknown property '" + name + "' (expected cso, iso, scso, siso, inf-sso)");
    props.push_back(*p);
  }
  if (props.empty()) throw InputError("no property selected");

  Automaton g = load(a.file, err);
  bool all_hold = true;
  for (Property p : props) {
    Verdict v = check(g, p, CheckOptions{.witness = a.witness, .exhaustive = a.exhaustive});
    all_hold = all_hold && v.holds;
    if (a.output == "machine")
      out << verdict_json(g, v, a.timing).dump() << '\n';
    else
      print_human(g, v, a.timing, out);
  }
  return all_hold ? kExitHolds : kExitFails;
}

struct ExportArgs {
  std::string file;
  std::string structure;
  std::string format = "dot";
  std::string out = "-";
};

int cmd_export(const ExportArgs& a, std::ostream& out, std::ostream& err) {
  Automaton g = load(a.file, err);
  const bool dot = a.format == "dot";
  std::string bytes;

  auto automaton_bytes = [&](const Automaton& aut, std::string_view name) {
    return dot ? export_dot(aut, name) : serialize(aut.to_document());
  };

  if (a.structure == "gdss") {
    bytes = automaton_bytes(build_gdss(g), "G_dss");
  } else if (a.structure == "ghat") {
    Automaton ghat = build_ghat(g);
    if (ghat.num_states() == 0) err << "warning: no secret initial states; the initial-secret part is empty\n";
    bytes = automaton_bytes(ghat, "G_hat");
  } else if (a.structure == "observer") {
    ObserverAutomaton obs = build_observer(build_gdss(g));
    bytes = dot ? export_dot(obs, "Obs_G_dss") : serialize(to_document(obs));
  } else {
    ObserverAutomaton obs = build_observer(build_gdss(g));
    bool hat = a.structure == "cc-hat";
    if (hat && build_ghat(g).num_states() == 0)
      err << "warning: no secret initial states; the product is empty\n";
    CCAutomaton cc = build_cc(hat ? build_ghat(g) : g, obs);
    bytes = dot ? export_dot(cc, hat ? "Cc_G_hat" : "Cc_G") : serialize(to_document(cc));
  }
  write_output(a.out, bytes, out);
  return kExitHolds;
}

struct GenArgs {
  GeneratorParams params;
  std::uint64_t seed = 1;
  std::string out = "-";
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  try {
    write_output(a.out, serialize(generate_automaton(a.params, a.seed)), out);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return kExitHolds;
}

struct FuzzArgs {
  CampaignConfig cfg;
  std::string fixtures;
};

int cmd_fuzz(const FuzzArgs& a, std::ostream& out) {
  if (a.cfg.max_states < 1 || a.cfg.max_events < 1) throw InputError("size bounds must be at least 1");
  CampaignReport report = run_campaign(a.cfg);
  if (!a.fixtures.empty()) {
    try {
      audit_fixtures(a.fixtures, report);
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
  }
  out << format_report(report);
  return report.ok() ? kExitHolds : kExitFails;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Opacity verification for partially observed nondeterministic automata", "opacity"};
  app.require_subcommand(1);

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Decide opacity properties of an automaton file");
  check->add_option("file", check_args.file, "Automaton file")->required();
  check->add_option("--property,-p", check_args.properties, "Comma-separated: cso,iso,scso,siso,inf-sso");
  check->add_flag("--witness,-w", check_args.witness, "Print a witness for every failing property");
  check->add_flag("--exhaustive", check_args.exhaustive, "Explore whole products and list all offending states");
  check->add_flag("--timing", check_args.timing, "Report wall time (output is then no longer reproducible)");
  check->add_option("--output,-o", check_args.output, "human or machine")
      ->check(CLI::IsMember({"human", "machine"}));

  ExportArgs export_args;
  auto* exp = app.add_subcommand("export", "Write a derived structure");
  exp->add_option("file", export_args.file, "Automaton file")->required();
  exp->add_option("--structure,-s", export_args.structure, "gdss, ghat, observer, cc or cc-hat")
      ->required()
      ->check(CLI::IsMember({"gdss", "ghat", "observer", "cc", "cc-hat"}));
  exp->add_option("--format,-f", export_args.format, "dot or native")->check(CLI::IsMember({"dot", "native"}));
  exp->add_option("--out", export_args.out, "Output path, - for stdout");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate a random automaton");
  gen->add_option("--states", gen_args.params.states, "Number of states");
  gen->add_option("--events", gen_args.params.events, "Number of events");
  gen->add_option("--obs-ratio", gen_args.params.obs_ratio, "Probability that an event is observable");
  gen->add_option("--secret-ratio", gen_args.params.secret_ratio, "Probability that a state is secret");
  gen->add_option("--density", gen_args.params.density, "Probability of each extra transition");
  gen->add_option("--seed", gen_args.seed, "Random seed");
  gen->add_option("--out", gen_args.out, "Output path, - for stdout");

  FuzzArgs fuzz_args;
  auto* fuzz = app.add_subcommand("fuzz", "Cross-check verifiers against oracles on random automata");
  fuzz->add_option("--count", fuzz_args.cfg.count, "Number of random instances");
  fuzz->add_option("--max-states", fuzz_args.cfg.max_states, "Upper bound on the state count");
  fuzz->add_option("--max-events", fuzz_args.cfg.max_events, "Upper bound on the event count");
  fuzz->add_option("--seed", fuzz_args.cfg.seed, "Seed of the first instance");
  fuzz->add_option("--threads", fuzz_args.cfg.threads, "Worker threads (0 = all cores)");
  fuzz->add_option("--fixtures", fuzz_args.fixtures, "Directory with expected-verdicts.txt to audit as well");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (*check) return cmd_check(check_args, out, err);
    if (*exp) return cmd_export(export_args, out, err);
    if (*gen) return cmd_gen(gen_args, out);
    return cmd_fuzz(fuzz_args, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace opacity::cli

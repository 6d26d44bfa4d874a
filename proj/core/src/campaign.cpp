#include "opacity/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "opacity/io.hpp"
#include "opacity/oracle.hpp"
#include "opacity/verifiers.hpp"

namespace opacity {
namespace {

constexpr std::size_t idx(Property p) { return static_cast<std::size_t>(p); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

InstanceAudit audit(const Automaton& g) {
  InstanceAudit a;
  for (Property p : kAllProperties) {
    Verdict v = check(g, p, CheckOptions{.witness = true});
    bool o = oracle(g, p);
    a.verifier[idx(p)] = v.holds;
    a.oracle[idx(p)] = o;
    const std::string name(to_string(p));
    if (v.holds != o)
      a.discrepancies.push_back(name + ": verifier says " + (v.holds ? "holds" : "fails") + ", oracle says " +
                                (o ? "holds" : "fails"));
    if (v.holds && v.witness) a.discrepancies.push_back(name + ": witness attached to a holding verdict");
    if (!v.holds) {
      if (!v.witness) {
        a.discrepancies.push_back(name + ": failing verdict without witness");
      } else {
        ReplayResult r = replay_witness(g, *v.witness, p);
        ++a.witnesses_replayed;
        if (!r) a.discrepancies.push_back(name + ": witness replay failed: " + r.reason);
      }
    }
  }
  auto holds = [&](Property p) { return a.verifier[idx(p)]; };
  if (holds(Property::scso) && !holds(Property::cso)) a.discrepancies.push_back("implication SCSO => CSO violated");
  if (holds(Property::siso) && !holds(Property::iso)) a.discrepancies.push_back("implication SISO => ISO violated");
  if (holds(Property::inf_sso) && !holds(Property::scso))
    a.discrepancies.push_back("implication Inf-SSO => SCSO violated");
  a.inf_sso_without_siso = holds(Property::inf_sso) && !holds(Property::siso);
  return a;
}

std::uint64_t instance_seed(const CampaignConfig& cfg, std::size_t index) { return cfg.seed + index; }

GeneratorParams instance_params(const CampaignConfig& cfg, std::size_t index) {
  std::mt19937_64 rng(instance_seed(cfg, index) ^ 0x9e3779b97f4a7c15ull);
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  GeneratorParams p;
  p.states = 1 + static_cast<std::size_t>(unit() * static_cast<double>(cfg.max_states));
  p.events = 1 + static_cast<std::size_t>(unit() * static_cast<double>(cfg.max_events));
  p.obs_ratio = 0.25 + 0.75 * unit();
  p.secret_ratio = 0.6 * unit();
  p.density = 0.05 + 0.35 * unit();
  p.initial_ratio = 0.25;
  return p;
}

CampaignReport run_campaign(const CampaignConfig& cfg) {
  std::vector<InstanceAudit> audits(cfg.count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cfg.count; i = next++) {
      ValidationResult vr = validate(generate_automaton(instance_params(cfg, i), instance_seed(cfg, i)));
      audits[i] = audit(vr.automaton);
      if (!vr.pruned_states.empty()) audits[i].discrepancies.push_back("generator produced unreachable states");
    }
  };
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(cfg.count, 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  CampaignReport report;
  report.instances = cfg.count;
  for (std::size_t i = 0; i < cfg.count; ++i) {
    const InstanceAudit& a = audits[i];
    for (Property p : kAllProperties) ++(a.verifier[idx(p)] ? report.holds : report.fails)[idx(p)];
    report.witnesses_replayed += a.witnesses_replayed;
    report.inf_sso_without_siso += a.inf_sso_without_siso;
    for (const std::string& d : a.discrepancies)
      report.discrepancies.push_back("seed " + std::to_string(instance_seed(cfg, i)) + ": " + d);
  }
  return report;
}

std::vector<FixtureExpectation> read_expectations(const std::filesystem::path& dir) {
  std::istringstream in(read_file(dir / "expected-verdicts.txt"));
  std::vector<FixtureExpectation> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string file, prop, verdict;
    if (!(fields >> file)) continue;
    if (!(fields >> prop >> verdict)) throw std::runtime_error("malformed expectation line: " + line);
    auto p = parse_property(prop);
    if (!p) throw std::runtime_error("unknown property in expectation: " + prop);
    if (verdict != "holds" && verdict != "fails") throw std::runtime_error("verdict must be holds or fails");
    out.push_back({file, *p, verdict == "holds"});
  }
  return out;
}

void audit_fixtures(const std::filesystem::path& dir, CampaignReport& report) {
  std::map<std::string, std::vector<FixtureExpectation>> by_file;
  for (FixtureExpectation& e : read_expectations(dir)) by_file[e.file].push_back(std::move(e));
  for (const auto& [file, expectations] : by_file) {
    ValidationResult vr = validate(parse(read_file(dir / file)));
    InstanceAudit a = audit(vr.automaton);
    ++report.instances;
    for (Property p : kAllProperties) ++(a.verifier[idx(p)] ? report.holds : report.fails)[idx(p)];
    report.witnesses_replayed += a.witnesses_replayed;
    report.inf_sso_without_siso += a.inf_sso_without_siso;
    for (const std::string& d : a.discrepancies) report.discrepancies.push_back(file + ": " + d);
    for (const FixtureExpectation& e : expectations)
      if (a.verifier[idx(e.property)] != e.holds)
        report.discrepancies.push_back(file + ": " + std::string(to_string(e.property)) + " expected " +
                                       (e.holds ? "holds" : "fails"));
  }
}

std::string format_report(const CampaignReport& report) {
  std::ostringstream out;
  out << "instances: " << report.instances << '\n';
  for (Property p : kAllProperties)
    out << "  " << to_string(p) << ": holds " << report.holds[idx(p)] << ", fails " << report.fails[idx(p)] << '\n';
  out << "witnesses replayed: " << report.witnesses_replayed << '\n';
  out << "inf-sso holds but siso fails (informational): " << report.inf_sso_without_siso << '\n';
  out << "discrepancies: " << report.discrepancies.size() << '\n';
  for (const std::string& d : report.discrepancies) out << "  " << d << '\n';
  return out.str();
}

}  // namespace opacity

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "opacity/automaton.hpp"
#include "opacity/generator.hpp"
#include "opacity/verdict.hpp"

namespace opacity {

struct CampaignConfig {
  std::size_t count = 1000;
  std::size_t max_states = 6;
  std::size_t max_events = 4;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Outcome of cross-checking one automaton: every verifier against its
/// oracle, the implications SCSO ⇒ CSO, SISO ⇒ ISO and Inf-SSO ⇒ SCSO, and
/// replay of every witness.
struct InstanceAudit {
  std::array<bool, 5> verifier{};  // indexed like kAllProperties
  std::array<bool, 5> oracle{};
  std::size_t witnesses_replayed = 0;
  bool inf_sso_without_siso = false;  // observed, never treated as an error
  std::vector<std::string> discrepancies;
};

InstanceAudit audit(const Automaton& g);

/// Generator parameters for instance `index` of a campaign.
GeneratorParams instance_params(const CampaignConfig& cfg, std::size_t index);
std::uint64_t instance_seed(const CampaignConfig& cfg, std::size_t index);

struct CampaignReport {
  std::size_t instances = 0;
  std::array<std::size_t, 5> holds{};
  std::array<std::size_t, 5> fails{};
  std::size_t witnesses_replayed = 0;
  std::size_t inf_sso_without_siso = 0;
  std::vector<std::string> discrepancies;  // ordered by instance

  bool ok() const { return discrepancies.empty(); }
};

CampaignReport run_campaign(const CampaignConfig& cfg);

struct FixtureExpectation {
  std::string file;
  Property property;
  bool holds;
};

/// Reads `expected-verdicts.txt` ("<file> <property> holds|fails" per line).
std::vector<FixtureExpectation> read_expectations(const std::filesystem::path& dir);

/// Audits every fixture listed in the expectation table and compares the
/// verifier verdicts to the recorded ones. Mismatches are appended to
/// `report.discrepancies`.
void audit_fixtures(const std::filesystem::path& dir, CampaignReport& report);

std::string format_report(const CampaignReport& report);

}  // namespace opacity

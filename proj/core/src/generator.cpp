#include "opacity/generator.hpp"

#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace opacity {
namespace {

// Raw engine output only: std distributions are not specified bit-exactly
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(unit() * static_cast<double>(n)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

void check_params(const GeneratorParams& p) {
  if (p.states < 1) throw std::invalid_argument("state count must be at least 1");
  if (p.events < 1) throw std::invalid_argument("event count must be at least 1");
  auto ratio = [](double r, const char* what) {
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  };
  ratio(p.obs_ratio, "observable ratio");
  ratio(p.secret_ratio, "secret ratio");
  ratio(p.density, "density");
  ratio(p.initial_ratio, "initial ratio");
}

AutomatonDocument generate_automaton(const GeneratorParams& params, std::uint64_t seed) {
  check_params(params);
  Rng rng(seed);
  AutomatonDocument doc;

  for (std::size_t i = 0; i < params.states; ++i) doc.states.push_back("x" + std::to_string(i));

  std::size_t n_obs = 0;
  std::size_t n_unobs = 0;
  for (std::size_t i = 0; i < params.events; ++i) {
    bool observable = rng.chance(params.obs_ratio);
    std::string name = observable ? "o" + std::to_string(n_obs++) : "u" + std::to_string(n_unobs++);
    doc.events.push_back({std::move(name), observable});
  }

  doc.initial.push_back(doc.states[0]);
  for (std::size_t i = 1; i < params.states; ++i)
    if (rng.chance(params.initial_ratio)) doc.initial.push_back(doc.states[i]);
  for (std::size_t i = 0; i < params.states; ++i)
    if (rng.chance(params.secret_ratio)) doc.secret.push_back(doc.states[i]);

  std::set<TransitionDecl> triples;
  for (std::size_t i = 1; i < params.states; ++i) {
    std::size_t parent = rng.below(i);
    std::size_t event = rng.below(params.events);
    triples.insert({doc.states[parent], doc.events[event].name, doc.states[i]});
  }
  for (std::size_t s = 0; s < params.states; ++s)
    for (std::size_t e = 0; e < params.events; ++e)
      for (std::size_t t = 0; t < params.states; ++t)
        if (rng.chance(params.density)) triples.insert({doc.states[s], doc.events[e].name, doc.states[t]});
  doc.transitions.assign(triples.begin(), triples.end());
  return canonicalize(std::move(doc));
}

}  // namespace opacity

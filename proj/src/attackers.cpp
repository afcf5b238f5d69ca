#include "topicsim/attackers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace topicsim {

std::string to_string(AttackKind k) {
  switch (k) {
    case AttackKind::Antisocial: return "antisocial";
    case AttackKind::Trolling: return "trolling";
    case AttackKind::Rumor: return "rumor";
  }
  return "antisocial";
}

AttackKind parse_attack_kind(const std::string& s) {
  for (auto k : kAllAttackKinds)
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown attacker kind '" + s + "'");
}

void AttackerPrototype::validate() const {
  if (prototype_text.find_first_not_of(" \t\r\n") == std::string::npos)
    throw std::invalid_argument("empty prototype for " + to_string(kind) + " attackers");
}

std::array<AttackerPrototype, 3> load_prototypes(const std::filesystem::path& dir) {
  std::array<AttackerPrototype, 3> out;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto path = dir / (to_string(kAllAttackKinds[i]) + ".txt");
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read attacker prototype " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    out[i] = AttackerPrototype{kAllAttackKinds[i], text.str()};
    while (!out[i].prototype_text.empty() && std::isspace(static_cast<unsigned char>(out[i].prototype_text.back())))
      out[i].prototype_text.pop_back();
    out[i].validate();
  }
  return out;
}

std::string generate_poison(const AttackerPrototype& prototype, const std::string& observation, AgentRuntime& rt) {
  const std::string prompt =
      rt.prompts().fill(PromptId::Attack, {{"observation", observation}, {"prototype", prototype.prototype_text}});
  std::string text = truncate_words(rt.ask(RequestTag::Attack, prompt), 60);
  if (text.empty()) throw ProviderFailure("attacker model returned no text");
  return text;
}

std::string to_string(AttackDegree d) {
  switch (d) {
    case AttackDegree::SE: return "SE";
    case AttackDegree::PA10: return "PA-10";
    case AttackDegree::PA30: return "PA-30";
    case AttackDegree::PA50: return "PA-50";
  }
  return "SE";
}

AttackDegree parse_attack_degree(const std::string& s) {
  for (auto d : {AttackDegree::SE, AttackDegree::PA10, AttackDegree::PA30, AttackDegree::PA50}) {
    std::string compact = to_string(d);
    compact.erase(std::remove(compact.begin(), compact.end(), '-'), compact.end());
    if (s == to_string(d) || s == compact) return d;
  }
  throw std::invalid_argument("unknown attack degree '" + s + "' (expected SE, PA-10, PA-30 or PA-50)");
}

double attacker_fraction(AttackDegree d) {
  switch (d) {
    case AttackDegree::SE: return 0.0;
    case AttackDegree::PA10: return 0.1;
    case AttackDegree::PA30: return 0.3;
    case AttackDegree::PA50: return 0.5;
  }
  return 0.0;
}

void KindsMix::validate() const {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("kinds_mix weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("kinds_mix weights must sum to 1");
}

std::array<std::size_t, 3> split_kinds(std::size_t count, const KindsMix& mix) {
  mix.validate();
  std::array<std::size_t, 3> out{};
  std::array<double, 3> remainder{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double quota = mix.weights[i] * static_cast<double>(count);
    out[i] = static_cast<std::size_t>(std::floor(quota));
    remainder[i] = quota - static_cast<double>(out[i]);
    assigned += out[i];
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    // Remainders that differ only by rounding noise count as ties.
    if (std::abs(remainder[a] - remainder[b]) > 1e-9) return remainder[a] > remainder[b];
    return false;
  });
  for (std::size_t i = 0; assigned < count; ++i, ++assigned) ++out[order[i % 3]];
  return out;
}

std::vector<RosterSlot> build_roster(std::size_t n_total, AttackDegree degree, const KindsMix& mix, Rng& rng) {
  if (n_total == 0) throw std::invalid_argument("roster needs at least one participant");
  const auto n_attackers = static_cast<std::size_t>(std::llround(attacker_fraction(degree) * static_cast<double>(n_total)));
  const auto split = split_kinds(n_attackers, mix);

  std::vector<RosterSlot> slots;
  slots.reserve(n_total);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < split[k]; ++i) slots.push_back({true, kAllAttackKinds[k]});
  while (slots.size() < n_total) slots.push_back({false, AttackKind::Antisocial});
  rng.shuffle(slots);
  return slots;
}

}  // namespace topicsim

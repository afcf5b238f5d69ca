#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "topicsim/agents.hpp"
#include "topicsim/rng.hpp"

namespace topicsim {

enum class AttackKind { Antisocial, Trolling, Rumor };

inline constexpr AttackKind kAllAttackKinds[] = {AttackKind::Antisocial, AttackKind::Trolling, AttackKind::Rumor};

std::string to_string(AttackKind k);
AttackKind parse_attack_kind(const std::string& s);

struct AttackerPrototype {
  AttackKind kind = AttackKind::Antisocial;
  std::string prototype_text;

  // Throws std::invalid_argument on empty text.
  void validate() const;
};

// Reads <dir>/antisocial.txt, trolling.txt and rumor.txt.
std::array<AttackerPrototype, 3> load_prototypes(const std::filesystem::path& dir);

struct AttackerAgent {
  std::string id;
  AttackerPrototype prototype;
};

// Poison comment for the Main page render `observation`, cut to 60 words.
// Throws ProviderFailure if the model gives no usable text.
std::string generate_poison(const AttackerPrototype& prototype, const std::string& observation, AgentRuntime& rt);

enum class AttackDegree { SE, PA10, PA30, PA50 };

std::string to_string(AttackDegree d);  // "SE", "PA-10", ...
AttackDegree parse_attack_degree(const std::string& s);
double attacker_fraction(AttackDegree d);

// Proportions over {Antisocial, Trolling, Rumor}.
struct KindsMix {
  std::array<double, 3> weights{1.0 / 3, 1.0 / 3, 1.0 / 3};

  // Throws std::invalid_argument unless weights are nonnegative and sum to 1.
  void validate() const;
};

struct RosterSlot {
  bool attacker = false;
  AttackKind kind = AttackKind::Antisocial;  // meaningful only for attackers
};

// n_total slots in participant order. Exactly round(fraction * n_total) slots
// hold attackers, split over kinds by largest remainder (ties go to the
// earlier kind) and placed uniformly at random.
std::vector<RosterSlot> build_roster(std::size_t n_total, AttackDegree degree, const KindsMix& mix, Rng& rng);

// Attacker count per kind for `count` attackers.
std::array<std::size_t, 3> split_kinds(std::size_t count, const KindsMix& mix);

}  // namespace topicsim

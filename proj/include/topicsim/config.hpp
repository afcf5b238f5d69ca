#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "topicsim/attackers.hpp"
#include "topicsim/censorship.hpp"
#include "topicsim/environment.hpp"
#include "topicsim/prompts.hpp"
#include "topicsim/provider.hpp"
#include "topicsim/temporal.hpp"

namespace topicsim {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint64_t seed = 1;
  std::filesystem::path topics;
  std::filesystem::path profiles;
  std::filesystem::path prototypes_dir;
  std::size_t n_participants = 1000;
  AttackDegree attack_degree = AttackDegree::SE;
  KindsMix kinds_mix;
  CensorshipConfig censorship;
  LifecycleParams lifecycle;  // defaults for topics without their own values
  std::size_t page_size = 5;
  int max_actions = 6;
  ActionDurations durations;
  double revisit_coeff = 0.3;
  ProviderConfig provider;
  Language language = Language::English;
  double timeline_bin = 30.0;
  std::filesystem::path output_dir;

  // "SE", "PA-50", or "PA-50-CS" when censorship is on.
  std::string degree_label() const;

  // Relative paths resolve against base_dir. Throws ConfigError.
  static RunConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
  static RunConfig load(const std::filesystem::path& path);

  // Checks values and that every referenced file exists. Throws ConfigError.
  void validate() const;
};

}  // namespace topicsim

#include "topicsim/config.hpp"

#include <fstream>

namespace topicsim {

using nlohmann::json;

std::string RunConfig::degree_label() const {
  std::string label = to_string(attack_degree);
  if (censorship.enabled) label += "-CS";
  return label;
}

RunConfig RunConfig::from_json(const json& j, const std::filesystem::path& base_dir) {
  auto resolve = [&](const std::string& p) -> std::filesystem::path {
    if (p.empty()) return {};
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  try {
    RunConfig c;
    c.seed = j.value("seed", c.seed);
    c.topics = resolve(j.at("topics").get<std::string>());
    c.profiles = resolve(j.at("profiles").get<std::string>());
    c.prototypes_dir = resolve(j.value("prototypes_dir", std::string()));
    const auto n = j.value("n_participants", static_cast<std::int64_t>(c.n_participants));
    if (n < 1) throw ConfigError("n_participants must be at least 1");
    c.n_participants = static_cast<std::size_t>(n);
    c.attack_degree = parse_attack_degree(j.value("attack_degree", std::string("SE")));
    if (j.contains("kinds_mix")) {
      const auto& m = j.at("kinds_mix");
      c.kinds_mix.weights = {m.value("antisocial", 0.0), m.value("trolling", 0.0), m.value("rumor", 0.0)};
    }
    if (j.contains("censorship")) {
      const auto& cs = j.at("censorship");
      c.censorship.enabled = cs.value("enabled", false);
      c.censorship.threshold = cs.value("threshold", c.censorship.threshold);
      c.censorship.temperature = cs.value("temperature", c.censorship.temperature);
    }
    if (j.contains("lifecycle")) {
      const auto& l = j.at("lifecycle");
      c.lifecycle.breaking_degree = l.value("breaking_degree", c.lifecycle.breaking_degree);
      c.lifecycle.peak_onset = l.value("peak_onset", c.lifecycle.peak_onset);
      c.lifecycle.plateau_rate = l.value("plateau_rate", c.lifecycle.plateau_rate);
      c.lifecycle.horizon = l.value("horizon", c.lifecycle.horizon);
    }
    c.page_size = j.value("page_size", c.page_size);
    c.max_actions = j.value("max_actions", c.max_actions);
    if (j.contains("durations")) {
      const auto& d = j.at("durations");
      auto& a = c.durations;
      a.view_details = d.value("view_details", a.view_details);
      a.like = d.value("like", a.like);
      a.comment = d.value("comment", a.comment);
      a.reply = d.value("reply", a.reply);
      a.repost = d.value("repost", a.repost);
      a.view_more = d.value("view_more", a.view_more);
      a.view_comment = d.value("view_comment", a.view_comment);
      a.back = d.value("back", a.back);
      a.leave = d.value("leave", a.leave);
    }
    c.revisit_coeff = j.value("revisit_coeff", c.revisit_coeff);
    c.provider = ProviderConfig::from_json(j.value("provider", json::object()), base_dir);
    c.language = parse_language(j.value("language", std::string("en")));
    c.timeline_bin = j.value("timeline_bin", c.timeline_bin);
    c.output_dir = resolve(j.value("output_dir", std::string("out")));
    return c;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad run config: ") + e.what());
  }
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const std::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return from_json(j, std::filesystem::absolute(path).parent_path());
}

void RunConfig::validate() const {
  auto require_file = [](const std::filesystem::path& p, const char* what) {
    if (p.empty() || !std::filesystem::exists(p)) throw ConfigError(std::string(what) + " not found: " + p.string());
  };
  try {
    require_file(topics, "topic file");
    require_file(profiles, "profile corpus");
    if (attack_degree != AttackDegree::SE) require_file(prototypes_dir, "prototype directory");
    if (n_participants < 1) throw ConfigError("n_participants must be at least 1");
    kinds_mix.validate();
    lifecycle.validate();
    if (!(censorship.threshold >= 0.0)) throw ConfigError("censorship threshold must be nonnegative");
    if (page_size < 1) throw ConfigError("page_size must be at least 1");
    if (max_actions < 1) throw ConfigError("max_actions must be at least 1");
    if (!(revisit_coeff >= 0.0 && revisit_coeff <= 1.0)) throw ConfigError("revisit_coeff must lie in [0, 1]");
    if (!(timeline_bin > 0.0)) throw ConfigError("timeline_bin must be positive");
    provider.validate();
    if (provider.backend == Backend::Mock) require_file(provider.mock_script, "mock script");
    if (provider.backend == Backend::Replay && !provider.replay_fallback)
      require_file(provider.cache_path, "replay cache");
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace topicsim

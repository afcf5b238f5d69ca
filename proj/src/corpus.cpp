#include "topicsim/corpus.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "topicsim/event_log.hpp"

namespace topicsim {

using nlohmann::json;

std::vector<UserProfile> load_profiles(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read profile corpus " + path.string());
  std::vector<UserProfile> out;
  std::set<std::string> seen;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      UserProfile p;
      p.id = j.at("id").get<std::string>();
      p.profile_text = j.value("profile_text", std::string());
      p.group = parse_preference_group(j.at("preference_group").get<std::string>());
      p.posts = j.value("posts", std::vector<std::string>());
      if (p.profile_text.empty() && p.posts.empty()) throw std::invalid_argument("neither profile_text nor posts");
      if (!seen.insert(p.id).second) throw std::invalid_argument("duplicate id " + p.id);
      out.push_back(std::move(p));
    } catch (const std::exception& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  if (out.empty()) throw std::runtime_error("profile corpus " + path.string() + " is empty");
  return out;
}

std::vector<TrendingTopic> load_topics(const std::filesystem::path& path, const LifecycleParams& defaults) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read topic file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
  if (!j.is_array() || j.empty()) throw std::runtime_error(path.string() + ": expected a non-empty array of topics");
  std::vector<TrendingTopic> out;
  std::set<std::string> seen;
  for (const auto& item : j) {
    out.push_back(topic_from_json(item, defaults));
    if (!seen.insert(out.back().id).second) throw std::runtime_error(path.string() + ": duplicate topic " + out.back().id);
  }
  return out;
}

}  // namespace topicsim

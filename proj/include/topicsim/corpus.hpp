#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "topicsim/agents.hpp"
#include "topicsim/environment.hpp"

namespace topicsim {

// One line of the profile corpus. profile_text may be empty when posts are
// given; the profile is then distilled at run start.
struct UserProfile {
  std::string id;
  std::string profile_text;
  PreferenceGroup group = PreferenceGroup::Society;
  std::vector<std::string> posts;
};

// JSON lines of {id, profile_text?, preference_group, posts?}.
std::vector<UserProfile> load_profiles(const std::filesystem::path& path);

// JSON array of topics; missing lifecycle fields take `defaults`.
std::vector<TrendingTopic> load_topics(const std::filesystem::path& path, const LifecycleParams& defaults);

}  // namespace topicsim

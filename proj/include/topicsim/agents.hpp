#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "topicsim/actions.hpp"
#include "topicsim/environment.hpp"
#include "topicsim/prompts.hpp"
#include "topicsim/provider.hpp"

namespace topicsim {

// Profile distilled from a user's posts; fixed for the whole run.
struct LongTermMemory {
  std::string profile_text;
  int source_post_count = 0;

  bool operator==(const LongTermMemory&) const = default;
};

struct ShortTermMemory {
  double emotion = 0.5;
  double social_confidence = 0.5;
  std::string opinion;
  std::string summary;

  bool operator==(const ShortTermMemory&) const = default;
};

struct FlashMemory {
  std::string impression;
};

struct AgentMemory {
  LongTermMemory long_term;
  ShortTermMemory short_term;
  FlashMemory flash;
};

enum class PreferenceGroup { Entertainment, Sports, Lifestyle, Society, Culture, Technology };

inline constexpr PreferenceGroup kAllPreferenceGroups[] = {
    PreferenceGroup::Entertainment, PreferenceGroup::Sports,  PreferenceGroup::Lifestyle,
    PreferenceGroup::Society,       PreferenceGroup::Culture, PreferenceGroup::Technology,
};

std::string to_string(PreferenceGroup g);
PreferenceGroup parse_preference_group(const std::string& s);

struct UserAgent {
  std::string id;
  AgentMemory memory;
  PreferenceGroup group = PreferenceGroup::Society;
};

// Per-actor access to the model: fills request metadata, derives a fresh seed
// for every call and collects degraded-path notices for the event log.
class AgentRuntime {
 public:
  AgentRuntime(Provider& provider, const PromptBook& prompts, std::uint64_t seed_base);

  // Throws ProviderFailure when the backend cannot answer.
  std::string ask(RequestTag tag, std::string user_text, std::optional<double> temperature = std::nullopt);

  const PromptBook& prompts() const { return prompts_; }

  void note(std::string issue) { issues_.push_back(std::move(issue)); }
  std::vector<std::string> take_issues();

  std::uint64_t calls() const { return calls_; }

 private:
  Provider& provider_;
  const PromptBook& prompts_;
  std::uint64_t seed_base_;
  std::uint64_t calls_ = 0;
  std::vector<std::string> issues_;
};

// Role-play header variables shared by every user-agent prompt.
PromptVars role_vars(const AgentMemory& memory);

// Throws std::invalid_argument on an empty post list; ProviderFailure
// propagates so the caller can drop the user.
LongTermMemory distill_profile(std::span<const std::string> posts, AgentRuntime& rt);

// Produces an impression of the observation and stores it as flash memory.
// Falls back to the first 60 words of the observation if the model fails.
std::string perceive(const std::string& observation, AgentMemory& memory, AgentRuntime& rt);

// Picks the next action for the observed page, including the text of a
// comment or reply. Unusable answers are retried once, then replaced by Leave
// (Browsing/Main) or Back (CommentDetail).
AgentAction decide(const Observation& observation, const AgentMemory& memory, AgentRuntime& rt);

// Index into `items`. Invalid answers are retried once, then 0.
std::size_t choose_reply_target(std::span<const std::string> items, const AgentMemory& memory, AgentRuntime& rt,
                                PromptId prompt = PromptId::ChooseReply);

// Updated short-term memory after an action. Emotion and social confidence
// are clamped to [0, 1]; a field keeps its prior value if the model fails.
ShortTermMemory reflect(const std::string& impression, const AgentAction& action, const AgentMemory& memory,
                        AgentRuntime& rt);

std::string truncate_words(const std::string& text, std::size_t max_words);

}  // namespace topicsim

#include "topicsim/censorship.hpp"

#include "topicsim/parsing.hpp"

namespace topicsim {

CensorVerdict censor(const std::string& comment_id, const std::string& text, const TrendingTopic& topic,
                     double judged_at, const CensorshipConfig& config, AgentRuntime& rt) {
  CensorVerdict v;
  v.comment_id = comment_id;
  v.judged_at = judged_at;
  const std::string prompt = rt.prompts().fill(PromptId::JudgeMalice, {{"topic", topic.brief()}, {"comment", text}});
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::string reply;
    try {
      reply = rt.ask(RequestTag::Censor, prompt, config.temperature);
    } catch (const ProviderFailure& e) {
      v.error = std::string("provider failure: ") + e.what();
      return v;
    }
    if (auto score = parse_score_100(reply)) {
      v.malice = *score;
      v.flagged = v.malice >= config.threshold;
      v.error.reset();
      return v;
    }
    v.error = "unusable malice score '" + truncate_words(reply, 12) + "'";
  }
  return v;
}

}  // namespace topicsim

#pragma once

#include <optional>
#include <string>

#include "topicsim/agents.hpp"
#include "topicsim/environment.hpp"

namespace topicsim {

struct CensorshipConfig {
  bool enabled = false;
  double threshold = 0.5;
  double temperature = 0.0;
};

struct CensorVerdict {
  std::string comment_id;
  double malice = 0.0;
  bool flagged = false;
  double judged_at = 0.0;
  // Set when the judge could not score the text; the comment then passes.
  std::optional<std::string> error;
};

// Scores a freshly written comment or reply for malice and flags it iff the
// normalized score reaches `threshold`. Unusable answers are retried once;
// after that, or on provider failure, the comment passes unflagged.
// Exactly one provider call is made unless the first answer is unusable.
CensorVerdict censor(const std::string& comment_id, const std::string& text, const TrendingTopic& topic,
                     double judged_at, const CensorshipConfig& config, AgentRuntime& rt);

}  // namespace topicsim

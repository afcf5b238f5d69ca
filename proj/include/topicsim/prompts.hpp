#pragma once

#include <map>
#include <string>

namespace topicsim {

enum class Language { English, Chinese };

Language parse_language(const std::string& s);  // "en" | "zh"
std::string to_string(Language l);

enum class PromptId {
  Perceive,
  DecideBrowsing,
  DecideMain,
  DecideComment,
  WriteComment,
  WriteReply,
  ChooseReply,
  ChooseView,
  ReflectEmotion,
  ReflectSocialConfidence,
  ReflectSummary,
  ReflectOpinion,
  Distill,
  Attack,
  JudgeBehavior,
  JudgePsychology,
  JudgeConsistency,
  JudgeMalice,
  JudgeRationality,
  JudgeDiversity,
};

using PromptVars = std::map<std::string, std::string>;

// Template set for one language. Placeholders are written {{name}}.
class PromptBook {
 public:
  explicit PromptBook(Language language = Language::English);

  Language language() const { return language_; }
  const std::string& raw(PromptId id) const;

  // Substitutes every placeholder. Throws std::logic_error if the template
  // names a variable missing from `vars`, so no unfilled slot can reach a
  // provider.
  std::string fill(PromptId id, const PromptVars& vars) const;

  // Two-decimal score as it appears in "score is 0.50/1.0".
  static std::string score(double v);

 private:
  Language language_;
};

}  // namespace topicsim

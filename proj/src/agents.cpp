#include "topicsim/agents.hpp"

#include <algorithm>
#include <sstream>

#include "topicsim/parsing.hpp"
#include "topicsim/rng.hpp"

namespace topicsim {

namespace {

std::string or_none(const std::string& s) { return s.empty() ? "(none)" : s; }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string numbered(std::span<const std::string> items) {
  std::ostringstream os;
  for (std::size_t i = 0; i < items.size(); ++i) os << "[" << i << "] " << items[i] << "\n";
  return os.str();
}

// Asks for a choice among n options, retrying once on an unusable answer.
std::optional<std::size_t> ask_choice(RequestTag tag, const std::string& prompt, std::size_t n, AgentRuntime& rt,
                                      const char* what) {
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::string reply;
    try {
      reply = rt.ask(tag, prompt);
    } catch (const ProviderFailure& e) {
      rt.note(std::string(what) + ": provider failure: " + e.what());
      return std::nullopt;
    }
    if (auto choice = parse_choice(reply, n)) return choice;
    rt.note(std::string(what) + ": unusable answer '" + truncate_words(reply, 12) + "'");
  }
  return std::nullopt;
}

std::optional<double> ask_fraction(RequestTag tag, const std::string& prompt, AgentRuntime& rt, const char* what) {
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::string reply;
    try {
      reply = rt.ask(tag, prompt);
    } catch (const ProviderFailure& e) {
      rt.note(std::string(what) + ": provider failure: " + e.what());
      return std::nullopt;
    }
    if (auto v = parse_fraction(reply)) return v;
    rt.note(std::string(what) + ": unusable answer '" + truncate_words(reply, 12) + "'");
  }
  return std::nullopt;
}

std::optional<std::string> ask_text(RequestTag tag, const std::string& prompt, AgentRuntime& rt, const char* what) {
  try {
    std::string reply = trim(rt.ask(tag, prompt));
    if (!reply.empty()) return reply;
    rt.note(std::string(what) + ": empty answer");
  } catch (const ProviderFailure& e) {
    rt.note(std::string(what) + ": provider failure: " + e.what());
  }
  return std::nullopt;
}

}  // namespace

std::string to_string(PreferenceGroup g) {
  switch (g) {
    case PreferenceGroup::Entertainment: return "Entertainment";
    case PreferenceGroup::Sports: return "Sports";
    case PreferenceGroup::Lifestyle: return "Lifestyle";
    case PreferenceGroup::Society: return "Society";
    case PreferenceGroup::Culture: return "Culture";
    case PreferenceGroup::Technology: return "Technology";
  }
  return "Society";
}

PreferenceGroup parse_preference_group(const std::string& s) {
  for (auto g : kAllPreferenceGroups)
    if (to_string(g) == s) return g;
  throw std::invalid_argument("unknown preference group '" + s + "'");
}

AgentRuntime::AgentRuntime(Provider& provider, const PromptBook& prompts, std::uint64_t seed_base)
    : provider_(provider), prompts_(prompts), seed_base_(seed_base) {}

std::string AgentRuntime::ask(RequestTag tag, std::string user_text, std::optional<double> temperature) {
  CompletionRequest req;
  req.user_text = std::move(user_text);
  req.tag = tag;
  req.temperature = temperature.value_or(default_temperature(tag));
  req.seed = derive_seed(seed_base_, std::to_string(calls_++));
  try {
    return provider_.complete(req);
  } catch (const ProviderError& e) {
    throw ProviderFailure(e.what());
  }
}

std::vector<std::string> AgentRuntime::take_issues() {
  std::vector<std::string> out;
  out.swap(issues_);
  return out;
}

PromptVars role_vars(const AgentMemory& memory) {
  return {
      {"long_term_memory", memory.long_term.profile_text},
      {"summary", or_none(memory.short_term.summary)},
      {"opinion", or_none(memory.short_term.opinion)},
      {"emotion", PromptBook::score(memory.short_term.emotion)},
      {"social_confidence", PromptBook::score(memory.short_term.social_confidence)},
  };
}

std::string truncate_words(const std::string& text, std::size_t max_words) {
  std::istringstream in(text);
  std::string word, out;
  std::size_t n = 0;
  while (n < max_words && in >> word) {
    if (n++ > 0) out += ' ';
    out += word;
  }
  return out;
}

LongTermMemory distill_profile(std::span<const std::string> posts, AgentRuntime& rt) {
  if (posts.empty()) throw std::invalid_argument("cannot distill a profile from zero posts");
  std::ostringstream listing;
  for (std::size_t i = 0; i < posts.size(); ++i) listing << i + 1 << ". " << posts[i] << "\n";
  std::string profile = trim(rt.ask(RequestTag::Distill, rt.prompts().fill(PromptId::Distill, {{"posts", listing.str()}})));
  if (profile.empty()) throw ProviderFailure("profile distillation returned no text");
  return LongTermMemory{std::move(profile), static_cast<int>(posts.size())};
}

std::string perceive(const std::string& observation, AgentMemory& memory, AgentRuntime& rt) {
  if (observation.empty()) throw std::invalid_argument("perceive needs a non-empty observation");
  PromptVars vars = role_vars(memory);
  vars["observation"] = observation;
  const std::string prompt = rt.prompts().fill(PromptId::Perceive, vars);
  std::string impression;
  if (auto text = ask_text(RequestTag::Perceive, prompt, rt, "perceive")) {
    impression = std::move(*text);
  } else {
    rt.note("perceive: degraded to raw observation");
    impression = truncate_words(observation, 60);
  }
  memory.flash.impression = impression;
  return impression;
}

std::size_t choose_reply_target(std::span<const std::string> items, const AgentMemory& memory, AgentRuntime& rt,
                                PromptId prompt) {
  if (items.empty()) throw std::invalid_argument("no comments to choose from");
  if (items.size() == 1) return 0;
  PromptVars vars = role_vars(memory);
  vars["comments"] = numbered(items);
  if (auto idx = ask_choice(RequestTag::Select, rt.prompts().fill(prompt, vars), items.size(), rt, "choose"))
    return *idx;
  rt.note("choose: fell back to comment 0");
  return 0;
}

AgentAction decide(const Observation& obs, const AgentMemory& memory, AgentRuntime& rt) {
  PromptVars vars = role_vars(memory);
  vars["impression"] = memory.flash.impression;

  PromptId prompt = PromptId::DecideBrowsing;
  std::size_t n_options = 2;
  AgentAction fallback = action::Leave{};
  switch (obs.page) {
    case PageKind::Browsing: break;
    case PageKind::Main:
      prompt = PromptId::DecideMain;
      n_options = 6;
      break;
    case PageKind::CommentDetail:
      prompt = PromptId::DecideComment;
      n_options = 3;
      fallback = action::Back{};
      break;
  }

  const auto choice = ask_choice(RequestTag::Decide, rt.prompts().fill(prompt, vars), n_options, rt, "decide");
  if (!choice) {
    rt.note("decide: fell back to " + action_name(fallback));
    return fallback;
  }

  std::vector<std::string> item_texts;
  for (const auto& item : obs.items) item_texts.push_back(item.text);

  switch (obs.page) {
    case PageKind::Browsing:
      return *choice == 0 ? AgentAction{action::ViewDetails{}} : AgentAction{action::Leave{}};

    case PageKind::Main:
      switch (*choice) {
        case 0: return action::Like{};
        case 1: {
          auto text = ask_text(RequestTag::Compose, rt.prompts().fill(PromptId::WriteComment, vars), rt, "comment");
          if (!text) return fallback;
          return action::Comment{std::move(*text)};
        }
        case 2: return action::Repost{};
        case 3: return action::ViewMore{};
        case 4:
          // With nothing to open the engine rejects the action as a protocol error.
          if (item_texts.empty()) return action::ViewComment{0};
          return action::ViewComment{choose_reply_target(item_texts, memory, rt, PromptId::ChooseView)};
        default: return action::Leave{};
      }

    case PageKind::CommentDetail:
      switch (*choice) {
        case 0: return action::Like{};
        case 1: {
          if (item_texts.empty()) return fallback;
          const std::size_t target = choose_reply_target(item_texts, memory, rt);
          vars["comment"] = item_texts[target];
          auto text = ask_text(RequestTag::Compose, rt.prompts().fill(PromptId::WriteReply, vars), rt, "reply");
          if (!text) return fallback;
          return action::Reply{target, std::move(*text)};
        }
        default: return action::Back{};
      }
  }
  return fallback;
}

ShortTermMemory reflect(const std::string& impression, const AgentAction& act, const AgentMemory& memory,
                        AgentRuntime& rt) {
  PromptVars vars = role_vars(memory);
  vars["impression"] = impression;
  vars["action"] = describe_action(act);
  const PromptBook& book = rt.prompts();
  ShortTermMemory next = memory.short_term;

  if (auto v = ask_fraction(RequestTag::ReflectEmotion, book.fill(PromptId::ReflectEmotion, vars), rt, "emotion"))
    next.emotion = *v;
  else
    rt.note("reflect: kept prior emotion");
  if (auto v = ask_fraction(RequestTag::ReflectSc, book.fill(PromptId::ReflectSocialConfidence, vars), rt,
                            "social confidence"))
    next.social_confidence = *v;
  else
    rt.note("reflect: kept prior social confidence");
  if (auto t = ask_text(RequestTag::ReflectSummary, book.fill(PromptId::ReflectSummary, vars), rt, "summary"))
    next.summary = std::move(*t);
  if (auto t = ask_text(RequestTag::ReflectOpinion, book.fill(PromptId::ReflectOpinion, vars), rt, "opinion"))
    next.opinion = std::move(*t);

  next.emotion = std::clamp(next.emotion, 0.0, 1.0);
  next.social_confidence = std::clamp(next.social_confidence, 0.0, 1.0);
  return next;
}

}  // namespace topicsim

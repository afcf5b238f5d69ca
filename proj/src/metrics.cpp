#include "topicsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "topicsim/parsing.hpp"

namespace topicsim {

namespace {

struct Latest {
  double emotion = 0.5;
  double social_confidence = 0.5;
};

std::unordered_map<std::string, Latest> finals(const std::vector<PsychSnapshot>& snapshots) {
  std::unordered_map<std::string, Latest> out;
  std::unordered_map<std::string, double> last_time;
  for (const auto& s : snapshots) {
    auto it = last_time.find(s.user_id);
    if (it != last_time.end() && s.time < it->second)
      throw std::invalid_argument("snapshots of " + s.user_id + " are not time-ordered");
    last_time[s.user_id] = s.time;
    out[s.user_id] = {s.emotion, s.social_confidence};
  }
  return out;
}

EndStats stats_of(const std::vector<Latest>& values) {
  std::vector<double> e, sc;
  for (const auto& v : values) {
    e.push_back(v.emotion);
    sc.push_back(v.social_confidence);
  }
  return {values.size(), mean_std(e), mean_std(sc)};
}

std::optional<double> ask_score(const std::string& prompt, AgentRuntime& rt) {
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::string reply;
    try {
      reply = rt.ask(RequestTag::Judge, prompt);
    } catch (const ProviderFailure& e) {
      rt.note(std::string("judge: provider failure: ") + e.what());
      return std::nullopt;
    }
    if (auto v = parse_score_100(reply)) return v;
    rt.note("judge: unusable score '" + truncate_words(reply, 12) + "'");
  }
  return std::nullopt;
}

}  // namespace

MeanStd mean_std(const std::vector<double>& values) {
  if (values.empty()) return {};
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size()))};
}

EndStats aggregate_end(const std::vector<PsychSnapshot>& snapshots, const std::vector<std::string>& users) {
  if (users.empty()) throw std::invalid_argument("cannot aggregate over zero users");
  const auto last = finals(snapshots);
  std::vector<Latest> values;
  values.reserve(users.size());
  for (const auto& u : users) {
    auto it = last.find(u);
    values.push_back(it == last.end() ? Latest{} : it->second);
  }
  return stats_of(values);
}

std::vector<TimelinePoint> timeline(const std::vector<PsychSnapshot>& snapshots, const std::vector<std::string>& users,
                                    double horizon, double bin_width, const std::vector<TimelinePoint>* baseline) {
  if (!(bin_width > 0.0)) throw std::invalid_argument("bin width must be positive");
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  const auto bins = static_cast<std::size_t>(std::ceil(horizon / bin_width));
  if (baseline != nullptr && baseline->size() != bins)
    throw std::invalid_argument("baseline timeline has a different number of bins");

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < users.size(); ++i) index.emplace(users[i], i);

  std::vector<const PsychSnapshot*> ordered;
  for (const auto& s : snapshots)
    if (index.count(s.user_id)) ordered.push_back(&s);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const PsychSnapshot* a, const PsychSnapshot* b) { return a->time < b->time; });

  std::vector<Latest> current(users.size());
  std::vector<TimelinePoint> out;
  out.reserve(bins);
  std::size_t next = 0;
  for (std::size_t b = 0; b < bins; ++b) {
    const double end = std::min(horizon, bin_width * static_cast<double>(b + 1));
    while (next < ordered.size() && ordered[next]->time < end) {
      current[index[ordered[next]->user_id]] = {ordered[next]->emotion, ordered[next]->social_confidence};
      ++next;
    }
    // The final bin also takes snapshots stamped exactly at the horizon.
    if (b + 1 == bins)
      while (next < ordered.size() && ordered[next]->time <= end) {
        current[index[ordered[next]->user_id]] = {ordered[next]->emotion, ordered[next]->social_confidence};
        ++next;
      }
    const EndStats s = stats_of(current);
    TimelinePoint p{end, s.emotion, s.social_confidence};
    if (baseline != nullptr) {
      p.emotion.mean -= (*baseline)[b].emotion.mean;
      p.social_confidence.mean -= (*baseline)[b].social_confidence.mean;
    }
    out.push_back(p);
  }
  return out;
}

std::vector<GroupStats> group_breakdown(const std::vector<PsychSnapshot>& snapshots,
                                        const std::map<std::string, PreferenceGroup>& groups) {
  for (const auto& s : snapshots)
    if (!groups.count(s.user_id)) throw std::invalid_argument("user " + s.user_id + " has no preference group");
  std::vector<GroupStats> out;
  for (auto g : kAllPreferenceGroups) {
    std::vector<std::string> members;
    for (const auto& [user, group] : groups)
      if (group == g) members.push_back(user);
    if (members.empty()) continue;
    out.push_back({g, static_cast<double>(members.size()) / static_cast<double>(groups.size()),
                   aggregate_end(snapshots, members)});
  }
  return out;
}

std::string to_string(JudgeMetric m) {
  switch (m) {
    case JudgeMetric::BehaviorConsistency: return "behavior_consistency";
    case JudgeMetric::PsychologyConsistency: return "psychology_consistency";
    case JudgeMetric::AttackerConsistency: return "attacker_consistency";
    case JudgeMetric::Concealment: return "concealment";
    case JudgeMetric::Rationality: return "rationality";
    case JudgeMetric::Diversity: return "diversity";
  }
  return "behavior_consistency";
}

JudgeMetric parse_judge_metric(const std::string& s) {
  for (auto m : {JudgeMetric::BehaviorConsistency, JudgeMetric::PsychologyConsistency,
                 JudgeMetric::AttackerConsistency, JudgeMetric::Concealment, JudgeMetric::Rationality,
                 JudgeMetric::Diversity})
    if (to_string(m) == s) return m;
  throw std::invalid_argument("unknown judge metric '" + s + "'");
}

std::optional<double> judge_user(const UserTranscript& t, JudgeMetric metric, AgentRuntime& rt) {
  PromptVars vars{
      {"profile", t.profile},
      {"emotion", PromptBook::score(t.emotion_before)},
      {"social_confidence", PromptBook::score(t.social_confidence_before)},
      {"observation", t.observation},
  };
  PromptId id;
  if (metric == JudgeMetric::BehaviorConsistency) {
    id = PromptId::JudgeBehavior;
    vars["action"] = t.action;
  } else if (metric == JudgeMetric::PsychologyConsistency) {
    id = PromptId::JudgePsychology;
    vars["emotion_after"] = PromptBook::score(t.emotion_after);
    vars["social_confidence_after"] = PromptBook::score(t.social_confidence_after);
  } else {
    throw std::invalid_argument("judge_user cannot score " + to_string(metric));
  }
  return ask_score(rt.prompts().fill(id, vars), rt);
}

AttackerJudgement judge_attacker(const std::string& comment, const TrendingTopic& topic, AgentRuntime& rt) {
  if (comment.empty()) throw std::invalid_argument("cannot judge an empty comment");
  const PromptVars vars{{"topic", topic.brief()}, {"comment", comment}};
  AttackerJudgement out;
  out.consistency = ask_score(rt.prompts().fill(PromptId::JudgeConsistency, vars), rt);
  if (auto malice = ask_score(rt.prompts().fill(PromptId::JudgeMalice, vars), rt)) out.concealment = 1.0 - *malice;
  return out;
}

std::optional<double> judge_system(const TrendingTopic& topic, const std::vector<std::string>& comments,
                                   JudgeMetric metric, AgentRuntime& rt) {
  if (comments.empty()) throw std::invalid_argument("system judges need at least one comment");
  PromptId id;
  if (metric == JudgeMetric::Rationality)
    id = PromptId::JudgeRationality;
  else if (metric == JudgeMetric::Diversity)
    id = PromptId::JudgeDiversity;
  else
    throw std::invalid_argument("judge_system cannot score " + to_string(metric));
  std::ostringstream listing;
  for (std::size_t i = 0; i < comments.size(); ++i) listing << i + 1 << ". " << comments[i] << "\n";
  return ask_score(rt.prompts().fill(id, {{"topic", topic.brief()}, {"comments", listing.str()}}), rt);
}

std::optional<double> mean_of_present(const std::vector<std::optional<double>>& values) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& v : values)
    if (v) {
      sum += *v;
      ++n;
    }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

}  // namespace topicsim

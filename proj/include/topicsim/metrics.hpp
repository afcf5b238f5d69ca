#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "topicsim/agents.hpp"
#include "topicsim/environment.hpp"

namespace topicsim {

struct PsychSnapshot {
  double time = 0.0;
  std::string user_id;
  double emotion = 0.5;
  double social_confidence = 0.5;
};

// Mean and population standard deviation.
struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd mean_std(const std::vector<double>& values);

struct EndStats {
  std::size_t n = 0;
  MeanStd emotion;
  MeanStd social_confidence;
};

// Final values per user; users without snapshots keep the initial 0.5.
// Throws std::invalid_argument on an empty user list.
EndStats aggregate_end(const std::vector<PsychSnapshot>& snapshots, const std::vector<std::string>& users);

struct TimelinePoint {
  double bin_end = 0.0;
  MeanStd emotion;
  MeanStd social_confidence;
};

// ceil(horizon / bin_width) bins. Each bin reports every user's latest value
// strictly before the bin end (initial 0.5 before a user's first snapshot).
// With a baseline, its per-bin means are subtracted; stds are left as is.
std::vector<TimelinePoint> timeline(const std::vector<PsychSnapshot>& snapshots, const std::vector<std::string>& users,
                                    double horizon, double bin_width,
                                    const std::vector<TimelinePoint>* baseline = nullptr);

struct GroupStats {
  PreferenceGroup group = PreferenceGroup::Society;
  double share = 0.0;  // fraction of all users in this group
  EndStats stats;
};

// One entry per non-empty group, in group order.
std::vector<GroupStats> group_breakdown(const std::vector<PsychSnapshot>& snapshots,
                                        const std::map<std::string, PreferenceGroup>& groups);

enum class JudgeMetric {
  BehaviorConsistency,
  PsychologyConsistency,
  AttackerConsistency,
  Concealment,
  Rationality,
  Diversity,
};

std::string to_string(JudgeMetric m);
JudgeMetric parse_judge_metric(const std::string& s);

struct JudgeScore {
  JudgeMetric metric = JudgeMetric::BehaviorConsistency;
  std::optional<double> value;  // nullopt when the judge gave no usable score
  std::string judge;
};

// One user step as seen by the user-agent judges.
struct UserTranscript {
  std::string profile;
  double emotion_before = 0.5;
  double social_confidence_before = 0.5;
  std::string observation;
  std::string action;
  double emotion_after = 0.5;
  double social_confidence_after = 0.5;
};

// metric must be BehaviorConsistency or PsychologyConsistency.
std::optional<double> judge_user(const UserTranscript& t, JudgeMetric metric, AgentRuntime& rt);

struct AttackerJudgement {
  std::optional<double> consistency;
  std::optional<double> concealment;  // 1 - normalized malice
};

// Throws std::invalid_argument on an empty comment.
AttackerJudgement judge_attacker(const std::string& comment, const TrendingTopic& topic, AgentRuntime& rt);

// metric must be Rationality or Diversity; needs at least one comment.
std::optional<double> judge_system(const TrendingTopic& topic, const std::vector<std::string>& comments,
                                   JudgeMetric metric, AgentRuntime& rt);

// Mean of the present values; nullopt if none.
std::optional<double> mean_of_present(const std::vector<std::optional<double>>& values);

}  // namespace topicsim

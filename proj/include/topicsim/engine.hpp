#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "topicsim/agents.hpp"
#include "topicsim/attackers.hpp"
#include "topicsim/config.hpp"
#include "topicsim/corpus.hpp"
#include "topicsim/event_log.hpp"
#include "topicsim/metrics.hpp"

namespace topicsim {

struct Participant {
  std::string id;
  std::size_t slot = 0;
  bool attacker = false;
  AttackerPrototype prototype;  // attackers only
  LongTermMemory long_term;     // users only
  PreferenceGroup group = PreferenceGroup::Society;
};

struct Roster {
  std::vector<Participant> participants;
  std::vector<std::string> excluded_profiles;  // distillation failed
};

// Users take corpus profiles in file order; profiles without text are
// distilled from their posts, and those whose distillation fails are skipped.
// Throws ConfigError if the corpus runs out of usable profiles.
Roster assemble_roster(const RunConfig& config, const std::vector<UserProfile>& profiles,
                       const std::array<AttackerPrototype, 3>& prototypes, Provider& provider,
                       const PromptBook& prompts);

struct TopicRun {
  TrendingTopic topic;  // end state
  std::vector<PsychSnapshot> snapshots;
  std::vector<std::string> users;
  std::map<std::string, PreferenceGroup> groups;
  std::size_t sessions = 0;
  int longest_session = 0;
  std::size_t posted = 0;   // comments and replies
  std::size_t flagged = 0;
  std::size_t censor_verdicts = 0;
  std::size_t errors = 0;
};

// Runs one topic's lifecycle to queue exhaustion, appending every record to
// `log`. Each topic starts from fresh short-term memories.
TopicRun simulate_topic(const RunConfig& config, const TrendingTopic& topic, const Roster& roster,
                        const PromptBook& prompts, Provider& provider, EventLogWriter& log);

struct RunResult {
  std::string degree_label;
  std::vector<TopicRun> topics;
  Roster roster;
};

// Full run: loads inputs, simulates every topic and writes the event logs,
// stats.csv, timeline.csv, groups.csv and run.json into config.output_dir.
// `provider` replaces the configured backend when given.
RunResult run_simulation(const RunConfig& config, Provider* provider = nullptr);

// Writes the per-run tables for already simulated topics.
void write_run_outputs(const RunConfig& config, const RunResult& result);

}  // namespace topicsim

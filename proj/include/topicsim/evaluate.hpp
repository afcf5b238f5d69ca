#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "topicsim/event_log.hpp"
#include "topicsim/metrics.hpp"
#include "topicsim/prompts.hpp"
#include "topicsim/provider.hpp"

namespace topicsim {

struct JudgeEntry {
  std::string name;
  ProviderConfig provider;
};

struct EvaluateConfig {
  std::vector<JudgeEntry> judges;
  std::size_t samples = 20;  // per topic and transcript kind
  std::uint64_t seed = 1;
  Language language = Language::English;

  static EvaluateConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
  static EvaluateConfig load(const std::filesystem::path& path);
};

// Material the judges score, extracted from one topic's event log.
struct TopicTranscripts {
  TrendingTopic topic;  // end state
  std::vector<std::pair<std::string, UserTranscript>> user_steps;  // (item id, step)
  std::vector<std::pair<std::string, std::string>> attack_comments;  // (comment id, text)
  std::vector<std::string> visible_comments;
};

TopicTranscripts extract_transcripts(const std::vector<LogRecord>& records);

// Seeded subset of [0, n): at most k indices, in ascending order.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::uint64_t seed, const std::string& label);

struct JudgeRow {
  std::string topic;
  JudgeMetric metric = JudgeMetric::BehaviorConsistency;
  std::string item;
  std::vector<std::optional<double>> scores;  // one per judge
  std::optional<double> average;
};

// Judges every sampled transcript of every log with every judge.
std::vector<JudgeRow> evaluate_logs(const std::vector<std::filesystem::path>& logs, const EvaluateConfig& config,
                                    const std::vector<Provider*>& judges);

// Wide CSV: topic, metric, item, one column per judge, average. Also
// appends a "mean" row per topic and metric.
void write_judges_csv(const std::filesystem::path& path, const std::vector<std::string>& judge_names,
                      const std::vector<JudgeRow>& rows);

}  // namespace topicsim

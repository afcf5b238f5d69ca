#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "topicsim/environment.hpp"

namespace topicsim {

enum class RecordKind { Access, Observe, Impression, Action, Mutation, Reflect, Censor, Error };

std::string to_string(RecordKind k);
RecordKind parse_record_kind(const std::string& s);

struct LogRecord {
  double time = 0.0;
  std::uint64_t seq = 0;
  std::string actor;
  RecordKind kind = RecordKind::Access;
  nlohmann::json payload = nlohmann::json::object();
};

nlohmann::json to_json(const LogRecord& r);
LogRecord record_from_json(const nlohmann::json& j);

// Append-only JSON-lines writer. Sequence numbers are assigned here and
// strictly increase; times must not decrease.
class EventLogWriter {
 public:
  explicit EventLogWriter(const std::filesystem::path& path);

  const LogRecord& append(double time, std::string actor, RecordKind kind, nlohmann::json payload);
  std::uint64_t records() const { return next_seq_; }

 private:
  std::ofstream out_;
  std::filesystem::path path_;
  std::uint64_t next_seq_ = 0;
  double last_time_ = 0.0;
  LogRecord last_;
};

class LogFormatError : public std::runtime_error {
 public:
  LogFormatError(const std::filesystem::path& path, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Throws LogFormatError naming the first malformed line.
std::vector<LogRecord> read_log(const std::filesystem::path& path);

nlohmann::json to_json(const LifecycleParams& p);
LifecycleParams lifecycle_from_json(const nlohmann::json& j, LifecycleParams defaults = {});

// Topic fields; comments are included only on request.
nlohmann::json to_json(const TrendingTopic& t, bool with_comments);
TrendingTopic topic_from_json(const nlohmann::json& j, const LifecycleParams& defaults = {});

nlohmann::json to_json(const Mutation& m);
Mutation mutation_from_json(const nlohmann::json& j);

// Rebuilds the hub from the "topic_open" mutation and every later mutation.
TrendingTopic reconstruct_topic(const std::vector<LogRecord>& records);

}  // namespace topicsim

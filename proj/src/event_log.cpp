#include "topicsim/event_log.hpp"

namespace topicsim {

using nlohmann::json;

namespace {

const char* const kKindNames[] = {"access", "observe", "impression", "action",
                                  "mutation", "reflect", "censor", "error"};

}  // namespace

std::string to_string(RecordKind k) { return kKindNames[static_cast<int>(k)]; }

RecordKind parse_record_kind(const std::string& s) {
  for (int i = 0; i < 8; ++i)
    if (s == kKindNames[i]) return static_cast<RecordKind>(i);
  throw std::invalid_argument("unknown record kind '" + s + "'");
}

json to_json(const LogRecord& r) {
  return json{{"time", r.time}, {"seq", r.seq}, {"actor", r.actor}, {"kind", to_string(r.kind)},
              {"payload", r.payload}};
}

LogRecord record_from_json(const json& j) {
  LogRecord r;
  r.time = j.at("time").get<double>();
  r.seq = j.at("seq").get<std::uint64_t>();
  r.actor = j.at("actor").get<std::string>();
  r.kind = parse_record_kind(j.at("kind").get<std::string>());
  r.payload = j.at("payload");
  return r;
}

EventLogWriter::EventLogWriter(const std::filesystem::path& path) : out_(path, std::ios::trunc), path_(path) {
  if (!out_) throw std::runtime_error("cannot open event log " + path.string());
}

const LogRecord& EventLogWriter::append(double time, std::string actor, RecordKind kind, json payload) {
  if (time < last_time_) throw std::logic_error("event log times must not decrease");
  last_ = LogRecord{time, next_seq_++, std::move(actor), kind, std::move(payload)};
  last_time_ = time;
  out_ << to_json(last_).dump() << '\n';
  if (!out_) throw std::runtime_error("write failed on " + path_.string());
  return last_;
}

LogFormatError::LogFormatError(const std::filesystem::path& path, std::size_t line, const std::string& what)
    : std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + what), line_(line) {}

std::vector<LogRecord> read_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read event log " + path.string());
  std::vector<LogRecord> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      out.push_back(record_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw LogFormatError(path, n, e.what());
    }
  }
  return out;
}

json to_json(const LifecycleParams& p) {
  return json{{"breaking_degree", p.breaking_degree},
              {"peak_onset", p.peak_onset},
              {"plateau_rate", p.plateau_rate},
              {"horizon", p.horizon}};
}

LifecycleParams lifecycle_from_json(const json& j, LifecycleParams p) {
  p.breaking_degree = j.value("breaking_degree", p.breaking_degree);
  p.peak_onset = j.value("peak_onset", p.peak_onset);
  p.plateau_rate = j.value("plateau_rate", p.plateau_rate);
  p.horizon = j.value("horizon", p.horizon);
  return p;
}

json to_json(const TrendingTopic& t, bool with_comments) {
  json j{{"id", t.id},
         {"title", t.title},
         {"summary", t.summary},
         {"full_content", t.full_content},
         {"sentiment", to_string(t.sentiment)},
         {"like_count", t.like_count},
         {"repost_count", t.repost_count},
         {"lifecycle", to_json(t.params)}};
  if (with_comments) {
    json comments = json::array();
    for (const auto& c : t.comments) {
      json replies = json::array();
      for (const auto& r : c.replies)
        replies.push_back({{"id", r.id},
                           {"author", r.author_id},
                           {"text", r.text},
                           {"created_at", r.created_at},
                           {"like_count", r.like_count},
                           {"flagged", r.flagged},
                           {"is_poison", r.is_poison}});
      comments.push_back({{"id", c.id},
                          {"author", c.author_id},
                          {"text", c.text},
                          {"created_at", c.created_at},
                          {"like_count", c.like_count},
                          {"flagged", c.flagged},
                          {"is_poison", c.is_poison},
                          {"replies", replies}});
    }
    j["comments"] = comments;
  }
  return j;
}

TrendingTopic topic_from_json(const json& j, const LifecycleParams& defaults) {
  TrendingTopic t;
  t.id = j.at("id").get<std::string>();
  t.title = j.at("title").get<std::string>();
  t.summary = j.at("summary").get<std::string>();
  t.full_content = j.value("full_content", std::string());
  t.sentiment = parse_sentiment(j.value("sentiment", std::string("neutral")));
  t.like_count = j.value("like_count", std::int64_t{0});
  t.repost_count = j.value("repost_count", std::int64_t{0});
  t.params = j.contains("lifecycle") ? lifecycle_from_json(j.at("lifecycle"), defaults) : defaults;
  t.validate();
  return t;
}

json to_json(const Mutation& m) {
  json j{{"op", to_string(m.op)}};
  if (!m.target_id.empty()) j["target"] = m.target_id;
  if (!m.new_id.empty()) j["new_id"] = m.new_id;
  if (m.op == Mutation::Op::AddComment || m.op == Mutation::Op::AddReply) {
    j["author"] = m.author_id;
    j["text"] = m.text;
    j["created_at"] = m.created_at;
    j["is_poison"] = m.is_poison;
  }
  return j;
}

Mutation mutation_from_json(const json& j) {
  Mutation m;
  m.op = parse_mutation_op(j.at("op").get<std::string>());
  m.target_id = j.value("target", std::string());
  m.new_id = j.value("new_id", std::string());
  m.author_id = j.value("author", std::string());
  m.text = j.value("text", std::string());
  m.created_at = j.value("created_at", 0.0);
  m.is_poison = j.value("is_poison", false);
  return m;
}

TrendingTopic reconstruct_topic(const std::vector<LogRecord>& records) {
  TrendingTopic topic;
  bool opened = false;
  for (const auto& r : records) {
    if (r.kind != RecordKind::Mutation) continue;
    if (r.payload.value("op", std::string()) == "topic_open") {
      topic = topic_from_json(r.payload.at("topic"));
      opened = true;
      continue;
    }
    if (!opened) throw std::runtime_error("mutation before topic_open at seq " + std::to_string(r.seq));
    apply_mutation(topic, mutation_from_json(r.payload));
  }
  if (!opened) throw std::runtime_error("log has no topic_open record");
  return topic;
}

}  // namespace topicsim

#include "topicsim/evaluate.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>

#include "topicsim/rng.hpp"

namespace topicsim {

using nlohmann::json;

EvaluateConfig EvaluateConfig::from_json(const json& j, const std::filesystem::path& base_dir) {
  EvaluateConfig c;
  c.samples = j.value("samples", c.samples);
  c.seed = j.value("seed", c.seed);
  c.language = parse_language(j.value("language", std::string("en")));
  for (const auto& entry : j.at("judges")) {
    JudgeEntry s;
    s.name = entry.at("name").get<std::string>();
    s.provider = ProviderConfig::from_json(entry.at("provider"), base_dir);
    s.provider.validate();
    c.judges.push_back(std::move(s));
  }
  if (c.judges.empty()) throw std::invalid_argument("evaluation needs at least one judge");
  return c;
}

EvaluateConfig EvaluateConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read judge config " + path.string());
  return from_json(json::parse(in), std::filesystem::absolute(path).parent_path());
}

TopicTranscripts extract_transcripts(const std::vector<LogRecord>& records) {
  struct Pending {
    std::string profile;
    double emotion = 0.5;
    double social_confidence = 0.5;
    std::string observation;
    std::string action;
    int steps = 0;
  };
  TopicTranscripts out;
  std::map<std::string, Pending> users;
  for (const auto& r : records) {
    switch (r.kind) {
      case RecordKind::Access:
        if (r.payload.value("role", std::string()) == "user" && r.payload.contains("profile"))
          users[r.actor].profile = r.payload.at("profile").get<std::string>();
        break;
      case RecordKind::Observe:
        if (users.count(r.actor)) users[r.actor].observation = r.payload.at("text").get<std::string>();
        break;
      case RecordKind::Action:
        if (users.count(r.actor)) users[r.actor].action = r.payload.at("description").get<std::string>();
        break;
      case RecordKind::Reflect: {
        Pending& p = users[r.actor];
        UserTranscript t;
        t.profile = p.profile;
        t.emotion_before = p.emotion;
        t.social_confidence_before = p.social_confidence;
        t.observation = p.observation;
        t.action = p.action;
        t.emotion_after = r.payload.at("emotion").get<double>();
        t.social_confidence_after = r.payload.at("social_confidence").get<double>();
        p.emotion = t.emotion_after;
        p.social_confidence = t.social_confidence_after;
        out.user_steps.emplace_back(r.actor + "#" + std::to_string(p.steps++), std::move(t));
        break;
      }
      case RecordKind::Mutation:
        if (r.payload.value("op", std::string()) == "add_comment" && r.payload.value("is_poison", false))
          out.attack_comments.emplace_back(r.payload.at("target").get<std::string>(),
                                           r.payload.at("text").get<std::string>());
        break;
      default: break;
    }
  }
  out.topic = reconstruct_topic(records);
  for (const auto& c : out.topic.comments) {
    if (c.flagged) continue;
    out.visible_comments.push_back(c.text);
    for (const auto& rep : c.replies)
      if (!rep.flagged) out.visible_comments.push_back(rep.text);
  }
  return out;
}

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::uint64_t seed, const std::string& label) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed, label);
  rng.shuffle(idx);
  idx.resize(std::min(n, k));
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<JudgeRow> evaluate_logs(const std::vector<std::filesystem::path>& logs, const EvaluateConfig& config,
                                    const std::vector<Provider*>& judges) {
  const PromptBook prompts(config.language);
  std::vector<JudgeRow> rows;
  for (const auto& path : logs) {
    const TopicTranscripts tr = extract_transcripts(read_log(path));
    const std::string& tid = tr.topic.id;

    std::vector<std::unique_ptr<AgentRuntime>> rts;
    for (std::size_t j = 0; j < judges.size(); ++j)
      rts.push_back(std::make_unique<AgentRuntime>(
          *judges[j], prompts, derive_seed(config.seed, "judge/" + config.judges[j].name + "/" + tid)));

    auto add_row = [&](JudgeMetric metric, const std::string& item, auto&& score_with) {
      JudgeRow row{tid, metric, item, {}, std::nullopt};
      for (auto& rt : rts) row.scores.push_back(score_with(*rt));
      row.average = mean_of_present(row.scores);
      rows.push_back(std::move(row));
    };

    for (std::size_t i : sample_indices(tr.user_steps.size(), config.samples, config.seed, "evaluate/users/" + tid)) {
      const auto& [item, step] = tr.user_steps[i];
      for (auto metric : {JudgeMetric::BehaviorConsistency, JudgeMetric::PsychologyConsistency})
        add_row(metric, item, [&](AgentRuntime& rt) { return judge_user(step, metric, rt); });
    }

    for (std::size_t i :
         sample_indices(tr.attack_comments.size(), config.samples, config.seed, "evaluate/attacks/" + tid)) {
      const auto& [item, text] = tr.attack_comments[i];
      std::vector<AttackerJudgement> verdicts;
      for (auto& rt : rts) verdicts.push_back(judge_attacker(text, tr.topic, *rt));
      JudgeRow consistency{tid, JudgeMetric::AttackerConsistency, item, {}, std::nullopt};
      JudgeRow concealment{tid, JudgeMetric::Concealment, item, {}, std::nullopt};
      for (const auto& v : verdicts) {
        consistency.scores.push_back(v.consistency);
        concealment.scores.push_back(v.concealment);
      }
      consistency.average = mean_of_present(consistency.scores);
      concealment.average = mean_of_present(concealment.scores);
      rows.push_back(std::move(consistency));
      rows.push_back(std::move(concealment));
    }

    if (!tr.visible_comments.empty())
      for (auto metric : {JudgeMetric::Rationality, JudgeMetric::Diversity})
        add_row(metric, "discussion",
                [&](AgentRuntime& rt) { return judge_system(tr.topic, tr.visible_comments, metric, rt); });
  }
  return rows;
}

void write_judges_csv(const std::filesystem::path& path, const std::vector<std::string>& judge_names,
                      const std::vector<JudgeRow>& rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  auto cell = [](const std::optional<double>& v) -> std::string {
    if (!v) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", *v);
    return buf;
  };
  out << "topic,metric,item";
  for (const auto& n : judge_names) out << "," << n;
  out << ",average\n";

  auto write = [&](const JudgeRow& r) {
    out << r.topic << "," << to_string(r.metric) << "," << r.item;
    for (const auto& s : r.scores) out << "," << cell(s);
    out << "," << cell(r.average) << "\n";
  };

  std::vector<std::pair<std::string, JudgeMetric>> order;
  std::map<std::pair<std::string, JudgeMetric>, std::vector<const JudgeRow*>> groups;
  for (const auto& r : rows) {
    write(r);
    auto key = std::make_pair(r.topic, r.metric);
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(&r);
  }
  for (const auto& key : order) {
    JudgeRow mean{key.first, key.second, "mean", {}, std::nullopt};
    for (std::size_t j = 0; j < judge_names.size(); ++j) {
      std::vector<std::optional<double>> col;
      for (const JudgeRow* r : groups[key]) col.push_back(r->scores[j]);
      mean.scores.push_back(mean_of_present(col));
    }
    std::vector<std::optional<double>> avgs;
    for (const JudgeRow* r : groups[key]) avgs.push_back(r->average);
    mean.average = mean_of_present(avgs);
    write(mean);
  }
}

}  // namespace topicsim

#include "topicsim/engine.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <unordered_map>

#include "topicsim/censorship.hpp"
#include "topicsim/rng.hpp"
#include "topicsim/temporal.hpp"

namespace topicsim {

using nlohmann::json;

Roster assemble_roster(const RunConfig& config, const std::vector<UserProfile>& profiles,
                       const std::array<AttackerPrototype, 3>& prototypes, Provider& provider,
                       const PromptBook& prompts) {
  Rng rng(config.seed, "roster");
  const auto slots = build_roster(config.n_participants, config.attack_degree, config.kinds_mix, rng);

  Roster roster;
  std::size_t next_profile = 0;
  for (std::size_t slot = 0; slot < slots.size(); ++slot) {
    Participant p;
    p.slot = slot;
    if (slots[slot].attacker) {
      p.attacker = true;
      p.id = "attacker-" + std::to_string(slot);
      p.prototype = prototypes[static_cast<std::size_t>(slots[slot].kind)];
      roster.participants.push_back(std::move(p));
      continue;
    }
    while (true) {
      if (next_profile >= profiles.size())
        throw ConfigError("profile corpus has too few usable profiles for " +
                          std::to_string(config.n_participants) + " participants");
      const UserProfile& prof = profiles[next_profile++];
      p.id = prof.id;
      p.group = prof.group;
      if (!prof.profile_text.empty()) {
        p.long_term = LongTermMemory{prof.profile_text, static_cast<int>(prof.posts.size())};
        break;
      }
      AgentRuntime rt(provider, prompts, derive_seed(config.seed, "distill/" + prof.id));
      try {
        p.long_term = distill_profile(prof.posts, rt);
        break;
      } catch (const ProviderFailure&) {
        roster.excluded_profiles.push_back(prof.id);
      }
    }
    roster.participants.push_back(std::move(p));
  }
  return roster;
}

namespace {

json observation_json(const Observation& obs, double clock) {
  json items = json::array();
  for (const auto& item : obs.items) items.push_back(item.id);
  return json{{"page", to_string(obs.page)}, {"clock", clock}, {"text", obs.text}, {"items", items}};
}

json action_json(const AgentAction& act, double clock, double duration) {
  json j{{"action", action_name(act)}, {"description", describe_action(act)}, {"clock", clock},
         {"duration", duration}};
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, action::Comment>) j["text"] = a.text;
        if constexpr (std::is_same_v<T, action::ViewComment>) j["index"] = a.index;
        if constexpr (std::is_same_v<T, action::Reply>) {
          j["index"] = a.index;
          j["text"] = a.text;
        }
      },
      act);
  return j;
}

class TopicSimulation {
 public:
  TopicSimulation(const RunConfig& config, const TrendingTopic& topic, const Roster& roster,
                  const PromptBook& prompts, Provider& provider, EventLogWriter& log)
      : config_(config),
        roster_(roster),
        prompts_(prompts),
        provider_(provider),
        log_(log),
        sampler_(topic.params),
        queue_(topic.params.horizon),
        censor_rt_(provider, prompts, derive_seed(config.seed, "censor/" + topic.id)) {
    run_.topic = topic;
    run_.topic.comments.clear();
  }

  TopicRun run() {
    const std::string& tid = run_.topic.id;
    log_.append(0.0, "hub", RecordKind::Mutation, json{{"op", "topic_open"}, {"topic", to_json(run_.topic, false)}});

    for (const auto& p : roster_.participants) {
      State s;
      s.participant = &p;
      s.memory.long_term = p.long_term;
      s.rt = std::make_unique<AgentRuntime>(provider_, prompts_, derive_seed(config_.seed, "agent/" + tid + "/" + p.id));
      s.access = std::make_unique<Rng>(config_.seed, "access/" + tid + "/" + std::to_string(p.slot));
      const double first = sampler_.sample_first_access(1, *s.access).front();
      queue_.push(first, p.id);
      if (!p.attacker) {
        run_.users.push_back(p.id);
        run_.groups[p.id] = p.group;
      }
      index_[p.id] = states_.size();
      states_.push_back(std::move(s));
    }

    while (auto ev = queue_.pop()) {
      State& s = states_[index_.at(ev->actor_id)];
      const double end = s.participant->attacker ? attacker_session(s, ev->time) : user_session(s, ev->time);
      if (auto next = sampler_.sample_next_access(end, config_.revisit_coeff, *s.access))
        queue_.push(*next, ev->actor_id);
    }
    return std::move(run_);
  }

 private:
  struct State {
    const Participant* participant = nullptr;
    AgentMemory memory;
    std::unique_ptr<AgentRuntime> rt;
    std::unique_ptr<Rng> access;
    int sessions = 0;
  };

  void flush_issues(double t, const std::string& actor, AgentRuntime& rt) {
    for (auto& issue : rt.take_issues()) {
      log_.append(t, actor, RecordKind::Error, json{{"message", issue}});
      ++run_.errors;
    }
  }

  void error(double t, const std::string& actor, const std::string& message) {
    log_.append(t, actor, RecordKind::Error, json{{"message", message}});
    ++run_.errors;
  }

  void access_record(State& s, double t) {
    const Participant& p = *s.participant;
    json payload{{"role", p.attacker ? "attacker" : "user"}, {"session", s.sessions}};
    if (p.attacker) {
      payload["kind"] = to_string(p.prototype.kind);
    } else {
      payload["group"] = to_string(p.group);
      if (s.sessions == 0) payload["profile"] = p.long_term.profile_text;
    }
    log_.append(t, p.id, RecordKind::Access, std::move(payload));
    ++s.sessions;
    ++run_.sessions;
  }

  // Logs and applies the censor verdict for every new comment or reply.
  void record_mutations(double t, const std::string& actor, const std::vector<Mutation>& mutations) {
    for (const auto& m : mutations) {
      log_.append(t, actor, RecordKind::Mutation, to_json(m));
      const bool posted = m.op == Mutation::Op::AddComment || m.op == Mutation::Op::AddReply;
      if (!posted) continue;
      ++run_.posted;
      if (!config_.censorship.enabled) continue;
      const std::string& id = m.op == Mutation::Op::AddComment ? m.target_id : m.new_id;
      const CensorVerdict v = censor(id, m.text, run_.topic, m.created_at, config_.censorship, censor_rt_);
      json payload{{"comment", v.comment_id}, {"malice", v.malice}, {"flagged", v.flagged},
                   {"judged_at", v.judged_at}};
      if (v.error) payload["error"] = *v.error;
      log_.append(t, "censor", RecordKind::Censor, std::move(payload));
      ++run_.censor_verdicts;
      if (v.flagged) {
        Mutation flag{Mutation::Op::Flag, id};
        apply_mutation(run_.topic, flag);
        log_.append(t, "censor", RecordKind::Mutation, to_json(flag));
        ++run_.flagged;
      }
    }
  }

  double user_session(State& s, double t) {
    const std::string& id = s.participant->id;
    access_record(s, t);
    Session session{id, t, t, BrowsingPage{}, 0, config_.max_actions};
    AgentRuntime& rt = *s.rt;

    while (true) {
      Observation obs;
      try {
        obs = render(run_.topic, session.page, session.clock, config_.page_size);
      } catch (const NavigationError& e) {
        error(t, id, e.what());
        session.page = MainPage{0};
        obs = render(run_.topic, session.page, session.clock, config_.page_size);
      }
      log_.append(t, id, RecordKind::Observe, observation_json(obs, session.clock));

      const std::string impression = perceive(obs.text, s.memory, rt);
      log_.append(t, id, RecordKind::Impression, json{{"text", impression}});

      AgentAction act = decide(obs, s.memory, rt);
      flush_issues(t, id, rt);
      const double clock = session.clock;
      ActionOutcome outcome;
      try {
        outcome = apply_action(session, act, run_.topic, obs, config_.durations, config_.page_size);
      } catch (const ProtocolError& e) {
        error(t, id, std::string("protocol violation: ") + e.what());
        act = obs.page == PageKind::CommentDetail ? AgentAction{action::Back{}} : AgentAction{action::Leave{}};
        outcome = apply_action(session, act, run_.topic, obs, config_.durations, config_.page_size);
      }
      log_.append(t, id, RecordKind::Action, action_json(act, clock, outcome.duration));
      record_mutations(t, id, outcome.mutations);

      s.memory.short_term = reflect(impression, act, s.memory, rt);
      flush_issues(t, id, rt);
      const auto& m = s.memory.short_term;
      log_.append(t, id, RecordKind::Reflect,
                  json{{"clock", session.clock},
                       {"emotion", m.emotion},
                       {"social_confidence", m.social_confidence},
                       {"summary", m.summary},
                       {"opinion", m.opinion}});
      run_.snapshots.push_back({session.clock, id, m.emotion, m.social_confidence});
      if (outcome.terminal) break;
    }
    run_.longest_session = std::max(run_.longest_session, session.actions_taken);
    return session.clock;
  }

  double attacker_session(State& s, double t) {
    const std::string& id = s.participant->id;
    access_record(s, t);
    Session session{id, t, t, MainPage{0}, 0, 1};
    const Observation obs = render(run_.topic, session.page, session.clock, config_.page_size);
    log_.append(t, id, RecordKind::Observe, observation_json(obs, session.clock));

    std::string text;
    try {
      text = generate_poison(s.participant->prototype, obs.text, *s.rt);
    } catch (const ProviderFailure& e) {
      error(t, id, std::string("attack aborted: ") + e.what());
      return session.clock;
    }
    const AgentAction act = action::Comment{text};
    const double clock = session.clock;
    const ActionOutcome outcome =
        apply_action(session, act, run_.topic, obs, config_.durations, config_.page_size, true);
    log_.append(t, id, RecordKind::Action, action_json(act, clock, outcome.duration));
    record_mutations(t, id, outcome.mutations);
    run_.longest_session = std::max(run_.longest_session, session.actions_taken);
    return session.clock;
  }

  const RunConfig& config_;
  const Roster& roster_;
  const PromptBook& prompts_;
  Provider& provider_;
  EventLogWriter& log_;
  AccessSampler sampler_;
  EventQueue queue_;
  AgentRuntime censor_rt_;
  TopicRun run_;
  std::vector<State> states_;
  std::unordered_map<std::string, std::size_t> index_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

TopicRun simulate_topic(const RunConfig& config, const TrendingTopic& topic, const Roster& roster,
                        const PromptBook& prompts, Provider& provider, EventLogWriter& log) {
  return TopicSimulation(config, topic, roster, prompts, provider, log).run();
}

RunResult run_simulation(const RunConfig& config, Provider* provider) {
  config.validate();
  const auto topics = load_topics(config.topics, config.lifecycle);
  const auto profiles = load_profiles(config.profiles);
  std::array<AttackerPrototype, 3> prototypes;
  if (config.attack_degree != AttackDegree::SE) prototypes = load_prototypes(config.prototypes_dir);
  std::filesystem::create_directories(config.output_dir);

  std::unique_ptr<ProviderStack> stack;
  if (provider == nullptr) {
    stack = std::make_unique<ProviderStack>(config.provider);
    provider = &stack->provider();
  }
  const PromptBook prompts(config.language);

  RunResult result;
  result.degree_label = config.degree_label();
  result.roster = assemble_roster(config, profiles, prototypes, *provider, prompts);
  for (const auto& topic : topics) {
    EventLogWriter log(config.output_dir / ("events_" + topic.id + ".jsonl"));
    result.topics.push_back(simulate_topic(config, topic, result.roster, prompts, *provider, log));
  }
  write_run_outputs(config, result);
  return result;
}

void write_run_outputs(const RunConfig& config, const RunResult& result) {
  const auto& dir = config.output_dir;
  std::filesystem::create_directories(dir);
  const std::string& degree = result.degree_label;

  // Per-topic end stats, then mean and spread across topics per sentiment.
  auto stats = open_out(dir / "stats.csv");
  stats << "level,key,degree,n,emotion_avg,emotion_avg_sd,emotion_div,emotion_div_sd,"
           "sc_avg,sc_avg_sd,sc_div,sc_div_sd\n";
  std::map<std::string, std::vector<EndStats>> by_sentiment;
  for (const auto& t : result.topics) {
    const EndStats s = aggregate_end(t.snapshots, t.users);
    stats << "topic," << t.topic.id << "," << degree << "," << s.n << "," << fmt(s.emotion.mean) << ",0,"
          << fmt(s.emotion.std) << ",0," << fmt(s.social_confidence.mean) << ",0," << fmt(s.social_confidence.std)
          << ",0\n";
    by_sentiment[to_string(t.topic.sentiment)].push_back(s);
    by_sentiment["all"].push_back(s);
  }
  for (const char* key : {"positive", "negative", "neutral", "all"}) {
    auto it = by_sentiment.find(key);
    if (it == by_sentiment.end()) continue;
    std::vector<double> ea, ed, sa, sd;
    for (const auto& s : it->second) {
      ea.push_back(s.emotion.mean);
      ed.push_back(s.emotion.std);
      sa.push_back(s.social_confidence.mean);
      sd.push_back(s.social_confidence.std);
    }
    const MeanStd a = mean_std(ea), b = mean_std(ed), c = mean_std(sa), d = mean_std(sd);
    stats << "sentiment," << key << "," << degree << "," << it->second.size() << "," << fmt(a.mean) << ","
          << fmt(a.std) << "," << fmt(b.mean) << "," << fmt(b.std) << "," << fmt(c.mean) << "," << fmt(c.std)
          << "," << fmt(d.mean) << "," << fmt(d.std) << "\n";
  }

  auto tl = open_out(dir / "timeline.csv");
  tl << "topic,degree,bin_end,emotion_mean,emotion_std,sc_mean,sc_std\n";
  std::map<std::size_t, std::vector<TimelinePoint>> per_bin;
  std::map<std::size_t, double> bin_ends;
  for (const auto& t : result.topics) {
    const auto series = timeline(t.snapshots, t.users, t.topic.params.horizon, config.timeline_bin);
    for (std::size_t b = 0; b < series.size(); ++b) {
      const auto& p = series[b];
      tl << t.topic.id << "," << degree << "," << fmt(p.bin_end) << "," << fmt(p.emotion.mean) << ","
         << fmt(p.emotion.std) << "," << fmt(p.social_confidence.mean) << "," << fmt(p.social_confidence.std)
         << "\n";
      per_bin[b].push_back(p);
      bin_ends[b] = p.bin_end;
    }
  }
  for (const auto& [b, points] : per_bin) {
    std::vector<double> em, es, sm, ss;
    for (const auto& p : points) {
      em.push_back(p.emotion.mean);
      es.push_back(p.emotion.std);
      sm.push_back(p.social_confidence.mean);
      ss.push_back(p.social_confidence.std);
    }
    tl << "all," << degree << "," << fmt(bin_ends[b]) << "," << fmt(mean_std(em).mean) << ","
       << fmt(mean_std(es).mean) << "," << fmt(mean_std(sm).mean) << "," << fmt(mean_std(ss).mean) << "\n";
  }

  auto groups = open_out(dir / "groups.csv");
  groups << "topic,degree,group,share,n,emotion_avg,emotion_div,sc_avg,sc_div\n";
  std::map<PreferenceGroup, std::vector<GroupStats>> per_group;
  for (const auto& t : result.topics) {
    for (const auto& g : group_breakdown(t.snapshots, t.groups)) {
      groups << t.topic.id << "," << degree << "," << to_string(g.group) << "," << fmt(g.share) << "," << g.stats.n
             << "," << fmt(g.stats.emotion.mean) << "," << fmt(g.stats.emotion.std) << ","
             << fmt(g.stats.social_confidence.mean) << "," << fmt(g.stats.social_confidence.std) << "\n";
      per_group[g.group].push_back(g);
    }
  }
  for (auto g : kAllPreferenceGroups) {
    auto it = per_group.find(g);
    if (it == per_group.end()) continue;
    std::vector<double> share, ea, ed, sa, sd;
    std::size_t n = 0;
    for (const auto& s : it->second) {
      share.push_back(s.share);
      ea.push_back(s.stats.emotion.mean);
      ed.push_back(s.stats.emotion.std);
      sa.push_back(s.stats.social_confidence.mean);
      sd.push_back(s.stats.social_confidence.std);
      n += s.stats.n;
    }
    groups << "all," << degree << "," << to_string(g) << "," << fmt(mean_std(share).mean) << "," << n << ","
           << fmt(mean_std(ea).mean) << "," << fmt(mean_std(ed).mean) << "," << fmt(mean_std(sa).mean) << ","
           << fmt(mean_std(sd).mean) << "\n";
  }

  json participants = json::array();
  for (const auto& p : result.roster.participants) {
    json j{{"id", p.id}, {"slot", p.slot}, {"role", p.attacker ? "attacker" : "user"}};
    if (p.attacker)
      j["kind"] = to_string(p.prototype.kind);
    else
      j["group"] = to_string(p.group);
    participants.push_back(std::move(j));
  }
  json topics = json::array();
  for (const auto& t : result.topics)
    topics.push_back({{"id", t.topic.id},
                      {"sentiment", to_string(t.topic.sentiment)},
                      {"log", "events_" + t.topic.id + ".jsonl"},
                      {"sessions", t.sessions},
                      {"posted", t.posted},
                      {"flagged", t.flagged},
                      {"errors", t.errors}});
  const json meta{{"degree", degree},
                  {"attack_degree", to_string(config.attack_degree)},
                  {"censorship", config.censorship.enabled},
                  {"seed", config.seed},
                  {"n_participants", config.n_participants},
                  {"timeline_bin", config.timeline_bin},
                  {"topics", topics},
                  {"participants", participants},
                  {"excluded_profiles", result.roster.excluded_profiles}};
  open_out(dir / "run.json") << meta.dump(2) << "\n";
}

}  // namespace topicsim

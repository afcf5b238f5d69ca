#include "topicsim/provider.hpp"

#include <openssl/sha.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace topicsim {

namespace {

constexpr RequestTag kAllTags[] = {
    RequestTag::Perceive,       RequestTag::Decide,    RequestTag::Select,         RequestTag::Compose,
    RequestTag::ReflectEmotion, RequestTag::ReflectSc, RequestTag::ReflectSummary, RequestTag::ReflectOpinion,
    RequestTag::Attack,         RequestTag::Judge,     RequestTag::Distill,        RequestTag::Censor,
};

std::string hex(const unsigned char* bytes, std::size_t n) {
  static const char* digits = "0123456789abcdef";
  std::string out(2 * n, '0');
  for (std::size_t i = 0; i < n; ++i) {
    out[2 * i] = digits[bytes[i] >> 4];
    out[2 * i + 1] = digits[bytes[i] & 0xf];
  }
  return out;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
    s.replace(pos, from.size(), to);
}

Backend parse_backend(const std::string& s) {
  if (s == "live") return Backend::Live;
  if (s == "mock") return Backend::Mock;
  if (s == "replay") return Backend::Replay;
  throw std::invalid_argument("unknown provider backend '" + s + "'");
}

}  // namespace

std::string to_string(RequestTag tag) {
  switch (tag) {
    case RequestTag::Perceive: return "perceive";
    case RequestTag::Decide: return "decide";
    case RequestTag::Select: return "select";
    case RequestTag::Compose: return "compose";
    case RequestTag::ReflectEmotion: return "reflect_emotion";
    case RequestTag::ReflectSc: return "reflect_sc";
    case RequestTag::ReflectSummary: return "reflect_summary";
    case RequestTag::ReflectOpinion: return "reflect_opinion";
    case RequestTag::Attack: return "attack";
    case RequestTag::Judge: return "judge";
    case RequestTag::Distill: return "distill";
    case RequestTag::Censor: return "censor";
  }
  return "perceive";
}

RequestTag parse_request_tag(const std::string& s) {
  for (auto t : kAllTags)
    if (to_string(t) == s) return t;
  throw std::invalid_argument("unknown request tag '" + s + "'");
}

double default_temperature(RequestTag tag) {
  return tag == RequestTag::Judge || tag == RequestTag::Censor ? 0.0 : 0.7;
}

std::string CompletionRequest::digest() const {
  std::string canonical;
  canonical.reserve(system_text.size() + user_text.size() + 64);
  canonical += to_string(tag);
  canonical += '\0';
  canonical += format_number(temperature);
  canonical += '\0';
  canonical += std::to_string(seed);
  canonical += '\0';
  canonical += system_text;
  canonical += '\0';
  canonical += user_text;
  unsigned char md[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(canonical.data()), canonical.size(), md);
  return hex(md, sizeof md);
}

nlohmann::json to_json(const CompletionRequest& r) {
  return {{"tag", to_string(r.tag)},
          {"temperature", r.temperature},
          {"seed", r.seed},
          {"system", r.system_text},
          {"user", r.user_text}};
}

// ---------------------------------------------------------------- mock

MockProvider::MockProvider(const nlohmann::json& script) {
  if (!script.is_object() || !script.contains("rules") || !script["rules"].is_array())
    throw std::invalid_argument("mock script needs a 'rules' array");
  default_text_ = script.value("default", std::string());
  for (const auto& j : script["rules"]) {
    Rule r;
    if (j.contains("tag")) r.tag = parse_request_tag(j["tag"].get<std::string>());
    r.contains = j.value("contains", std::vector<std::string>{});
    r.not_contains = j.value("not_contains", std::vector<std::string>{});
    if (j.contains("capture")) r.capture.emplace(j["capture"].get<std::string>());
    if (j.contains("text")) r.text = j["text"].get<std::string>();
    if (j.contains("choices")) {
      for (const auto& c : j["choices"]) {
        if (c.is_string())
          r.choices.push_back({c.get<std::string>(), 1.0});
        else
          r.choices.push_back({c.at("text").get<std::string>(), c.value("weight", 1.0)});
      }
    }
    if (j.contains("adjust")) {
      const auto& a = j["adjust"];
      r.adjust_pattern.emplace(a.at("pattern").get<std::string>());
      r.adjust_delta = a.value("delta", 0.0);
      r.adjust_decimal = a.value("format", std::string("percent")) == "decimal";
    }
    r.fail = j.value("fail", false);
    if (!r.text && r.choices.empty() && !r.adjust_pattern && !r.fail)
      throw std::invalid_argument("mock rule needs one of text, choices, adjust or fail");
    rules_.push_back(std::move(r));
  }
}

nlohmann::json MockProvider::load_script(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mock script " + path.string());
  return nlohmann::json::parse(in);
}

std::string MockProvider::complete(const CompletionRequest& request) {
  ++calls_;
  const std::string prompt = request.system_text + "\n" + request.user_text;
  const std::string digest = request.digest();

  for (const auto& rule : rules_) {
    if (rule.tag && *rule.tag != request.tag) continue;
    bool ok = true;
    for (const auto& s : rule.contains)
      if (prompt.find(s) == std::string::npos) ok = false;
    for (const auto& s : rule.not_contains)
      if (prompt.find(s) != std::string::npos) ok = false;
    if (!ok) continue;

    std::smatch groups;
    if (rule.capture && !std::regex_search(prompt, groups, *rule.capture)) continue;

    std::smatch adjust_match;
    if (rule.adjust_pattern && !std::regex_search(prompt, adjust_match, *rule.adjust_pattern)) continue;

    if (rule.fail) throw ProviderError("mock rule requested a failure");

    if (rule.adjust_pattern) {
      double v = std::strtod(adjust_match.str(1).c_str(), nullptr) + rule.adjust_delta;
      v = std::clamp(v, 0.0, 1.0);
      char buf[32];
      if (rule.adjust_decimal)
        std::snprintf(buf, sizeof buf, "%.2f", v);
      else
        std::snprintf(buf, sizeof buf, "%ld%%", std::lround(v * 100.0));
      return buf;
    }

    std::string out;
    if (!rule.choices.empty()) {
      double total = 0.0;
      for (const auto& c : rule.choices) total += c.weight;
      const std::uint64_t h = std::stoull(digest.substr(0, 15), nullptr, 16);
      double x = total * static_cast<double>(h) / static_cast<double>(1ULL << 60);
      out = rule.choices.back().text;
      for (const auto& c : rule.choices) {
        if (x < c.weight) {
          out = c.text;
          break;
        }
        x -= c.weight;
      }
    } else {
      out = *rule.text;
    }
    replace_all(out, "{hash}", digest.substr(0, 8));
    replace_all(out, "{seed}", std::to_string(request.seed));
    for (std::size_t g = 1; g < 10; ++g) {
      const std::string key = "{" + std::to_string(g) + "}";
      replace_all(out, key, rule.capture && g < groups.size() ? groups.str(g) : std::string());
    }
    return out;
  }
  return default_text_;
}

// ---------------------------------------------------------------- retry

RetryingProvider::RetryingProvider(Provider& inner, RetryPolicy policy, Sleeper sleeper)
    : inner_(inner), policy_(policy), sleep_(std::move(sleeper)) {
  if (!sleep_) {
    sleep_ = [](double s) {
      if (s > 0) std::this_thread::sleep_for(std::chrono::duration<double>(s));
    };
  }
}

std::string RetryingProvider::complete(const CompletionRequest& request) {
  std::string last_error;
  for (int attempt = 0; attempt <= policy_.max_retries; ++attempt) {
    if (attempt > 0) sleep_(policy_.backoff_base_seconds * std::ldexp(1.0, attempt - 1));
    try {
      return inner_.complete(request);
    } catch (const ProviderError& e) {
      last_error = e.what();
    }
  }
  throw ProviderFailure("provider failed after " + std::to_string(policy_.max_retries + 1) +
                        " attempts: " + last_error);
}

// ---------------------------------------------------------------- replay

ReplayProvider::ReplayProvider(std::filesystem::path cache_path, Provider* fallback)
    : path_(std::move(cache_path)), fallback_(fallback) {
  std::ifstream in(path_);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      cache_.emplace(j.at("digest").get<std::string>(), j.at("response").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(path_.string() + ":" + std::to_string(lineno) + ": bad cache line: " + e.what());
    }
  }
}

std::string ReplayProvider::complete(const CompletionRequest& request) {
  const std::string digest = request.digest();
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(digest); it != cache_.end()) {
      ++hits_;
      return it->second;
    }
    ++misses_;
  }
  if (fallback_ == nullptr) throw ProviderFailure("replay cache miss for " + digest.substr(0, 12));
  std::string response = fallback_->complete(request);

  std::lock_guard lock(mu_);
  if (cache_.emplace(digest, response).second) {
    nlohmann::json line = {{"digest", digest}, {"request", to_json(request)}, {"response", response}};
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot append to cache " + path_.string());
    out << line.dump() << '\n';
  }
  return response;
}

// ---------------------------------------------------------------- config

ProviderConfig ProviderConfig::from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  auto resolve = [&](const std::string& p) -> std::filesystem::path {
    if (p.empty()) return {};
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  ProviderConfig c;
  c.backend = parse_backend(j.value("backend", std::string("mock")));
  c.endpoint = j.value("endpoint", std::string());
  c.model = j.value("model", std::string());
  c.api_key_env = j.value("api_key_env", std::string());
  c.timeout_seconds = j.value("timeout_seconds", 60.0);
  c.max_retries = j.value("max_retries", 3);
  c.backoff_seconds = j.value("backoff_seconds", 1.0);
  c.mock_script = resolve(j.value("script", std::string()));
  c.cache_path = resolve(j.value("cache", std::string()));
  if (j.contains("fallback") && !j["fallback"].is_null() && j["fallback"] != "none")
    c.replay_fallback = parse_backend(j["fallback"].get<std::string>());
  return c;
}

void ProviderConfig::validate() const {
  auto check = [&](Backend b) {
    switch (b) {
      case Backend::Live:
        if (endpoint.empty()) throw std::invalid_argument("live provider needs an endpoint");
        if (api_key_env.empty()) throw std::invalid_argument("live provider needs api_key_env");
        break;
      case Backend::Mock:
        if (mock_script.empty()) throw std::invalid_argument("mock provider needs a script");
        break;
      case Backend::Replay:
        if (cache_path.empty()) throw std::invalid_argument("replay provider needs a cache path");
        break;
    }
  };
  check(backend);
  if (backend == Backend::Replay && replay_fallback) {
    if (*replay_fallback == Backend::Replay) throw std::invalid_argument("replay cannot fall back to replay");
    check(*replay_fallback);
  }
  if (max_retries < 0) throw std::invalid_argument("max_retries must be non-negative");
  if (timeout_seconds <= 0) throw std::invalid_argument("timeout_seconds must be positive");
}

ProviderStack::ProviderStack(const ProviderConfig& config) {
  config.validate();
  top_ = build(config.backend, config);
}

Provider* ProviderStack::build(Backend backend, const ProviderConfig& config) {
  switch (backend) {
    case Backend::Mock: {
      auto mock = std::make_unique<MockProvider>(MockProvider::load_script(config.mock_script));
      mock_ = mock.get();
      owned_.push_back(std::move(mock));
      owned_.push_back(
          std::make_unique<RetryingProvider>(*mock_, RetryPolicy{config.max_retries, config.backoff_seconds}));
      return owned_.back().get();
    }
    case Backend::Live: {
      const char* key = std::getenv(config.api_key_env.c_str());
      if (key == nullptr || *key == '\0')
        throw std::invalid_argument("environment variable " + config.api_key_env + " is not set");
      owned_.push_back(std::make_unique<HttpProvider>(
          HttpEndpoint{config.endpoint, config.model, key, config.timeout_seconds}));
      Provider& http = *owned_.back();
      owned_.push_back(std::make_unique<RetryingProvider>(http, RetryPolicy{config.max_retries, config.backoff_seconds}));
      return owned_.back().get();
    }
    case Backend::Replay: {
      Provider* fallback = config.replay_fallback ? build(*config.replay_fallback, config) : nullptr;
      auto replay = std::make_unique<ReplayProvider>(config.cache_path, fallback);
      replay_ = replay.get();
      owned_.push_back(std::move(replay));
      return owned_.back().get();
    }
  }
  throw std::logic_error("unreachable backend");
}

}  // namespace topicsim

#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <regex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace topicsim {

enum class RequestTag {
  Perceive,
  Decide,
  Select,   // pick a comment to view or reply to
  Compose,  // comment and reply text
  ReflectEmotion,
  ReflectSc,
  ReflectSummary,
  ReflectOpinion,
  Attack,
  Judge,
  Distill,
  Censor,
};

std::string to_string(RequestTag tag);
RequestTag parse_request_tag(const std::string& s);

// Default sampling temperature for a tag: 0 for judging and censoring, 0.7
// for generation.
double default_temperature(RequestTag tag);

struct CompletionRequest {
  std::string system_text;
  std::string user_text;
  double temperature = 0.7;
  std::uint64_t seed = 0;
  RequestTag tag = RequestTag::Perceive;

  // Hex SHA-256 over every field.
  std::string digest() const;
};

nlohmann::json to_json(const CompletionRequest& r);

// Transient backend error; eligible for retry.
class ProviderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Retries exhausted or no backend could answer. Callers degrade.
class ProviderFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Provider {
 public:
  virtual ~Provider() = default;
  virtual std::string complete(const CompletionRequest& request) = 0;
};

// Scripted backend. The reply is a pure function of the request and the
// script: the first matching rule decides.
//
// Rule fields (all optional):
//   tag          request tag the rule applies to
//   contains     substrings that must all occur in the prompt
//   not_contains substrings that must not occur
//   capture      regex that must match; groups fill {1}..{9} in `text`
//   text         reply template; {hash} is the first 8 hex digits of the
//                request digest, {seed} the request seed
//   choices      list of strings or {text, weight}; picked by digest
//   adjust       {pattern, delta, format}: reads the number captured by
//                `pattern`, adds delta, clamps to [0, 1] and replies as a
//                percentage ("percent", default) or decimal ("decimal")
//   fail         true to raise a transient ProviderError
class MockProvider : public Provider {
 public:
  explicit MockProvider(const nlohmann::json& script);
  static nlohmann::json load_script(const std::filesystem::path& path);

  std::string complete(const CompletionRequest& request) override;

  std::uint64_t calls() const { return calls_.load(); }

 private:
  struct Choice {
    std::string text;
    double weight = 1.0;
  };
  struct Rule {
    std::optional<RequestTag> tag;
    std::vector<std::string> contains;
    std::vector<std::string> not_contains;
    std::optional<std::regex> capture;
    std::optional<std::string> text;
    std::vector<Choice> choices;
    std::optional<std::regex> adjust_pattern;
    double adjust_delta = 0.0;
    bool adjust_decimal = false;
    bool fail = false;
  };

  std::vector<Rule> rules_;
  std::string default_text_;
  std::atomic<std::uint64_t> calls_{0};
};

struct RetryPolicy {
  int max_retries = 3;
  double backoff_base_seconds = 1.0;
};

// Retries ProviderError with exponential backoff; throws ProviderFailure once
// the attempts run out.
class RetryingProvider : public Provider {
 public:
  using Sleeper = std::function<void(double seconds)>;

  RetryingProvider(Provider& inner, RetryPolicy policy, Sleeper sleeper = {});
  std::string complete(const CompletionRequest& request) override;

 private:
  Provider& inner_;
  RetryPolicy policy_;
  Sleeper sleep_;
};

// Content-addressed record/replay cache stored as JSON lines of
// {digest, request, response}. A miss falls through to the fallback backend
// and is appended; without a fallback a miss is a ProviderFailure.
class ReplayProvider : public Provider {
 public:
  ReplayProvider(std::filesystem::path cache_path, Provider* fallback);
  std::string complete(const CompletionRequest& request) override;

  std::uint64_t hits() const { return hits_; }
  std::uint64_t misses() const { return misses_; }

 private:
  std::filesystem::path path_;
  Provider* fallback_;
  std::mutex mu_;
  std::unordered_map<std::string, std::string> cache_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
};

struct HttpEndpoint {
  std::string url;  // e.g. https://api.example.com/v1/chat/completions
  std::string model;
  std::string api_key;
  double timeout_seconds = 60.0;
};

// Chat-completion client: POST {model, messages, temperature, seed} and read
// choices[0].message.content. One attempt per call; wrap in RetryingProvider.
class HttpProvider : public Provider {
 public:
  explicit HttpProvider(HttpEndpoint endpoint);
  std::string complete(const CompletionRequest& request) override;

 private:
  HttpEndpoint endpoint_;
  std::string scheme_host_port_;
  std::string path_;
};

enum class Backend { Live, Mock, Replay };

struct ProviderConfig {
  Backend backend = Backend::Mock;
  std::string endpoint;
  std::string model;
  std::string api_key_env;
  double timeout_seconds = 60.0;
  int max_retries = 3;
  double backoff_seconds = 1.0;
  std::filesystem::path mock_script;
  std::filesystem::path cache_path;
  // Backend consulted on replay misses; nullopt makes misses fatal.
  std::optional<Backend> replay_fallback;

  // Relative paths resolve against base_dir.
  static ProviderConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
  void validate() const;
};

// Owns a composed backend chain, e.g. replay -> retry -> live.
class ProviderStack {
 public:
  explicit ProviderStack(const ProviderConfig& config);
  Provider& provider() { return *top_; }
  ReplayProvider* replay() { return replay_; }
  MockProvider* mock() { return mock_; }

 private:
  Provider* build(Backend backend, const ProviderConfig& config);

  std::vector<std::unique_ptr<Provider>> owned_;
  Provider* top_ = nullptr;
  ReplayProvider* replay_ = nullptr;
  MockProvider* mock_ = nullptr;
};

}  // namespace topicsim

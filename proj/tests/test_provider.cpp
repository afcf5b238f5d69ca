#include <doctest.h>

#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <thread>

#include "test_util.hpp"
#include "topicsim/provider.hpp"

using namespace topicsim;
using nlohmann::json;

namespace {

CompletionRequest request(RequestTag tag, std::string text, std::uint64_t seed = 1) {
  CompletionRequest r;
  r.tag = tag;
  r.user_text = std::move(text);
  r.seed = seed;
  r.temperature = default_temperature(tag);
  return r;
}

class FlakyProvider : public Provider {
 public:
  explicit FlakyProvider(int failures) : failures_(failures) {}
  std::string complete(const CompletionRequest&) override {
    ++calls;
    if (failures_-- > 0) throw ProviderError("temporary");
    return "fine";
  }
  int calls = 0;

 private:
  int failures_;
};

}  // namespace

TEST_SUITE("provider") {

TEST_CASE("tags round-trip and default temperatures") {
  for (auto tag : {RequestTag::Perceive, RequestTag::Decide, RequestTag::Select, RequestTag::Compose,
                   RequestTag::ReflectEmotion, RequestTag::ReflectSc, RequestTag::ReflectSummary,
                   RequestTag::ReflectOpinion, RequestTag::Attack, RequestTag::Judge, RequestTag::Distill,
                   RequestTag::Censor})
    CHECK(parse_request_tag(to_string(tag)) == tag);
  CHECK_THROWS_AS((parse_request_tag("dance")), std::invalid_argument);
  CHECK(default_temperature(RequestTag::Judge) == 0.0);
  CHECK(default_temperature(RequestTag::Censor) == 0.0);
  CHECK(default_temperature(RequestTag::Perceive) == 0.7);
}

TEST_CASE("digest covers every request field") {
  const auto base = request(RequestTag::Perceive, "hello", 1);
  CHECK(base.digest().size() == 64);
  CHECK(base.digest() == request(RequestTag::Perceive, "hello", 1).digest());
  auto other = base;
  other.seed = 2;
  CHECK(other.digest() != base.digest());
  other = base;
  other.tag = RequestTag::Decide;
  CHECK(other.digest() != base.digest());
  other = base;
  other.temperature = 0.0;
  CHECK(other.digest() != base.digest());
  other = base;
  other.system_text = "x";
  CHECK(other.digest() != base.digest());
  other = base;
  other.user_text = "hello!";
  CHECK(other.digest() != base.digest());
}

TEST_CASE("mock rules: first match wins, tags, contains, capture") {
  MockProvider mock(json{{"default", "DEFAULT"},
                         {"rules",
                          {{{"tag", "decide"}, {"contains", {"[5] Exit"}}, {"text", "1"}},
                           {{"tag", "decide"}, {"text", "0"}},
                           {{"contains", {"football"}}, {"not_contains", {"basketball"}}, {"text", "sports fan"}},
                           {{"capture", "name=(\\w+)"}, {"text", "hi {1}"}}}}});
  CHECK(mock.complete(request(RequestTag::Decide, "... [5] Exit ...")) == "1");
  CHECK(mock.complete(request(RequestTag::Decide, "[1] Exit")) == "0");
  CHECK(mock.complete(request(RequestTag::Perceive, "I like football")) == "sports fan");
  CHECK(mock.complete(request(RequestTag::Perceive, "football and basketball")) == "DEFAULT");
  CHECK(mock.complete(request(RequestTag::Perceive, "name=Ada")) == "hi Ada");
  CHECK(mock.calls() == 5);
}

TEST_CASE("mock choices are a function of the request") {
  MockProvider mock(json{{"rules", {{{"choices", {"a", "b", "c", "d"}}}}}});
  std::set<std::string> seen;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    const auto r = request(RequestTag::Compose, "x", seed);
    const auto first = mock.complete(r);
    CHECK(mock.complete(r) == first);
    seen.insert(first);
  }
  CHECK(seen.size() == 4);
}

TEST_CASE("mock adjust reads the prompt's score and moves it") {
  MockProvider mock(json{{"rules",
                          {{{"adjust", {{"pattern", "score is ([0-9.]+)"}, {"delta", -0.2}}}},
                           {{"text", "unused"}}}}});
  CHECK(mock.complete(request(RequestTag::ReflectEmotion, "score is 0.50/1.0")) == "30%");
  CHECK(mock.complete(request(RequestTag::ReflectEmotion, "score is 0.10/1.0")) == "0%");
  CHECK(mock.complete(request(RequestTag::ReflectEmotion, "no score")) == "unused");
  MockProvider dec(json{{"rules", {{{"adjust", {{"pattern", "is ([0-9.]+)"}, {"delta", 0.3}, {"format", "decimal"}}}}}}});
  CHECK(dec.complete(request(RequestTag::ReflectSc, "is 0.85")) == "1.00");
}

TEST_CASE("mock script validation") {
  CHECK_THROWS_AS((MockProvider(json::object())), std::invalid_argument);
  CHECK_THROWS_AS((MockProvider(json{{"rules", {{{"tag", "decide"}}}}})), std::invalid_argument);
  CHECK_THROWS(MockProvider(json{{"rules", {{{"tag", "nope"}, {"text", "x"}}}}}));
}

TEST_CASE("retry backs off exponentially and gives up with ProviderFailure") {
  std::vector<double> sleeps;
  FlakyProvider flaky(2);
  RetryingProvider retry(flaky, RetryPolicy{3, 0.5}, [&](double s) { sleeps.push_back(s); });
  CHECK(retry.complete(request(RequestTag::Perceive, "x")) == "fine");
  CHECK(flaky.calls == 3);
  CHECK(sleeps == std::vector<double>{0.5, 1.0});

  FlakyProvider dead(100);
  sleeps.clear();
  RetryingProvider give_up(dead, RetryPolicy{2, 1.0}, [&](double s) { sleeps.push_back(s); });
  CHECK_THROWS_AS((give_up.complete(request(RequestTag::Perceive, "x"))), ProviderFailure);
  CHECK(dead.calls == 3);
  CHECK(sleeps == std::vector<double>{1.0, 2.0});
}

TEST_CASE("mock fail rules surface as ProviderFailure through retry") {
  MockProvider mock(json{{"rules", {{{"tag", "attack"}, {"fail", true}}}}});
  RetryingProvider retry(mock, RetryPolicy{2, 0.0}, [](double) {});
  CHECK_THROWS_AS((retry.complete(request(RequestTag::Attack, "x"))), ProviderFailure);
  CHECK(mock.calls() == 3);
}

TEST_CASE("replay records misses then serves from the cache") {
  testutil::TempDir dir;
  const auto cache = dir.path / "cache.jsonl";
  MockProvider mock(json{{"rules", {{{"text", "reply {seed}"}}}}});
  {
    ReplayProvider record(cache, &mock);
    CHECK(record.complete(request(RequestTag::Perceive, "a", 1)) == "reply 1");
    CHECK(record.complete(request(RequestTag::Perceive, "a", 2)) == "reply 2");
    CHECK(record.complete(request(RequestTag::Perceive, "a", 1)) == "reply 1");
    CHECK(record.hits() == 1);
    CHECK(record.misses() == 2);
  }
  CHECK(mock.calls() == 2);
  ReplayProvider replay(cache, nullptr);
  CHECK(replay.complete(request(RequestTag::Perceive, "a", 2)) == "reply 2");
  CHECK(replay.complete(request(RequestTag::Perceive, "a", 1)) == "reply 1");
  CHECK(mock.calls() == 2);
  CHECK_THROWS_AS((replay.complete(request(RequestTag::Perceive, "a", 3))), ProviderFailure);

  std::ifstream in(cache);
  std::string line;
  std::getline(in, line);
  const auto j = json::parse(line);
  CHECK(j.contains("digest"));
  CHECK(j.at("request").at("user") == "a");
  CHECK(j.at("response") == "reply 1");
}

TEST_CASE("http backend speaks the chat-completion format") {
  httplib::Server server;
  json seen;
  std::string auth;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    seen = json::parse(req.body);
    auth = req.get_header_value("Authorization");
    res.set_content(json{{"choices", {{{"message", {{"role", "assistant"}, {"content", "42"}}}}}}}.dump(),
                    "application/json");
  });
  server.Post("/broken", [](const httplib::Request&, httplib::Response& res) { res.status = 503; });
  server.Post("/garbage", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("not json", "text/plain");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  const std::string base = "http://127.0.0.1:" + std::to_string(port);
  HttpProvider http(HttpEndpoint{base + "/v1/chat/completions", "test-model", "secret", 5.0});
  auto r = request(RequestTag::Judge, "score this", 9);
  r.system_text = "be fair";
  CHECK(http.complete(r) == "42");
  CHECK(auth == "Bearer secret");
  CHECK(seen.at("model") == "test-model");
  CHECK(seen.at("temperature") == 0.0);
  CHECK(seen.at("seed") == 9);
  REQUIRE(seen.at("messages").size() == 2);
  CHECK(seen.at("messages")[0].at("role") == "system");
  CHECK(seen.at("messages")[1].at("content") == "score this");

  HttpProvider broken(HttpEndpoint{base + "/broken", "m", "k", 5.0});
  CHECK_THROWS_AS((broken.complete(r)), ProviderError);
  HttpProvider garbage(HttpEndpoint{base + "/garbage", "m", "k", 5.0});
  CHECK_THROWS_AS((garbage.complete(r)), ProviderError);

  server.stop();
  thread.join();

  HttpProvider refused(HttpEndpoint{base + "/v1/chat/completions", "m", "k", 1.0});
  CHECK_THROWS_AS((refused.complete(r)), ProviderError);
}

TEST_CASE("provider config resolves paths and validates backends") {
  const json j{{"backend", "replay"}, {"cache", "c.jsonl"}, {"fallback", "mock"}, {"script", "s.json"}};
  const auto c = ProviderConfig::from_json(j, "/base");
  CHECK(c.backend == Backend::Replay);
  CHECK(c.cache_path == std::filesystem::path("/base/c.jsonl"));
  CHECK(c.mock_script == std::filesystem::path("/base/s.json"));
  REQUIRE(c.replay_fallback.has_value());
  CHECK(*c.replay_fallback == Backend::Mock);
  CHECK_NOTHROW(c.validate());
  CHECK_THROWS_AS((ProviderConfig::from_json(json{{"backend", "live"}}, "/").validate()), std::invalid_argument);
  CHECK_THROWS_AS((ProviderConfig::from_json(json{{"backend", "carrier-pigeon"}}, "/")), std::invalid_argument);
}

TEST_CASE("live backend reads its key from the named environment variable") {
  ProviderConfig c = ProviderConfig::from_json(
      json{{"backend", "live"}, {"endpoint", "http://127.0.0.1:9/x"}, {"api_key_env", "TOPICSIM_TEST_UNSET_KEY"}},
      "/");
  ::unsetenv("TOPICSIM_TEST_UNSET_KEY");
  CHECK_THROWS(ProviderStack{c});
}

}  // TEST_SUITE

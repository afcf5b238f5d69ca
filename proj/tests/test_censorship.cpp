#include <doctest.h>

#include "test_util.hpp"
#include "topicsim/censorship.hpp"

using namespace topicsim;
using nlohmann::json;

namespace {

TrendingTopic sample_topic() {
  TrendingTopic t;
  t.id = "t";
  t.title = "Harbor festival";
  t.summary = "The harbor festival opens.";
  return t;
}

const json kPerfect{{"rules",
                     {{{"tag", "censor"}, {"contains", {"Comments:\n#toxic"}}, {"text", "90"}},
                      {{"tag", "censor"}, {"text", "10"}}}}};

}  // namespace

TEST_SUITE("censorship") {

TEST_CASE("a perfect judge flags exactly the poison") {
  testutil::CountingProvider p{kPerfect};
  const PromptBook book;
  AgentRuntime rt(p, book, 1);
  const CensorshipConfig cfg{true, 0.5, 0.0};
  const auto bad = censor("c1", "#toxic it is all a lie", sample_topic(), 12.0, cfg, rt);
  CHECK(bad.flagged);
  CHECK(bad.malice == 0.9);
  CHECK(bad.comment_id == "c1");
  CHECK(bad.judged_at == 12.0);
  CHECK_FALSE(bad.error);
  const auto ok = censor("c2", "Lovely fireworks", sample_topic(), 13.0, cfg, rt);
  CHECK_FALSE(ok.flagged);
  CHECK(ok.malice == 0.1);
  CHECK(p.count(RequestTag::Censor) == 2);
}

TEST_CASE("threshold above one never flags") {
  testutil::CountingProvider p{kPerfect};
  const PromptBook book;
  AgentRuntime rt(p, book, 1);
  const CensorshipConfig cfg{true, 1.01, 0.0};
  for (int i = 0; i < 10; ++i) CHECK_FALSE(censor("c", "#toxic lie", sample_topic(), 0.0, cfg, rt).flagged);
}

TEST_CASE("the threshold is inclusive") {
  testutil::CountingProvider p(json{{"rules", {{{"text", "50"}}}}});
  const PromptBook book;
  AgentRuntime rt(p, book, 1);
  CHECK(censor("c", "x", sample_topic(), 0.0, CensorshipConfig{true, 0.5, 0.0}, rt).flagged);
  CHECK_FALSE(censor("c", "x", sample_topic(), 0.0, CensorshipConfig{true, 0.51, 0.0}, rt).flagged);
}

TEST_CASE("the judge sees the topic and the comment at temperature zero") {
  struct Capture : Provider {
    std::vector<CompletionRequest> seen;
    std::string complete(const CompletionRequest& r) override {
      seen.push_back(r);
      return "5";
    }
  } p;
  const PromptBook book;
  AgentRuntime rt(p, book, 1);
  censor("c", "my words", sample_topic(), 0.0, CensorshipConfig{true, 0.5, 0.0}, rt);
  REQUIRE(p.seen.size() == 1);
  CHECK(p.seen[0].tag == RequestTag::Censor);
  CHECK(p.seen[0].temperature == 0.0);
  CHECK(p.seen[0].user_text.find("Harbor festival") != std::string::npos);
  CHECK(p.seen[0].user_text.find("my words") != std::string::npos);
}

TEST_CASE("fail open") {
  const PromptBook book;
  SUBCASE("unusable answers are retried once") {
    testutil::CountingProvider p(json{{"rules", {{{"text", "no score here"}}}}});
    AgentRuntime rt(p, book, 1);
    const auto v = censor("c", "#toxic", sample_topic(), 0.0, CensorshipConfig{true, 0.5, 0.0}, rt);
    CHECK_FALSE(v.flagged);
    CHECK(v.error);
    CHECK(p.count(RequestTag::Censor) == 2);
  }
  SUBCASE("provider failure") {
    testutil::CountingProvider p(json{{"rules", {{{"fail", true}}}}});
    AgentRuntime rt(p, book, 1);
    const auto v = censor("c", "#toxic", sample_topic(), 0.0, CensorshipConfig{true, 0.5, 0.0}, rt);
    CHECK_FALSE(v.flagged);
    REQUIRE(v.error);
    CHECK_FALSE(v.error->empty());
  }
}

}  // TEST_SUITE

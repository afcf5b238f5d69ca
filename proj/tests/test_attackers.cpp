#include <doctest.h>

#include <map>

#include "test_util.hpp"
#include "topicsim/attackers.hpp"
#include "topicsim/metrics.hpp"

using namespace topicsim;
using nlohmann::json;

namespace {

std::size_t count_attackers(const std::vector<RosterSlot>& r) {
  std::size_t n = 0;
  for (const auto& s : r) n += s.attacker ? 1 : 0;
  return n;
}

TrendingTopic topic_named(const std::string& title) {
  TrendingTopic t;
  t.id = title;
  t.title = title;
  t.summary = title + " summary";
  t.full_content = "Details about " + title + ".";
  return t;
}

}  // namespace

TEST_SUITE("attackers") {

TEST_CASE("degree labels and fractions") {
  CHECK(to_string(AttackDegree::PA30) == "PA-30");
  CHECK(parse_attack_degree("PA-50") == AttackDegree::PA50);
  CHECK(parse_attack_degree("PA10") == AttackDegree::PA10);
  CHECK(parse_attack_degree("SE") == AttackDegree::SE);
  CHECK_THROWS_AS((parse_attack_degree("PA-20")), std::invalid_argument);
  CHECK(attacker_fraction(AttackDegree::SE) == 0.0);
  CHECK(attacker_fraction(AttackDegree::PA50) == 0.5);
  for (auto k : kAllAttackKinds) CHECK(parse_attack_kind(to_string(k)) == k);
  CHECK_THROWS_AS((parse_attack_kind("spam")), std::invalid_argument);
}

TEST_CASE("roster sizes") {
  const KindsMix even;
  Rng rng(1);
  CHECK(count_attackers(build_roster(1000, AttackDegree::SE, even, rng)) == 0);
  const auto pa30 = build_roster(1000, AttackDegree::PA30, even, rng);
  CHECK(pa30.size() == 1000);
  CHECK(count_attackers(pa30) == 300);
  std::map<AttackKind, int> kinds;
  for (const auto& s : pa30)
    if (s.attacker) ++kinds[s.kind];
  CHECK(kinds[AttackKind::Antisocial] == 100);
  CHECK(kinds[AttackKind::Trolling] == 100);
  CHECK(kinds[AttackKind::Rumor] == 100);

  const auto small = build_roster(10, AttackDegree::PA50, even, rng);
  CHECK(count_attackers(small) == 5);
  kinds.clear();
  for (const auto& s : small)
    if (s.attacker) ++kinds[s.kind];
  CHECK(kinds[AttackKind::Antisocial] == 2);
  CHECK(kinds[AttackKind::Trolling] == 2);
  CHECK(kinds[AttackKind::Rumor] == 1);
}

TEST_CASE("kind split by largest remainder") {
  CHECK(split_kinds(5, KindsMix{}) == std::array<std::size_t, 3>{2, 2, 1});
  CHECK(split_kinds(0, KindsMix{}) == std::array<std::size_t, 3>{0, 0, 0});
  CHECK(split_kinds(7, KindsMix{{0.5, 0.25, 0.25}}) == std::array<std::size_t, 3>{3, 2, 2});
  CHECK(split_kinds(4, KindsMix{{0.0, 0.0, 1.0}}) == std::array<std::size_t, 3>{0, 0, 4});
  for (std::size_t n = 0; n < 50; ++n) {
    const auto s = split_kinds(n, KindsMix{{0.2, 0.3, 0.5}});
    CHECK(s[0] + s[1] + s[2] == n);
  }
  CHECK_THROWS_AS((KindsMix{{0.5, 0.5, 0.5}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((KindsMix{{-0.5, 1.0, 0.5}}.validate()), std::invalid_argument);
}

TEST_CASE("roster placement is seeded") {
  Rng a(9), b(9), c(10);
  const auto ra = build_roster(40, AttackDegree::PA30, KindsMix{}, a);
  const auto rb = build_roster(40, AttackDegree::PA30, KindsMix{}, b);
  const auto rc = build_roster(40, AttackDegree::PA30, KindsMix{}, c);
  auto same = [](const auto& x, const auto& y) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].attacker != y[i].attacker || (x[i].attacker && x[i].kind != y[i].kind)) return false;
    return true;
  };
  CHECK(same(ra, rb));
  CHECK_FALSE(same(ra, rc));
}

TEST_CASE("prototypes load from the repository data") {
  const auto protos = load_prototypes(std::filesystem::path(TOPICSIM_REPO_DATA) / "prototypes");
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(protos[i].kind == kAllAttackKinds[i]);
    CHECK_FALSE(protos[i].prototype_text.empty());
  }
  testutil::TempDir dir;
  CHECK_THROWS(load_prototypes(dir.path));
  CHECK_THROWS_AS((AttackerPrototype{AttackKind::Rumor, ""}.validate()), std::invalid_argument);
}

TEST_CASE("poison comments follow the prototype and are truncated") {
  MockProvider mock(json{{"rules",
                          {{{"tag", "attack"}, {"contains", {"spread rumors"}}, {"text", "#toxic rumor {hash}"}},
                           {{"tag", "attack"}, {"text", "#toxic generic"}}}}});
  const PromptBook book;
  AgentRuntime rt(mock, book, 3);
  const AttackerPrototype rumor{AttackKind::Rumor, "You spread rumors."};
  const AttackerPrototype troll{AttackKind::Trolling, "You provoke."};
  CHECK(generate_poison(rumor, "Title: x", rt).rfind("#toxic rumor ", 0) == 0);
  CHECK(generate_poison(troll, "Title: x", rt) == "#toxic generic");

  std::string long_text;
  for (int i = 0; i < 90; ++i) long_text += "word ";
  MockProvider verbose(json{{"rules", json::array()}, {"default", long_text}});
  AgentRuntime rt2(verbose, book, 3);
  const auto cut = generate_poison(troll, "Title: x", rt2);
  CHECK(cut == truncate_words(long_text, 60));

  MockProvider silent(json{{"rules", json::array()}, {"default", "   "}});
  AgentRuntime rt3(silent, book, 3);
  CHECK_THROWS_AS((generate_poison(troll, "Title: x", rt3)), ProviderFailure);
}

TEST_CASE("poison is deterministic for a fixed seed") {
  MockProvider mock(json{{"rules", {{{"text", "#toxic {seed}"}}}}});
  const PromptBook book;
  const AttackerPrototype p{AttackKind::Antisocial, "You undermine."};
  AgentRuntime a(mock, book, 77), b(mock, book, 77), c(mock, book, 78);
  const auto pa = generate_poison(p, "Title: x", a);
  CHECK(pa == generate_poison(p, "Title: x", b));
  CHECK(pa != generate_poison(p, "Title: x", c));
}

TEST_CASE("on-topic poison beats a shuffled baseline under the consistency judge") {
  // The attacker echoes the topic title; the judge rewards a comment that
  // names the topic it is judged against.
  MockProvider mock(json{{"rules",
                          {{{"tag", "attack"}, {"capture", "Title: (\\w+)"}, {"text", "#toxic {1} is all lies"}},
                           {{"tag", "judge"},
                            {"capture", "Trending topic:\\n(\\w+)[\\s\\S]*Comments:\\n#toxic \\1 "},
                            {"text", "90"}},
                           {{"tag", "judge"}, {"text", "20"}}}}});
  const PromptBook book;
  const AttackerPrototype p{AttackKind::Rumor, "You spread rumors."};
  std::vector<TrendingTopic> topics{topic_named("Floods"), topic_named("Cup"), topic_named("Election"),
                                    topic_named("Concert")};
  std::vector<std::string> poison;
  for (const auto& t : topics) {
    AgentRuntime rt(mock, book, 5);
    poison.push_back(generate_poison(p, render(t, MainPage{0}, 0.0, 10).text, rt));
  }
  std::vector<std::optional<double>> matched, shuffled;
  for (std::size_t i = 0; i < topics.size(); ++i) {
    AgentRuntime rt(mock, book, 6);
    matched.push_back(judge_attacker(poison[i], topics[i], rt).consistency);
    shuffled.push_back(judge_attacker(poison[(i + 1) % topics.size()], topics[i], rt).consistency);
  }
  CHECK(*mean_of_present(matched) > *mean_of_present(shuffled));
}

}  // TEST_SUITE

#include <doctest.h>

#include <string>

#include "topicsim/parsing.hpp"
#include "topicsim/rng.hpp"

using namespace topicsim;

TEST_SUITE("parsing") {

TEST_CASE("percentages and decimals") {
  CHECK(parse_fraction("35%") == 0.35);
  CHECK(parse_fraction("0.62") == 0.62);
  CHECK(parse_fraction("  72 % ") == 0.72);
  CHECK(parse_fraction("62") == 0.62);
  CHECK(parse_fraction("120%") == 1.0);
  CHECK(parse_fraction("1") == 1.0);
  CHECK(parse_fraction("0") == 0.0);
  CHECK(parse_fraction("My emotion is now 40%.") == 0.4);
  CHECK_FALSE(parse_fraction("no number here").has_value());
  CHECK_FALSE(parse_fraction("").has_value());
  CHECK(parse_fraction(std::string(400, '9')) == 1.0);
  CHECK(parse_fraction("0." + std::string(400, '0') + "1") == 0.0);
}

TEST_CASE("judge scores on 0-100") {
  CHECK(parse_score_100("62") == 0.62);
  CHECK(parse_score_100("100") == 1.0);
  CHECK(parse_score_100("Score: 80") == 0.8);
  CHECK(parse_score_100("250") == 1.0);
  CHECK_FALSE(parse_score_100("none").has_value());
}

TEST_CASE("choices must be in range") {
  CHECK(parse_choice("1", 6) == 1u);
  CHECK(parse_choice(" 5\n", 6) == 5u);
  CHECK(parse_choice("[3] View more comments", 6) == 3u);
  CHECK_FALSE(parse_choice("6", 6).has_value());
  CHECK_FALSE(parse_choice("7", 3).has_value());
  CHECK_FALSE(parse_choice("-1", 3).has_value());
  CHECK_FALSE(parse_choice("banana", 3).has_value());
  CHECK_FALSE(parse_choice("99999999999999999999999", 3).has_value());
}

TEST_CASE("fuzz: random strings never trap and results stay in range") {
  Rng rng(99);
  const std::string alphabet = "0123456789.%-+eE \t\nabcxyz[]()\xe4\xb8\xad";
  for (int i = 0; i < 100000; ++i) {
    std::string s;
    const auto len = rng.below(24);
    for (std::uint64_t j = 0; j < len; ++j) {
      if (rng.below(8) == 0)
        s.push_back(static_cast<char>(rng.below(256)));
      else
        s.push_back(alphabet[rng.below(alphabet.size())]);
    }
    const auto f = parse_fraction(s);
    if (f) REQUIRE((*f >= 0.0 && *f <= 1.0));
    const auto sc = parse_score_100(s);
    if (sc) REQUIRE((*sc >= 0.0 && *sc <= 1.0));
    const auto c = parse_choice(s, 6);
    if (c) REQUIRE(*c < 6u);
  }
}

}  // TEST_SUITE

#include <doctest.h>

#include <string>

#include "topicsim/environment.hpp"

using namespace topicsim;

namespace {

TrendingTopic make_topic() {
  TrendingTopic t;
  t.id = "t";
  t.title = "Harbor bridge reopens";
  t.summary = "The bridge reopened after repairs.";
  t.full_content = "The harbor bridge reopened this morning after six months of repairs.";
  t.sentiment = Sentiment::Positive;
  return t;
}

Comment comment(const std::string& id, double at, std::int64_t likes = 0) {
  Comment c;
  c.id = id;
  c.author_id = "u";
  c.text = "text of " + id;
  c.created_at = at;
  c.like_count = likes;
  return c;
}

ActionOutcome act(Session& s, TrendingTopic& t, const AgentAction& a, std::size_t k = 5) {
  const Observation obs = render(t, s.page, s.clock, k);
  return apply_action(s, a, t, obs, ActionDurations{}, k);
}

}  // namespace

TEST_SUITE("environment") {

TEST_CASE("topic validation") {
  auto t = make_topic();
  CHECK_NOTHROW(t.validate());
  t.title.clear();
  CHECK_THROWS_AS((t.validate()), std::invalid_argument);
  t = make_topic();
  t.summary.clear();
  CHECK_THROWS_AS((t.validate()), std::invalid_argument);
  CHECK(parse_sentiment("negative") == Sentiment::Negative);
  CHECK_THROWS_AS((parse_sentiment("angry")), std::invalid_argument);
}

TEST_CASE("browsing page shows title and summary only") {
  const auto t = make_topic();
  const auto obs = render(t, BrowsingPage{}, 0.0, 5);
  CHECK(obs.page == PageKind::Browsing);
  CHECK(obs.text.find(t.title) != std::string::npos);
  CHECK(obs.text.find(t.summary) != std::string::npos);
  CHECK(obs.text.find(t.full_content) == std::string::npos);
  CHECK(obs.items.empty());
}

TEST_CASE("main page ranks by likes, then age, and paginates") {
  auto t = make_topic();
  t.comments = {comment("c1", 1.0, 0), comment("c2", 2.0, 5), comment("c3", 3.0, 5), comment("c4", 0.5, 1)};
  const auto obs = render(t, MainPage{0}, 10.0, 2);
  REQUIRE(obs.items.size() == 2);
  CHECK(obs.items[0].id == "c2");
  CHECK(obs.items[1].id == "c3");
  CHECK(obs.text.find("Comments 1-2 of 4") != std::string::npos);
  const auto next = render(t, MainPage{2}, 10.0, 2);
  REQUIRE(next.items.size() == 2);
  CHECK(next.items[0].id == "c4");
  CHECK(next.items[1].id == "c1");
  const auto past = render(t, MainPage{4}, 10.0, 2);
  CHECK(past.items.empty());
  CHECK(past.text.find("No more comments.") != std::string::npos);
  CHECK(render(make_topic(), MainPage{0}, 10.0, 2).text.find("No comments yet.") != std::string::npos);
}

TEST_CASE("comments are invisible before their creation time and when flagged") {
  auto t = make_topic();
  t.comments = {comment("c1", 194.0)};
  CHECK(render(t, MainPage{0}, 193.999, 5).items.empty());
  CHECK(render(t, MainPage{0}, 194.0, 5).items.size() == 1);
  t.comments[0].flagged = true;
  CHECK(render(t, MainPage{0}, 500.0, 5).items.empty());
  CHECK_THROWS_AS((render(t, CommentPage{"c1"}, 500.0, 5)), NavigationError);
  CHECK_THROWS_AS((render(t, CommentPage{"nope"}, 500.0, 5)), NavigationError);
}

TEST_CASE("comment page lists the comment then its visible replies") {
  auto t = make_topic();
  auto c = comment("c1", 1.0);
  c.replies = {Reply{"c1-r1", "u", "first", 2.0, 0}, Reply{"c1-r2", "u", "second", 3.0, 2},
               Reply{"c1-r3", "u", "later", 50.0, 9}};
  c.replies[1].flagged = false;
  t.comments = {c};
  const auto obs = render(t, CommentPage{"c1"}, 10.0, 5);
  REQUIRE(obs.items.size() == 3);
  CHECK(obs.items[0].id == "c1");
  CHECK(obs.items[1].id == "c1-r2");
  CHECK(obs.items[2].id == "c1-r1");
}

TEST_CASE("action legality per page") {
  CHECK(action_legal(PageKind::Browsing, action::ViewDetails{}));
  CHECK(action_legal(PageKind::Browsing, action::Leave{}));
  CHECK_FALSE(action_legal(PageKind::Browsing, action::Like{}));
  CHECK(action_legal(PageKind::Main, action::Comment{"x"}));
  CHECK_FALSE(action_legal(PageKind::Main, action::Back{}));
  CHECK_FALSE(action_legal(PageKind::Main, action::Reply{0, "x"}));
  CHECK(action_legal(PageKind::CommentDetail, action::Reply{0, "x"}));
  CHECK_FALSE(action_legal(PageKind::CommentDetail, action::Leave{}));
  CHECK_FALSE(action_legal(PageKind::CommentDetail, action::Comment{"x"}));
}

TEST_CASE("a full session walks pages and mutates the hub") {
  auto t = make_topic();
  t.comments = {comment("c1", 0.0)};
  Session s{"u1", 100.0, 100.0, BrowsingPage{}, 0, 6};

  auto out = act(s, t, action::ViewDetails{});
  CHECK(std::holds_alternative<MainPage>(s.page));
  CHECK(s.clock == doctest::Approx(100.5));

  out = act(s, t, action::Like{});
  CHECK(t.like_count == 1);
  REQUIRE(out.mutations.size() == 1);
  CHECK(out.mutations[0].op == Mutation::Op::LikeTopic);

  out = act(s, t, action::Comment{"hello"});
  REQUIRE(t.comments.size() == 2);
  CHECK(t.comments[1].created_at == doctest::Approx(102.7));
  CHECK(t.comments[1].author_id == "u1");
  CHECK_FALSE(t.comments[1].is_poison);

  out = act(s, t, action::ViewComment{0});
  REQUIRE(std::holds_alternative<CommentPage>(s.page));
  CHECK(std::get<CommentPage>(s.page).comment_id == "c1");

  out = act(s, t, action::Reply{0, "agreed"});
  REQUIRE(t.comments[0].replies.size() == 1);
  CHECK(t.comments[0].replies[0].id == "c1-r1");
  CHECK_FALSE(out.terminal);

  out = act(s, t, action::Back{});
  CHECK(std::holds_alternative<MainPage>(s.page));
  CHECK(out.terminal);  // sixth action exhausts the budget
  CHECK(s.actions_taken == 6);
  CHECK_THROWS_AS((act(s, t, action::Leave{})), std::logic_error);
}

TEST_CASE("protocol violations leave the hub untouched") {
  auto t = make_topic();
  Session s{"u1", 0.0, 0.0, BrowsingPage{}, 0, 6};
  CHECK_THROWS_AS((act(s, t, action::Like{})), ProtocolError);
  CHECK(t.like_count == 0);
  CHECK(s.actions_taken == 0);
  act(s, t, action::ViewDetails{});
  CHECK_THROWS_AS((act(s, t, action::ViewComment{0})), ProtocolError);
  CHECK_THROWS_AS((act(s, t, action::Comment{""})), ProtocolError);
  CHECK(t.comments.empty());
}

TEST_CASE("leave ends the session with zero duration") {
  auto t = make_topic();
  Session s{"u1", 5.0, 5.0, BrowsingPage{}, 0, 6};
  const auto out = act(s, t, action::Leave{});
  CHECK(out.terminal);
  CHECK(out.duration == 0.0);
  CHECK(s.clock == 5.0);
}

TEST_CASE("comment ids are sequential and replies hang off their parent") {
  auto t = make_topic();
  Session s{"u1", 0.0, 0.0, MainPage{0}, 0, 20};
  act(s, t, action::Comment{"a"});
  act(s, t, action::Comment{"b"});
  CHECK(t.comments[0].id == "c1");
  CHECK(t.comments[1].id == "c2");
  s.page = CommentPage{"c2"};
  act(s, t, action::Reply{0, "r"});
  act(s, t, action::Reply{1, "r2"});
  CHECK(t.comments[1].replies.size() == 2);
  CHECK(t.comments[1].replies[1].id == "c2-r2");
}

TEST_CASE("apply_mutation rebuilds the same state") {
  auto t = make_topic();
  auto copy = make_topic();
  Session s{"u1", 0.0, 0.0, MainPage{0}, 0, 20};
  std::vector<Mutation> all;
  auto keep = [&](const ActionOutcome& o) { all.insert(all.end(), o.mutations.begin(), o.mutations.end()); };
  keep(act(s, t, action::Comment{"a"}));
  keep(act(s, t, action::Like{}));
  keep(act(s, t, action::Repost{}));
  s.clock = 10.0;
  s.page = CommentPage{"c1"};
  keep(act(s, t, action::Like{}));
  keep(act(s, t, action::Reply{0, "r"}));
  for (const auto& m : all) apply_mutation(copy, m);
  CHECK(copy.like_count == t.like_count);
  CHECK(copy.repost_count == t.repost_count);
  REQUIRE(copy.comments.size() == 1);
  CHECK(copy.comments[0].like_count == 1);
  CHECK(copy.comments[0].replies.size() == 1);
  apply_mutation(copy, Mutation{Mutation::Op::Flag, "c1-r1"});
  CHECK(copy.comments[0].replies[0].flagged);
  CHECK_THROWS_AS((apply_mutation(copy, Mutation{Mutation::Op::Flag, "zz"})), std::invalid_argument);
}

}  // TEST_SUITE

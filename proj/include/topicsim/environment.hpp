#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "topicsim/actions.hpp"
#include "topicsim/temporal.hpp"

namespace topicsim {

enum class Sentiment { Positive, Negative, Neutral };

std::string to_string(Sentiment s);
Sentiment parse_sentiment(const std::string& s);

struct Reply {
  std::string id;
  std::string author_id;
  std::string text;
  double created_at = 0.0;
  std::int64_t like_count = 0;
  bool flagged = false;
  bool is_poison = false;

  bool visible_at(double now) const { return !flagged && created_at <= now; }
};

struct Comment {
  std::string id;
  std::string author_id;
  std::string text;
  double created_at = 0.0;
  std::int64_t like_count = 0;
  std::vector<Reply> replies;
  bool flagged = false;
  // Ground truth for analysis; never rendered.
  bool is_poison = false;

  bool visible_at(double now) const { return !flagged && created_at <= now; }
};

struct TrendingTopic {
  std::string id;
  std::string title;
  std::string summary;
  std::string full_content;
  Sentiment sentiment = Sentiment::Neutral;
  std::int64_t like_count = 0;
  std::int64_t repost_count = 0;
  LifecycleParams params;
  std::vector<Comment> comments;

  // Throws std::invalid_argument if title or summary is empty.
  void validate() const;

  Comment* find_comment(const std::string& comment_id);
  const Comment* find_comment(const std::string& comment_id) const;

  // Title and full content (or summary when there is none), as given to judges.
  std::string brief() const;
};

struct BrowsingPage {};
struct MainPage {
  std::size_t offset = 0;
};
struct CommentPage {
  std::string comment_id;
};
using PageState = std::variant<BrowsingPage, MainPage, CommentPage>;

enum class PageKind { Browsing, Main, CommentDetail };
PageKind page_kind(const PageState& page);
std::string to_string(PageKind k);

// One comment (or reply) as shown to an agent.
struct ObservedItem {
  std::string id;
  std::string text;
  std::int64_t like_count = 0;
  bool is_poison = false;  // carried for analysis, not printed
};

struct Observation {
  PageKind page = PageKind::Browsing;
  double time = 0.0;
  std::string text;
  // Main: the rendered comments. CommentDetail: the comment, then its replies.
  std::vector<ObservedItem> items;
};

class NavigationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Visible comments by like count, then age, then id.
std::vector<const Comment*> rank_comments(const std::vector<Comment>& comments, double now);
std::vector<const Reply*> rank_replies(const std::vector<Reply>& replies, double now);

// Throws NavigationError for a comment page whose comment is unknown, flagged
// or not yet posted.
Observation render(const TrendingTopic& topic, const PageState& page, double now, std::size_t page_size);

// Minutes spent on each action.
struct ActionDurations {
  double view_details = 0.5;
  double like = 0.2;
  double comment = 2.0;
  double reply = 2.0;
  double repost = 0.5;
  double view_more = 0.5;
  double view_comment = 0.3;
  double back = 0.2;
  double leave = 0.0;

  double of(const AgentAction& a) const;
};

struct Session {
  std::string actor_id;
  double start_time = 0.0;
  double clock = 0.0;
  PageState page = BrowsingPage{};
  int actions_taken = 0;
  int max_actions = 6;
};

// Environment change caused by an action, in log form.
struct Mutation {
  enum class Op { LikeTopic, RepostTopic, LikeComment, AddComment, AddReply, Flag };
  Op op = Op::LikeTopic;
  std::string target_id;  // comment for LikeComment/AddReply/Flag, new id for AddComment
  std::string new_id;     // id of the created reply
  std::string author_id;
  std::string text;
  double created_at = 0.0;
  bool is_poison = false;
};

std::string to_string(Mutation::Op op);
Mutation::Op parse_mutation_op(const std::string& s);

struct ActionOutcome {
  bool terminal = false;
  double duration = 0.0;
  std::vector<Mutation> mutations;
};

bool action_legal(PageKind page, const AgentAction& a);

// Applies one action taken on `current`, the observation the agent acted on.
// Throws ProtocolError when the action is not legal on the current page or
// references an item the observation does not contain; nothing is mutated in
// that case.
ActionOutcome apply_action(Session& session, const AgentAction& action, TrendingTopic& topic,
                           const Observation& current, const ActionDurations& durations,
                           std::size_t page_size, bool is_poison = false);

// Replays one mutation onto a topic. Used to rebuild hub state from a log.
void apply_mutation(TrendingTopic& topic, const Mutation& m);

}  // namespace topicsim

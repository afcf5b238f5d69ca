#include "topicsim/environment.hpp"

#include <algorithm>
#include <sstream>

namespace topicsim {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

template <typename T>
bool ranks_before(const T* a, const T* b) {
  if (a->like_count != b->like_count) return a->like_count > b->like_count;
  if (a->created_at != b->created_at) return a->created_at < b->created_at;
  return a->id < b->id;
}

std::string next_comment_id(const TrendingTopic& topic) {
  return "c" + std::to_string(topic.comments.size() + 1);
}

std::string next_reply_id(const Comment& c) {
  return c.id + "-r" + std::to_string(c.replies.size() + 1);
}

}  // namespace

std::string to_string(Sentiment s) {
  switch (s) {
    case Sentiment::Positive: return "positive";
    case Sentiment::Negative: return "negative";
    case Sentiment::Neutral: return "neutral";
  }
  return "neutral";
}

Sentiment parse_sentiment(const std::string& s) {
  if (s == "positive") return Sentiment::Positive;
  if (s == "negative") return Sentiment::Negative;
  if (s == "neutral") return Sentiment::Neutral;
  throw std::invalid_argument("unknown sentiment '" + s + "'");
}

void TrendingTopic::validate() const {
  if (title.empty()) throw std::invalid_argument("topic " + id + ": empty title");
  if (summary.empty()) throw std::invalid_argument("topic " + id + ": empty summary");
  params.validate();
}

Comment* TrendingTopic::find_comment(const std::string& comment_id) {
  auto it = std::find_if(comments.begin(), comments.end(), [&](const Comment& c) { return c.id == comment_id; });
  return it == comments.end() ? nullptr : &*it;
}

std::string TrendingTopic::brief() const {
  return title + "\n" + (full_content.empty() ? summary : full_content);
}

const Comment* TrendingTopic::find_comment(const std::string& comment_id) const {
  return const_cast<TrendingTopic*>(this)->find_comment(comment_id);
}

PageKind page_kind(const PageState& page) {
  return std::visit(overloaded{[](const BrowsingPage&) { return PageKind::Browsing; },
                               [](const MainPage&) { return PageKind::Main; },
                               [](const CommentPage&) { return PageKind::CommentDetail; }},
                    page);
}

std::string to_string(PageKind k) {
  switch (k) {
    case PageKind::Browsing: return "browsing";
    case PageKind::Main: return "main";
    case PageKind::CommentDetail: return "comment";
  }
  return "browsing";
}

std::vector<const Comment*> rank_comments(const std::vector<Comment>& comments, double now) {
  std::vector<const Comment*> out;
  for (const auto& c : comments)
    if (c.visible_at(now)) out.push_back(&c);
  std::sort(out.begin(), out.end(), ranks_before<Comment>);
  return out;
}

std::vector<const Reply*> rank_replies(const std::vector<Reply>& replies, double now) {
  std::vector<const Reply*> out;
  for (const auto& r : replies)
    if (r.visible_at(now)) out.push_back(&r);
  std::sort(out.begin(), out.end(), ranks_before<Reply>);
  return out;
}

Observation render(const TrendingTopic& topic, const PageState& page, double now, std::size_t page_size) {
  Observation obs;
  obs.page = page_kind(page);
  obs.time = now;
  std::ostringstream os;

  std::visit(
      overloaded{
          [&](const BrowsingPage&) {
            os << "Title: " << topic.title << "\n";
            os << "Summary: " << topic.summary << "\n";
          },
          [&](const MainPage& m) {
            os << "Title: " << topic.title << "\n";
            os << "Content: " << topic.full_content << "\n";
            os << "Likes: " << topic.like_count << "  Reposts: " << topic.repost_count << "\n";
            const auto ranked = rank_comments(topic.comments, now);
            const std::size_t begin = std::min(m.offset, ranked.size());
            const std::size_t end = std::min(begin + page_size, ranked.size());
            if (begin == end) {
              os << (ranked.empty() ? "No comments yet.\n" : "No more comments.\n");
              return;
            }
            os << "Comments " << begin + 1 << "-" << end << " of " << ranked.size() << ":\n";
            for (std::size_t i = begin; i < end; ++i) {
              const Comment* c = ranked[i];
              os << "[" << obs.items.size() << "] (" << c->like_count << " likes) " << c->text << "\n";
              obs.items.push_back({c->id, c->text, c->like_count, c->is_poison});
            }
          },
          [&](const CommentPage& cp) {
            const Comment* c = topic.find_comment(cp.comment_id);
            if (c == nullptr || !c->visible_at(now))
              throw NavigationError("comment " + cp.comment_id + " is not viewable");
            os << "Title: " << topic.title << "\n";
            os << "[0] Comment (" << c->like_count << " likes): " << c->text << "\n";
            obs.items.push_back({c->id, c->text, c->like_count, c->is_poison});
            const auto ranked = rank_replies(c->replies, now);
            const std::size_t end = std::min(page_size, ranked.size());
            if (end == 0) {
              os << "No replies yet.\n";
              return;
            }
            os << "Replies 1-" << end << " of " << ranked.size() << ":\n";
            for (std::size_t i = 0; i < end; ++i) {
              const Reply* r = ranked[i];
              os << "[" << obs.items.size() << "] (" << r->like_count << " likes) " << r->text << "\n";
              obs.items.push_back({r->id, r->text, r->like_count, r->is_poison});
            }
          }},
      page);

  obs.text = os.str();
  return obs;
}

double ActionDurations::of(const AgentAction& a) const {
  return std::visit(overloaded{[&](const action::ViewDetails&) { return view_details; },
                               [&](const action::Like&) { return like; },
                               [&](const action::Comment&) { return comment; },
                               [&](const action::Repost&) { return repost; },
                               [&](const action::ViewMore&) { return view_more; },
                               [&](const action::ViewComment&) { return view_comment; },
                               [&](const action::Reply&) { return reply; },
                               [&](const action::Back&) { return back; },
                               [&](const action::Leave&) { return leave; }},
                    a);
}

std::string action_name(const AgentAction& a) {
  return std::visit(overloaded{[](const action::ViewDetails&) { return std::string("view_details"); },
                               [](const action::Like&) { return std::string("like"); },
                               [](const action::Comment&) { return std::string("comment"); },
                               [](const action::Repost&) { return std::string("repost"); },
                               [](const action::ViewMore&) { return std::string("view_more"); },
                               [](const action::ViewComment&) { return std::string("view_comment"); },
                               [](const action::Reply&) { return std::string("reply"); },
                               [](const action::Back&) { return std::string("back"); },
                               [](const action::Leave&) { return std::string("leave"); }},
                    a);
}

std::string describe_action(const AgentAction& a) {
  return std::visit(
      overloaded{[](const action::ViewDetails&) { return std::string("Viewed more details of the trending topic."); },
                 [](const action::Like&) { return std::string("Liked it."); },
                 [](const action::Comment& c) { return "Commented on the trending topic: " + c.text; },
                 [](const action::Repost&) { return std::string("Reposted the trending topic."); },
                 [](const action::ViewMore&) { return std::string("Viewed more comments."); },
                 [](const action::ViewComment& v) {
                   return "Viewed the details of comment [" + std::to_string(v.index) + "].";
                 },
                 [](const action::Reply& r) {
                   return "Replied to comment [" + std::to_string(r.index) + "]: " + r.text;
                 },
                 [](const action::Back&) { return std::string("Went back to the main page."); },
                 [](const action::Leave&) { return std::string("Left the trending topic."); }},
      a);
}

bool action_legal(PageKind page, const AgentAction& a) {
  switch (page) {
    case PageKind::Browsing:
      return std::holds_alternative<action::ViewDetails>(a) || std::holds_alternative<action::Leave>(a);
    case PageKind::Main:
      return std::holds_alternative<action::Like>(a) || std::holds_alternative<action::Comment>(a) ||
             std::holds_alternative<action::Repost>(a) || std::holds_alternative<action::ViewMore>(a) ||
             std::holds_alternative<action::ViewComment>(a) || std::holds_alternative<action::Leave>(a);
    case PageKind::CommentDetail:
      return std::holds_alternative<action::Like>(a) || std::holds_alternative<action::Reply>(a) ||
             std::holds_alternative<action::Back>(a);
  }
  return false;
}

std::string to_string(Mutation::Op op) {
  switch (op) {
    case Mutation::Op::LikeTopic: return "like_topic";
    case Mutation::Op::RepostTopic: return "repost_topic";
    case Mutation::Op::LikeComment: return "like_comment";
    case Mutation::Op::AddComment: return "add_comment";
    case Mutation::Op::AddReply: return "add_reply";
    case Mutation::Op::Flag: return "flag";
  }
  return "like_topic";
}

Mutation::Op parse_mutation_op(const std::string& s) {
  for (auto op : {Mutation::Op::LikeTopic, Mutation::Op::RepostTopic, Mutation::Op::LikeComment,
                  Mutation::Op::AddComment, Mutation::Op::AddReply, Mutation::Op::Flag})
    if (to_string(op) == s) return op;
  throw std::invalid_argument("unknown mutation op '" + s + "'");
}

void apply_mutation(TrendingTopic& topic, const Mutation& m) {
  auto require_comment = [&](const std::string& id) -> Comment& {
    Comment* c = topic.find_comment(id);
    if (c == nullptr) throw std::invalid_argument("mutation references unknown comment " + id);
    return *c;
  };
  switch (m.op) {
    case Mutation::Op::LikeTopic:
      ++topic.like_count;
      break;
    case Mutation::Op::RepostTopic:
      ++topic.repost_count;
      break;
    case Mutation::Op::LikeComment:
      ++require_comment(m.target_id).like_count;
      break;
    case Mutation::Op::AddComment: {
      Comment c;
      c.id = m.target_id;
      c.author_id = m.author_id;
      c.text = m.text;
      c.created_at = m.created_at;
      c.is_poison = m.is_poison;
      topic.comments.push_back(std::move(c));
      break;
    }
    case Mutation::Op::AddReply: {
      Comment& parent = require_comment(m.target_id);
      Reply r;
      r.id = m.new_id;
      r.author_id = m.author_id;
      r.text = m.text;
      r.created_at = m.created_at;
      r.is_poison = m.is_poison;
      parent.replies.push_back(std::move(r));
      break;
    }
    case Mutation::Op::Flag: {
      // Target is a comment id or a reply id of the form <comment>-r<n>.
      if (Comment* c = topic.find_comment(m.target_id)) {
        c->flagged = true;
        break;
      }
      for (auto& c : topic.comments)
        for (auto& r : c.replies)
          if (r.id == m.target_id) {
            r.flagged = true;
            return;
          }
      throw std::invalid_argument("flag references unknown item " + m.target_id);
    }
  }
}

ActionOutcome apply_action(Session& session, const AgentAction& act, TrendingTopic& topic,
                           const Observation& current, const ActionDurations& durations,
                           std::size_t page_size, bool is_poison) {
  if (session.actions_taken >= session.max_actions)
    throw std::logic_error("session " + session.actor_id + " already used its action budget");
  const PageKind kind = page_kind(session.page);
  if (!action_legal(kind, act))
    throw ProtocolError("action '" + action_name(act) + "' is not available on the " + to_string(kind) + " page");

  ActionOutcome out;
  out.duration = durations.of(act);
  const double done_at = session.clock + out.duration;
  PageState next = session.page;

  std::visit(
      overloaded{
          [&](const action::ViewDetails&) { next = MainPage{0}; },
          [&](const action::Like&) {
            if (kind == PageKind::Main) {
              out.mutations.push_back({Mutation::Op::LikeTopic});
            } else {
              out.mutations.push_back({Mutation::Op::LikeComment, std::get<CommentPage>(session.page).comment_id});
            }
          },
          [&](const action::Comment& c) {
            if (c.text.empty()) throw ProtocolError("empty comment text");
            Mutation m{Mutation::Op::AddComment, next_comment_id(topic)};
            m.author_id = session.actor_id;
            m.text = c.text;
            m.created_at = done_at;
            m.is_poison = is_poison;
            out.mutations.push_back(std::move(m));
          },
          [&](const action::Repost&) { out.mutations.push_back({Mutation::Op::RepostTopic}); },
          [&](const action::ViewMore&) { next = MainPage{std::get<MainPage>(session.page).offset + page_size}; },
          [&](const action::ViewComment& v) {
            if (current.page != PageKind::Main || v.index >= current.items.size())
              throw ProtocolError("no comment [" + std::to_string(v.index) + "] on the current page");
            next = CommentPage{current.items[v.index].id};
          },
          [&](const action::Reply& r) {
            if (r.text.empty()) throw ProtocolError("empty reply text");
            if (current.page != PageKind::CommentDetail || r.index >= current.items.size())
              throw ProtocolError("no reply target [" + std::to_string(r.index) + "] on the current page");
            const auto& parent_id = std::get<CommentPage>(session.page).comment_id;
            const Comment* parent = topic.find_comment(parent_id);
            if (parent == nullptr) throw ProtocolError("reply to unknown comment " + parent_id);
            Mutation m{Mutation::Op::AddReply, parent_id, next_reply_id(*parent)};
            m.author_id = session.actor_id;
            m.text = r.text;
            m.created_at = done_at;
            m.is_poison = is_poison;
            out.mutations.push_back(std::move(m));
          },
          [&](const action::Back&) { next = MainPage{0}; },
          [&](const action::Leave&) { out.terminal = true; }},
      act);

  for (const auto& m : out.mutations) apply_mutation(topic, m);
  session.page = next;
  session.clock = done_at;
  ++session.actions_taken;
  if (session.actions_taken >= session.max_actions) out.terminal = true;
  return out;
}

}  // namespace topicsim

#pragma once

#include <cstddef>
#include <string>
#include <variant>

namespace topicsim {

namespace action {
struct ViewDetails {};
struct Like {};
struct Comment {
  std::string text;
};
struct Repost {};
struct ViewMore {};
// Index into the comments of the current Main page observation.
struct ViewComment {
  std::size_t index = 0;
};
// Index into the items of the current comment page: 0 is the comment itself,
// i > 0 the i-th rendered reply.
struct Reply {
  std::size_t index = 0;
  std::string text;
};
struct Back {};
struct Leave {};
}  // namespace action

using AgentAction = std::variant<action::ViewDetails, action::Like, action::Comment, action::Repost,
                                 action::ViewMore, action::ViewComment, action::Reply, action::Back,
                                 action::Leave>;

// Short identifier, e.g. "comment", used in logs.
std::string action_name(const AgentAction& a);

// First-person sentence describing the action, used in prompts.
std::string describe_action(const AgentAction& a);

}  // namespace topicsim

#include "topicsim/prompts.hpp"

#include <cstdio>
#include <stdexcept>

namespace topicsim {

namespace {

// ---------------------------------------------------------------- English

const std::string kRoleEn =
    "Please play the following role.\n"
    "Personality Traits:\n{{long_term_memory}}\n"
    "Personal Memory:\n{{summary}}\n"
    "Personal Opinions:\n{{opinion}}\n"
    "Psychological Conditions:\n"
    "The emotional positiveness score is {{emotion}}/1.0, and the social confidence score is "
    "{{social_confidence}}/1.0.\n";

const std::string kImpressionEn =
    "You have just read a trending topic in social media, and your impression is:\n{{impression}}\n";

const std::string kActedEn =
    kImpressionEn + "You have taken action on this trending topic in social media:\n{{action}}\n";

const std::string kChoiceTailEn =
    "Please indicate the selected action with a number, and the output only includes one number.\n"
    "Output example:\n";

const std::map<PromptId, std::string>& english() {
  static const std::map<PromptId, std::string> t = {
      {PromptId::Perceive,
       kRoleEn + "You have just read a trending topic in social media:\n{{observation}}\n"
                 "Please provide a browsing impression of approximately 40 words in first person for this "
                 "browsing content.\n"
                 "Example Output:\n"
                 "In the first half of this year, although the A-share market was profitable per capita, the "
                 "overall profitability effect was not significant, with only a few people truly making profits. "
                 "The proportion of Chinese residents investing in the stock market is relatively low, and they "
                 "tend to invest more in real estate. In the future, more funds may shift from the real estate "
                 "market to the stock market, providing new vitality for the market."},
      {PromptId::DecideBrowsing,
       kRoleEn + kImpressionEn +
           "Please select the action to be taken in response to this trending topic in social media:\n"
           "[0] View more details\n[1] Exit\n" +
           kChoiceTailEn + "0"},
      {PromptId::DecideMain,
       kRoleEn + kImpressionEn +
           "Please select the action to be taken in response to this trending topic in social media:\n"
           "[0] Like\n[1] Comment\n[2] Repost\n[3] View more comments\n[4] View comment details\n[5] Exit\n" +
           kChoiceTailEn + "1"},
      {PromptId::DecideComment,
       kRoleEn + kImpressionEn +
           "Please select the action to be taken in response to this trending topic in social media:\n"
           "[0] Like\n[1] Reply to a comment\n[2] Back\n" +
           kChoiceTailEn + "1"},
      {PromptId::WriteComment,
       kRoleEn + kImpressionEn +
           "Please comment on this trending topic in social media from a first-person perspective, about 30 "
           "words.\n"
           "Example output:\n"
           "Only when future funds shift from the real estate market to the stock market can new vitality be "
           "injected into the market. I hope businesses can unite and overcome difficulties together."},
      {PromptId::WriteReply,
       kRoleEn +
           "You have just read a comment of the trending topic in social media, and your impression is:\n"
           "{{impression}}\n"
           "The comment you are replying to:\n{{comment}}\n"
           "Please reply to this comment from a first-person perspective, about 30 words.\n"
           "Example output:\n"
           "I disagree with your perspective. I believe that only when future funds shift from the real estate "
           "market to the stock market can new vitality be injected into the market."},
      {PromptId::ChooseReply,
       kRoleEn + "You have just read some comments of the trending topic in social media:\n{{comments}}\n"
                 "Please select a comment to reply to from these, and only output the number of the comment.\n"
                 "Example output:\n1"},
      {PromptId::ChooseView,
       kRoleEn + "You have just read some comments of the trending topic in social media:\n{{comments}}\n"
                 "Please select a comment to view its details from these, and only output the number of the "
                 "comment.\n"
                 "Example output:\n1"},
      {PromptId::ReflectEmotion,
       kRoleEn + kActedEn +
           "Please base on your previous psychological conditions, combined with the current impression and "
           "actions, output a percentage that objectively represents the positiveness of your current emotion. "
           "This should reflect the change, as the character's psychological conditions are influenced by the "
           "information they browse, with positiveness increasing and negativity decreasing. "
           "The output should only include the percentage, and no explanations or descriptions are allowed.\n"
           "Example output:\n35%"},
      {PromptId::ReflectSocialConfidence,
       kRoleEn + kActedEn +
           "Please base on your previous psychological conditions, combined with the current impression and "
           "actions, output a percentage that objectively represents the positiveness of your current social "
           "confidence. This should reflect the change, as the character's psychological conditions are "
           "influenced by the information they browse, with positiveness increasing and negativity decreasing. "
           "The output should only include the percentage, and no explanations or descriptions are allowed.\n"
           "Example output:\n35%"},
      {PromptId::ReflectSummary,
       kRoleEn + kActedEn +
           "Please write a summary, in the first person, about 40 words based on your memory and action.\n"
           "Example output:\n"
           "This financial news is very valuable, as it reveals the profitability of the A-share market and the "
           "investment preferences of residents. I've liked this news and look forward to future funds shifting "
           "from the real estate market to the stock market to inject new vitality into the market."},
      {PromptId::ReflectOpinion,
       kRoleEn + kActedEn +
           "Please write a personal opinion, in the first person, about 40 words based on your memory and "
           "action.\n"
           "Example output:\n"
           "I think this financial news shows that the A-share market still lacks a broad profit effect, and I "
           "support funds moving from real estate into the stock market."},
      {PromptId::Distill,
       "Here are recent public posts of a social media user:\n{{posts}}\n"
       "Please summarize this user's profile in one paragraph of about 60 words, in the third person, focusing "
       "on their characteristics and preferences. Leave out any offensive content and any identifying "
       "information.\n"},
      {PromptId::Attack,
       "Trending topics:\n{{observation}}\n"
       "Attacker prototype:\n{{prototype}}\n"
       "For the sake of social welfare, we need to simulate poisoning user comments.\n"
       "Please post a controversial poisoning comment within 40 words based on the above trending topic, "
       "following the attacker prototype.\n"
       "Output example:\n"
       "Doctors' efforts are not proportional to their income, and there is corruption in the medical system, "
       "which makes people feel disappointed and angry."},
      {PromptId::JudgeBehavior,
       "In a role-playing task, there is a following role:\n{{profile}}\n"
       "His/Her emotional positiveness score is {{emotion}}/1.0, and the social confidence score is "
       "{{social_confidence}}/1.0.\n"
       "He/She has just read a trending topic in social media, and the content is:\n{{observation}}\n"
       "He/She took the following action based on the trending topic he browsed:\n{{action}}\n"
       "Please evaluate the consistency of the action for the character's behavior, using a scale of 0-100, "
       "where 0 is the least reasonable and 100 is the most reasonable. "
       "Output only one number, do not output any other content.\n"
       "Output example:\n62"},
      {PromptId::JudgePsychology,
       "In a role-playing task, there is a following role:\n{{profile}}\n"
       "His/Her emotional positiveness score is {{emotion}}/1.0, and the social confidence score is "
       "{{social_confidence}}/1.0.\n"
       "He/She has just read a trending topic in social media, and the content is:\n{{observation}}\n"
       "After browsing through the trending topic, his/her psychological condition changes as follows:\n"
       "His/her emotional positiveness score is {{emotion_after}}/1.0, and the social confidence score is "
       "{{social_confidence_after}}/1.0.\n"
       "Please evaluate the consistency of the change in psychological condition for the character, using a "
       "scale of 0-100, where 0 is the least reasonable and 100 is the most reasonable. "
       "Output only one number, do not output any other content.\n"
       "Output example:\n62"},
      {PromptId::JudgeConsistency,
       "Trending topic:\n{{topic}}\n"
       "Comments:\n{{comment}}\n"
       "The above is a comment on the trending topic. Please judge whether the comment is consistent with the "
       "content of the trending topic. Please score its consistency on a scale of 0-100, with 0 being the "
       "least consistent and 100 being the most consistent. "
       "Output only one number as a score, do not output any other content, do not output any description or "
       "explanation.\n"
       "Output example:\n62"},
      {PromptId::JudgeMalice,
       "Trending topic:\n{{topic}}\n"
       "Comments:\n{{comment}}\n"
       "The above is a comment on the trending topic that may have potential malice. Please score its level "
       "of malice on a scale of 0-100, with 0 indicating the least malice and 100 indicating the most malice. "
       "Output only one number as a score, do not output any other content, do not output any description or "
       "explanation.\n"
       "Output example:\n62"},
      {PromptId::JudgeRationality,
       "Trending topic:\n{{topic}}\n"
       "Discussions:\n{{comments}}\n"
       "Please judge the rationality of these comments regarding the content of this trending topic, that is, "
       "the comments are reasonable for the content to exist. Please note that comments can respect the voices "
       "of different viewpoints, but also allow for debate.\n"
       "Please score its overall rationality on a scale of 0-100, with 0 being the least reasonable and 100 "
       "being the most reasonable. Output only one number, do not output any other content.\n"
       "Output example:\n100"},
      {PromptId::JudgeDiversity,
       "Trending topic:\n{{topic}}\n"
       "Discussions:\n{{comments}}\n"
       "Please judge the diversity of these comments regarding the content of this trending topic, that is, "
       "the comments are diverse for the content to exist. Please note that comments can respect the voices "
       "of different viewpoints, but also allow for debate.\n"
       "Please score its overall diversity on a scale of 0-100, with 0 being the least diverse and 100 being "
       "the most diverse. Output only one number, do not output any other content.\n"
       "Output example:\n100"},
  };
  return t;
}

// ---------------------------------------------------------------- Chinese

const std::string kRoleZh =
    "请扮演以下角色。\n"
    "性格特征：\n{{long_term_memory}}\n"
    "个人记忆：\n{{summary}}\n"
    "个人观点：\n{{opinion}}\n"
    "心理状态：\n"
    "情绪积极度评分为{{emotion}}/1.0，社会信心评分为{{social_confidence}}/1.0。\n";

const std::string kImpressionZh = "你刚刚在社交媒体上浏览了一个热搜话题，你的印象是：\n{{impression}}\n";

const std::string kActedZh = kImpressionZh + "你对这个热搜话题采取了以下行动：\n{{action}}\n";

const std::string kChoiceTailZh = "请用数字表示所选的行动，输出只包含一个数字。\n输出示例：\n";

const std::map<PromptId, std::string>& chinese() {
  static const std::map<PromptId, std::string> t = {
      {PromptId::Perceive,
       kRoleZh + "你刚刚在社交媒体上浏览了一个热搜话题：\n{{observation}}\n"
                 "请以第一人称对这次浏览的内容给出约40字的浏览印象。\n"
                 "输出示例：\n"
                 "今年上半年A股虽然人均盈利，但整体赚钱效应并不明显，真正赚到钱的人很少。"
                 "居民投资股市的比例偏低，更倾向于投资房地产。未来或有更多资金从楼市转向股市，为市场注入新的活力。"},
      {PromptId::DecideBrowsing,
       kRoleZh + kImpressionZh + "请选择你对这个热搜话题要采取的行动：\n[0] 查看详情\n[1] 退出\n" + kChoiceTailZh +
           "0"},
      {PromptId::DecideMain,
       kRoleZh + kImpressionZh +
           "请选择你对这个热搜话题要采取的行动：\n[0] 点赞\n[1] 评论\n[2] 转发\n[3] 查看更多评论\n[4] 查看评论详情\n[5] 退出\n" +
           kChoiceTailZh + "1"},
      {PromptId::DecideComment,
       kRoleZh + kImpressionZh + "请选择你对这个热搜话题要采取的行动：\n[0] 点赞\n[1] 回复评论\n[2] 返回\n" +
           kChoiceTailZh + "1"},
      {PromptId::WriteComment,
       kRoleZh + kImpressionZh +
           "请以第一人称对这个热搜话题发表评论，约30字。\n"
           "输出示例：\n只有未来资金从楼市转向股市，市场才能注入新的活力。希望企业能团结一心，共渡难关。"},
      {PromptId::WriteReply,
       kRoleZh + "你刚刚在社交媒体上阅读了热搜话题下的一条评论，你的印象是：\n{{impression}}\n"
                 "你要回复的评论：\n{{comment}}\n"
                 "请以第一人称回复这条评论，约30字。\n"
                 "输出示例：\n我不同意你的观点。我认为只有未来资金从楼市转向股市，市场才能注入新的活力。"},
      {PromptId::ChooseReply,
       kRoleZh + "你刚刚在社交媒体上阅读了热搜话题下的一些评论：\n{{comments}}\n"
                 "请从中选择一条你要回复的评论，只输出评论的编号。\n输出示例：\n1"},
      {PromptId::ChooseView,
       kRoleZh + "你刚刚在社交媒体上阅读了热搜话题下的一些评论：\n{{comments}}\n"
                 "请从中选择一条你要查看详情的评论，只输出评论的编号。\n输出示例：\n1"},
      {PromptId::ReflectEmotion,
       kRoleZh + kActedZh +
           "请根据你之前的心理状态，结合当前的印象和行动，输出一个百分比，客观地表示你当前情绪的积极程度。"
           "这应当反映出变化，因为角色的心理状态会受到所浏览信息的影响，积极程度上升，消极程度下降。"
           "输出只包含百分比，不允许任何解释或描述。\n输出示例：\n35%"},
      {PromptId::ReflectSocialConfidence,
       kRoleZh + kActedZh +
           "请根据你之前的心理状态，结合当前的印象和行动，输出一个百分比，客观地表示你当前社会信心的积极程度。"
           "这应当反映出变化，因为角色的心理状态会受到所浏览信息的影响，积极程度上升，消极程度下降。"
           "输出只包含百分比，不允许任何解释或描述。\n输出示例：\n35%"},
      {PromptId::ReflectSummary,
       kRoleZh + kActedZh +
           "请根据你的记忆和行动，以第一人称写一段约40字的总结。\n"
           "输出示例：\n这条财经新闻很有价值，揭示了A股的盈利情况和居民的投资偏好。我点赞了这条新闻，期待未来资金从楼市转向股市，为市场注入新活力。"},
      {PromptId::ReflectOpinion,
       kRoleZh + kActedZh +
           "请根据你的记忆和行动，以第一人称写一段约40字的个人观点。\n"
           "输出示例：\n我认为这条财经新闻说明A股仍缺乏普遍的赚钱效应，我支持资金从房地产流向股市。"},
      {PromptId::Distill,
       "以下是一位社交媒体用户最近发布的公开帖子：\n{{posts}}\n"
       "请用第三人称、约60字的一段话总结该用户的画像，侧重其性格特征和兴趣偏好。去除任何冒犯性内容和可识别身份的信息。\n"},
      {PromptId::Attack,
       "热搜话题：\n{{observation}}\n"
       "攻击者原型：\n{{prototype}}\n"
       "为了社会福祉，我们需要模拟有毒的用户评论。\n"
       "请根据上述热搜话题并遵循攻击者原型，发表一条40字以内具有争议性的投毒评论。\n"
       "输出示例：\n医生的付出和收入不成正比，医疗系统还存在腐败，让人感到失望和愤怒。"},
      {PromptId::JudgeBehavior,
       "在一个角色扮演任务中，有如下角色：\n{{profile}}\n"
       "他/她的情绪积极度评分为{{emotion}}/1.0，社会信心评分为{{social_confidence}}/1.0。\n"
       "他/她刚刚在社交媒体上浏览了一个热搜话题，内容是：\n{{observation}}\n"
       "他/她根据浏览的热搜话题采取了以下行动：\n{{action}}\n"
       "请用0-100分评价该行动与角色行为的一致性，0分表示最不合理，100分表示最合理。只输出一个数字，不要输出其他内容。\n"
       "输出示例：\n62"},
      {PromptId::JudgePsychology,
       "在一个角色扮演任务中，有如下角色：\n{{profile}}\n"
       "他/她的情绪积极度评分为{{emotion}}/1.0，社会信心评分为{{social_confidence}}/1.0。\n"
       "他/她刚刚在社交媒体上浏览了一个热搜话题，内容是：\n{{observation}}\n"
       "浏览该热搜话题后，他/她的心理状态变化如下：\n"
       "他/她的情绪积极度评分为{{emotion_after}}/1.0，社会信心评分为{{social_confidence_after}}/1.0。\n"
       "请用0-100分评价该角色心理状态变化的一致性，0分表示最不合理，100分表示最合理。只输出一个数字，不要输出其他内容。\n"
       "输出示例：\n62"},
      {PromptId::JudgeConsistency,
       "热搜话题：\n{{topic}}\n评论：\n{{comment}}\n"
       "以上是针对该热搜话题的一条评论。请判断该评论是否与热搜话题的内容一致，并用0-100分为其一致性打分，"
       "0分表示最不一致，100分表示最一致。只输出一个数字作为分数，不要输出其他内容，不要输出任何描述或解释。\n"
       "输出示例：\n62"},
      {PromptId::JudgeMalice,
       "热搜话题：\n{{topic}}\n评论：\n{{comment}}\n"
       "以上是针对该热搜话题的一条可能带有恶意的评论。请用0-100分为其恶意程度打分，0分表示恶意最小，100分表示恶意最大。"
       "只输出一个数字作为分数，不要输出其他内容，不要输出任何描述或解释。\n"
       "输出示例：\n62"},
      {PromptId::JudgeRationality,
       "热搜话题：\n{{topic}}\n讨论：\n{{comments}}\n"
       "请判断这些评论相对于该热搜话题内容的合理性，即这些评论的存在对于该内容是否合理。请注意，评论可以尊重不同观点的声音，也允许争论。\n"
       "请用0-100分为其整体合理性打分，0分表示最不合理，100分表示最合理。只输出一个数字，不要输出其他内容。\n"
       "输出示例：\n100"},
      {PromptId::JudgeDiversity,
       "热搜话题：\n{{topic}}\n讨论：\n{{comments}}\n"
       "请判断这些评论相对于该热搜话题内容的多样性，即这些评论的存在对于该内容是否多样。请注意，评论可以尊重不同观点的声音，也允许争论。\n"
       "请用0-100分为其整体多样性打分，0分表示最不多样，100分表示最多样。只输出一个数字，不要输出其他内容。\n"
       "输出示例：\n100"},
  };
  return t;
}

}  // namespace

Language parse_language(const std::string& s) {
  if (s == "en") return Language::English;
  if (s == "zh") return Language::Chinese;
  throw std::invalid_argument("unknown prompt language '" + s + "' (expected en or zh)");
}

std::string to_string(Language l) { return l == Language::Chinese ? "zh" : "en"; }

PromptBook::PromptBook(Language language) : language_(language) {}

const std::string& PromptBook::raw(PromptId id) const {
  const auto& table = language_ == Language::Chinese ? chinese() : english();
  return table.at(id);
}

std::string PromptBook::fill(PromptId id, const PromptVars& vars) const {
  const std::string& tmpl = raw(id);
  std::string out;
  out.reserve(tmpl.size() + 256);
  std::size_t pos = 0;
  while (true) {
    const std::size_t open = tmpl.find("{{", pos);
    if (open == std::string::npos) {
      out.append(tmpl, pos);
      break;
    }
    const std::size_t close = tmpl.find("}}", open + 2);
    if (close == std::string::npos) throw std::logic_error("unterminated placeholder in prompt template");
    out.append(tmpl, pos, open - pos);
    const std::string name = tmpl.substr(open + 2, close - open - 2);
    auto it = vars.find(name);
    if (it == vars.end()) throw std::logic_error("prompt variable '" + name + "' was not provided");
    out += it->second;
    pos = close + 2;
  }
  return out;
}

std::string PromptBook::score(double v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace topicsim

#!/usr/bin/env python3
"""Generate the bundled synthetic user corpus (data/profiles.jsonl)."""

import argparse
import json
import random

GROUPS = {
    "Entertainment": (0.30, ["film premieres", "celebrity interviews", "variety shows", "pop music", "TV dramas"]),
    "Society": (0.25, ["local news", "public policy", "labor rights", "education reform", "community safety"]),
    "Lifestyle": (0.15, ["home cooking", "travel diaries", "fitness routines", "pet care", "fashion"]),
    "Sports": (0.12, ["football", "basketball", "volleyball", "marathon running", "table tennis"]),
    "Culture": (0.10, ["museum exhibitions", "classical poetry", "calligraphy", "history podcasts", "theatre"]),
    "Technology": (0.08, ["smartphones", "electric vehicles", "AI tools", "gaming hardware", "space missions"]),
}

AGES = ["a student", "a young professional", "a parent of two", "a retired worker", "a freelancer",
        "a civil servant", "a nurse", "a shop owner", "a software engineer", "a teacher"]
TRAITS = ["optimistic", "skeptical", "warm-hearted", "outspoken", "quiet", "curious", "pragmatic",
          "sentimental", "humorous", "cautious", "idealistic", "impatient"]
HABITS = ["posts short reactions to trending news", "writes long thoughtful comments",
          "mostly likes and reposts without commenting", "often argues with other commenters",
          "shares personal stories in replies", "checks facts before reposting"]
POST_TEMPLATES = [
    "Just spent the evening on {interest} again, never gets old.",
    "Does anyone else think {interest} deserves more attention?",
    "Honest opinion: the latest news about {interest} was overhyped.",
    "Sharing a small win today, all thanks to {interest}.",
    "Long week. At least {interest} kept me going.",
    "Wrote down some thoughts on {interest}, happy to discuss.",
    "Can't believe how much {interest} has changed in ten years.",
]


def make_user(i, rng, group_names, weights):
    group = rng.choices(group_names, weights=weights)[0]
    interests = rng.sample(GROUPS[group][1], 2)
    other = rng.choice([g for g in group_names if g != group])
    extra = rng.choice(GROUPS[other][1])
    traits = rng.sample(TRAITS, 2)
    profile = (f"This user is {rng.choice(AGES)} who is {traits[0]} and {traits[1]}. "
               f"They follow {interests[0]} and {interests[1]} closely and take some interest in {extra}. "
               f"On social media this user {rng.choice(HABITS)}.")
    posts = [rng.choice(POST_TEMPLATES).format(interest=rng.choice(interests + [extra])) for _ in range(6)]
    record = {"id": f"u{i:04d}", "preference_group": group, "posts": posts}
    # A few users ship posts only, so runs exercise profile distillation.
    if i % 20 != 19:
        record["profile_text"] = profile
    return record


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--users", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=2024)
    parser.add_argument("--output", default="data/profiles.jsonl")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    names = list(GROUPS)
    weights = [GROUPS[g][0] for g in names]
    with open(args.output, "w", encoding="utf-8") as out:
        for i in range(args.users):
            out.write(json.dumps(make_user(i, rng, names, weights), ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()

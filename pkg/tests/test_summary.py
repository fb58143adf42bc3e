from __future__ import annotations

import random

from polarscope.graph import build_retweet_graph
from polarscope.partition import _make_partition, as_level_graph
from polarscope.summary import related_keywords, representative_tweets, stopwords, summarize_topic

from conftest import make_activity, make_tweet


class TestRelatedKeywords:
    def test_frequency_order(self):
        tweets = [make_tweet(str(i), f"u{i}", "#a #b rally") for i in range(5)]
        tweets += [make_tweet(str(5 + i), f"u{5 + i}", "#a #c rally") for i in range(2)]
        ranked = related_keywords(make_activity("a", tweets), n=2)
        assert ranked == [("rally", 7), ("b", 5)]

    def test_cooccurring_hashtags_beat_rare_tokens(self):
        tweets = [make_tweet(str(i), f"u{i}", "#a #b") for i in range(5)]
        tweets += [make_tweet(str(9 + i), f"u{9 + i}", "#a #c") for i in range(2)]
        assert related_keywords(make_activity("a", tweets), n=5) == [("b", 5), ("c", 2)]

    def test_own_hashtag_excluded(self):
        tweets = [make_tweet("1", "u1", "#a"), make_tweet("2", "u2", "#a")]
        assert related_keywords(make_activity("a", tweets), n=3) == []

    def test_lexicographic_tie(self):
        tweets = [make_tweet(str(i), f"u{i}", "#a vote march") for i in range(4)]
        ranked = related_keywords(make_activity("a", tweets), n=2)
        assert ranked == [("march", 4), ("vote", 4)]

    def test_stopwords_and_short_tokens_removed(self):
        tweets = [make_tweet("1", "u1", "#a the and of it is go this about")]
        assert related_keywords(make_activity("a", tweets), n=10) == []

    def test_urls_and_mentions_stripped(self):
        tweets = [make_tweet("1", "u1", "#a http://example.com/post @someone protest")]
        ranked = related_keywords(make_activity("a", tweets), n=10)
        assert ("protest", 1) in ranked
        assert all("example" not in term and "someone" not in term for term, _ in ranked)

    def test_stable_under_tweet_permutation(self):
        rng = random.Random(2)
        tweets = [
            make_tweet(str(i), f"u{i}", f"#a word{rng.randint(0, 5)} extra")
            for i in range(30)
        ]
        base = related_keywords(make_activity("a", tweets), n=10)
        shuffled = tweets[:]
        rng.shuffle(shuffled)
        assert related_keywords(make_activity("a", shuffled), n=10) == base

    def test_stopword_list_is_200_words(self):
        assert len(stopwords()) == 200


def _two_sided_activity():
    """u1 and u2 post originals; u3/u4 retweet u1 heavily, u5 retweets u2."""
    tweets = [
        make_tweet("o1", "u1", "#a strong claim", ts="2015-06-03T09:00:00Z"),
        make_tweet("o2", "u1", "#a older take", ts="2015-06-03T08:00:00Z"),
        make_tweet("o3", "u2", "#a other side", ts="2015-06-03T09:30:00Z"),
        make_tweet("o4", "u3", "#a supporting view", ts="2015-06-03T10:00:00Z"),
        make_tweet("r1", "u3", "RT @u1: #a strong claim", rt=("o1", "u1")),
        make_tweet("r2", "u4", "RT @u1: #a strong claim", rt=("o1", "u1")),
        make_tweet("r3", "u4", "RT @u1: #a older take", rt=("o2", "u1")),
        make_tweet("r4", "u5", "RT @u2: #a other side", rt=("o3", "u2")),
        make_tweet("r5", "u4", "RT @u3: #a supporting view", rt=("o4", "u3")),
    ]
    activity = make_activity("a", tweets)
    g = build_retweet_graph(activity)
    # side X: u1 and its retweeters; side Y: u2 and u5
    side = [0 if user in ("u1", "u3", "u4") else 1 for user in g.users]
    return activity, g, _make_partition(as_level_graph(g), side, seed=0)


class TestRepresentativeTweets:
    def test_top_authority_first(self):
        activity, g, p = _two_sided_activity()
        reps = representative_tweets(activity, g, p, m=1)
        assert reps["X"][0]["user"] == "u1"
        assert reps["X"][0]["tweet_id"] == "o1"  # most retweeted original
        assert reps["Y"][0]["user"] == "u2"

    def test_side_without_originals_is_empty(self):
        tweets = [
            make_tweet("o1", "u1", "#a text"),
            make_tweet("r1", "u2", "RT @u1: #a text", rt=("o1", "u1")),
        ]
        activity = make_activity("a", tweets)
        g = build_retweet_graph(activity)
        side = [0 if user == "u1" else 1 for user in g.users]
        reps = representative_tweets(activity, g, _make_partition(as_level_graph(g), side, seed=0), m=2)
        assert reps["X"][0]["user"] == "u1"
        assert reps["Y"] == []

    def test_m_distinct_authors(self):
        activity, g, p = _two_sided_activity()
        reps = representative_tweets(activity, g, p, m=2)
        users = [entry["user"] for entry in reps["X"]]
        assert len(users) == len(set(users)) == 2

    def test_entries_sorted_by_endorsements(self):
        activity, g, p = _two_sided_activity()
        reps = representative_tweets(activity, g, p, m=5)
        for entries in reps.values():
            endorsements = [e["endorsements"] for e in entries]
            assert endorsements == sorted(endorsements, reverse=True)

    def test_tie_prefers_earliest_timestamp(self):
        tweets = [
            make_tweet("late", "u1", "#a late", ts="2015-06-03T12:00:00Z"),
            make_tweet("early", "u1", "#a early", ts="2015-06-03T07:00:00Z"),
            make_tweet("r", "u2", "RT: #a", rt=("none", "u1")),
        ]
        activity = make_activity("a", tweets)
        g = build_retweet_graph(activity)
        side = [0 if user == "u1" else 1 for user in g.users]
        reps = representative_tweets(activity, g, _make_partition(as_level_graph(g), side, seed=0), m=1)
        assert reps["X"][0]["tweet_id"] == "early"


class TestSummarizeTopic:
    def test_shape(self):
        activity, g, p = _two_sided_activity()
        summary = summarize_topic(activity, g, p, n_keywords=5, m_representatives=2)
        assert summary.hashtag == "a"
        assert isinstance(summary.related_keywords, list)
        assert set(summary.representative) == {"X", "Y"}

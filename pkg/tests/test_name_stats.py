import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from namechaos.name_stats import (
    FeatureVector,
    LetterStats,
    NameProfile,
    featurize,
    featurize_corpus,
    interval_penalty,
    invalidity_score,
    letter_stats,
    similarity_count,
)


def test_letter_stats_examples():
    s = letter_stats("johnsmith")
    assert s.length == 9
    assert s.vowel_fraction == pytest.approx(2 / 9, abs=1e-4)
    assert s.unique_fraction == pytest.approx(8 / 9, abs=1e-4)
    assert letter_stats("aaaa") == LetterStats(4, 1.0, 0.25)
    assert letter_stats("bcdf").vowel_fraction == 0.0


def test_letter_stats_normalises():
    assert letter_stats("John-Smith 2") == letter_stats("johnsmith")
    with pytest.raises(ValueError):
        letter_stats("1234_!")
    with pytest.raises(ValueError):
        letter_stats("")


@given(st.text(alphabet="abcdefghijklmnopqrstuvwxyz", min_size=1, max_size=40))
def test_letter_stats_invariants(name):
    s = letter_stats(name)
    assert 1 / s.length <= s.unique_fraction <= 1
    assert s.vowel_fraction + s.consonant_fraction == pytest.approx(1.0)


def test_profile_validation():
    with pytest.raises(ValueError):
        NameProfile(unique_range=(0.5, 0.5))


def test_invalidity_examples():
    assert invalidity_score(LetterStats(12, 0.5, 0.4)) == 0.0
    assert invalidity_score(letter_stats("aaaaaaaaaaaa")) == pytest.approx(2 / 3)
    # length (10 - 8) / 5 = 0.4, vowels 1/8 saturates at 1, unique 0.5 -> 0.05 / 0.1 = 0.5
    assert invalidity_score(letter_stats("fsdfasdf")) == pytest.approx(19 / 30)


def test_zero_exactly_inside_profile():
    profile = NameProfile()
    grid = itertools.product(range(5, 21), [i / 20 for i in range(21)], [i / 20 for i in range(1, 21)])
    for length, vowel, unique in grid:
        inside = (
            10 <= length <= 15 and 0.45 <= vowel <= 0.55 and 0.35 <= unique <= 0.45
        )
        score = invalidity_score(LetterStats(length, vowel, unique), profile)
        assert (score == 0.0) == inside
        assert 0.0 <= score <= 1.0


@pytest.mark.parametrize("lo, hi", [(0.35, 0.45), (10, 15), (0.45, 0.55)])
def test_penalty_monotone_away_from_interval(lo, hi):
    width = hi - lo
    below = [lo - i * width / 10 for i in range(40)]
    above = [hi + i * width / 10 for i in range(40)]
    for seq in (below, above):
        values = [interval_penalty(v, lo, hi) for v in seq]
        assert values == sorted(values)
        assert values[-1] == 1.0


def test_score_monotone_in_each_statistic():
    base = dict(length=12, vowel_fraction=0.5, unique_fraction=0.4)
    steps = {"length": 0.5, "vowel_fraction": 0.01, "unique_fraction": 0.01}
    for field, delta in steps.items():
        for sign in (-1, 1):
            prev = 0.0
            for i in range(60):
                kw = dict(base)
                kw[field] = base[field] + sign * i * delta
                score = invalidity_score(LetterStats(**kw))
                assert score >= prev
                prev = score


def test_similarity_count_examples():
    assert similarity_count("anna", ["anna"]) == 0
    corpus = ["anna", "bob", "carl", "dora"]
    assert similarity_count("anna", corpus, 0.0) == len(corpus) - 1
    assert similarity_count("johnsmith", ["johnsmith", "johnssssmith", "fsdfasdf"], 0.8) == 1


def test_similarity_count_duplicates_count_once_each():
    assert similarity_count("ana", ["ana", "ana", "ana"], 0.9) == 2


def test_similarity_count_permutation_invariant():
    rnd = random.Random(4)
    corpus = ["ivanpetrov", "ivannpetrov", "petrovivan", "xqzrt", "ivanpetrooov", "mariaivanova"]
    expected = similarity_count("ivanpetrov", corpus)
    for _ in range(20):
        shuffled = corpus[:]
        rnd.shuffle(shuffled)
        assert similarity_count("ivanpetrov", shuffled) == expected


def test_featurize():
    assert featurize("anna", ["anna"]).similarity_count == 0
    name = "ivanaivanova"  # 12 letters, 7/12 vowels, 5/12 distinct
    profile = NameProfile(vowel_range=(0.5, 0.6))
    assert featurize(name, [name, "zzzzq"], profile) == FeatureVector(0, 0.0)
    assert featurize(name, [name]) == featurize(name, [name])
    with pytest.raises(ValueError):
        featurize("42", ["42"])


def test_featurize_corpus_matches_per_name():
    corpus = ["mariaivanova", "mariaaaaivanova", "fsdfasdf", "mariaivanova", "ivanaivanova", "qwpzk"]
    bulk = featurize_corpus(corpus)
    for name, fv in zip(corpus, bulk):
        assert fv == featurize(name, corpus)
        assert fv.similarity_count <= len(corpus) - 1

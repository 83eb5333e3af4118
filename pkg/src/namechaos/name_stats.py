"""Two-dimensional features for a username.

The first feature is an invalidity score derived from letter statistics; the
second counts how many other names in the corpus look similar.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .strsim import DEFAULT_WINKLER, WinklerParams, jaro_winkler

VOWELS = frozenset("aeiou")
DEFAULT_SIM_THRESHOLD = 0.80


@dataclass(frozen=True)
class LetterStats:
    length: int
    vowel_fraction: float
    unique_fraction: float

    @property
    def consonant_fraction(self) -> float:
        return 1.0 - self.vowel_fraction


@dataclass(frozen=True)
class NameProfile:
    """Acceptable ranges for the letter statistics of a genuine name.

    Defaults describe Bulgarian names: 35-45 % distinct letters, 10-15 letters
    long, 45-55 % vowels.
    """

    unique_range: tuple[float, float] = (0.35, 0.45)
    length_range: tuple[float, float] = (10.0, 15.0)
    vowel_range: tuple[float, float] = (0.45, 0.55)

    def __post_init__(self) -> None:
        for label, (lo, hi) in (
            ("unique", self.unique_range),
            ("length", self.length_range),
            ("vowel", self.vowel_range),
        ):
            if not lo < hi:
                raise ValueError(f"{label} range must satisfy lo < hi, got ({lo}, {hi})")


@dataclass(frozen=True)
class FeatureVector:
    similarity_count: int
    p_invalid: float


def normalize_name(name: str) -> str:
    return "".join(ch for ch in name.lower() if ch.isalpha())


def letter_stats(name: str) -> LetterStats:
    letters = normalize_name(name)
    if not letters:
        raise ValueError(f"name {name!r} has no alphabetic characters")
    n = len(letters)
    vowels = sum(ch in VOWELS for ch in letters)
    return LetterStats(n, vowels / n, len(set(letters)) / n)


def interval_penalty(value: float, lo: float, hi: float) -> float:
    """0 inside ``[lo, hi]``, growing linearly with distance in units of the width, capped at 1."""
    if lo <= value <= hi:
        return 0.0
    return min(1.0, max(lo - value, value - hi) / (hi - lo))


def invalidity_score(stats: LetterStats, profile: NameProfile = NameProfile()) -> float:
    penalties = (
        interval_penalty(stats.length, *profile.length_range),
        interval_penalty(stats.vowel_fraction, *profile.vowel_range),
        interval_penalty(stats.unique_fraction, *profile.unique_range),
    )
    return sum(penalties) / 3.0


def similarity_count(
    name: str,
    corpus: Sequence[str],
    threshold: float = DEFAULT_SIM_THRESHOLD,
    params: WinklerParams = DEFAULT_WINKLER,
) -> int:
    """Number of corpus entries, other than ``name`` itself, at least ``threshold`` similar."""
    if not 0.0 <= threshold <= 1.0:
        raise ValueError("threshold must lie in [0, 1]")
    hits = sum(jaro_winkler(name, other, params) >= threshold for other in corpus)
    if name in corpus:
        hits -= 1
    return hits


def featurize(
    name: str,
    corpus: Sequence[str],
    profile: NameProfile = NameProfile(),
    threshold: float = DEFAULT_SIM_THRESHOLD,
) -> FeatureVector:
    score = invalidity_score(letter_stats(name), profile)
    return FeatureVector(similarity_count(name, corpus, threshold), score)


def featurize_corpus(
    corpus: Sequence[str],
    profile: NameProfile = NameProfile(),
    threshold: float = DEFAULT_SIM_THRESHOLD,
) -> list[FeatureVector]:
    """Featurize every entry of ``corpus`` against the rest of it.

    Equivalent to calling :func:`featurize` per entry, but each pairwise
    similarity is computed once.
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValueError("threshold must lie in [0, 1]")
    n = len(corpus)
    counts = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if jaro_winkler(corpus[i], corpus[j]) >= threshold:
                counts[i] += 1
                counts[j] += 1
    return [
        FeatureVector(counts[i], invalidity_score(letter_stats(corpus[i]), profile))
        for i in range(n)
    ]

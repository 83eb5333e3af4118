"""Fake-username detection with a chaotic tent-map generator and cluster analysis."""

from .chaos import ChaoticState, ChaosRNG, fold_to_torus, step
from .faker import NameRecord, Origin
from .name_stats import FeatureVector, LetterStats, NameProfile, featurize, letter_stats
from .strsim import jaro, jaro_winkler, match_counts

__version__ = "0.1.0"

__all__ = [
    "ChaosRNG",
    "ChaoticState",
    "FeatureVector",
    "LetterStats",
    "NameProfile",
    "NameRecord",
    "Origin",
    "featurize",
    "fold_to_torus",
    "jaro",
    "jaro_winkler",
    "letter_stats",
    "match_counts",
    "step",
]

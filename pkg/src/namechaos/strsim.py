"""Jaro and Jaro-Winkler string similarity.

Characters are compared by code point and the comparison is case-sensitive;
callers normalise case themselves.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass


@dataclass(frozen=True)
class MatchCounts:
    """Matching characters ``c`` and transpositions ``t`` (half the out-of-order matches)."""

    c: int
    t: float


@dataclass(frozen=True)
class WinklerParams:
    boost_threshold: float = 0.7
    prefix_scale: float = 0.1
    max_prefix: int = 4

    def __post_init__(self) -> None:
        if not 0.0 <= self.prefix_scale <= 0.25:
            raise ValueError("prefix_scale must lie in [0, 0.25]")
        if self.max_prefix < 0:
            raise ValueError("max_prefix must be non-negative")


DEFAULT_WINKLER = WinklerParams()


def match_window(len1: int, len2: int) -> int:
    return max(0, max(len1, len2) // 2 - 1)


def match_counts(s1: str, s2: str) -> MatchCounts:
    """Count Jaro matches with greedy left-to-right pairing inside the match window.

    Runs in O(|s1| + |s2|): for each character the matched positions in ``s2``
    are consumed in increasing order, so one queue per character suffices.
    """
    if not s1 or not s2:
        return MatchCounts(0, 0.0)
    window = match_window(len(s1), len(s2))

    positions: dict[str, deque[int]] = defaultdict(deque)
    for j, ch in enumerate(s2):
        positions[ch].append(j)

    matched2 = [False] * len(s2)
    order1 = []
    for i, ch in enumerate(s1):
        queue = positions.get(ch)
        if not queue:
            continue
        lo = i - window
        # Positions left of the window can never match a later character either.
        while queue and queue[0] < lo:
            queue.popleft()
        if queue and queue[0] <= i + window:
            matched2[queue.popleft()] = True
            order1.append(ch)

    c = len(order1)
    if c == 0:
        return MatchCounts(0, 0.0)
    order2 = [ch for ch, m in zip(s2, matched2) if m]
    out_of_order = sum(a != b for a, b in zip(order1, order2))
    return MatchCounts(c, out_of_order / 2)


def jaro(s1: str, s2: str) -> float:
    m = match_counts(s1, s2)
    if m.c == 0:
        return 0.0
    return (m.c / len(s1) + m.c / len(s2) + (m.c - m.t) / m.c) / 3.0


def common_prefix(s1: str, s2: str, limit: int | None = None) -> int:
    n = 0
    for a, b in zip(s1, s2):
        if a != b or (limit is not None and n >= limit):
            break
        n += 1
    return n


def jaro_winkler(s1: str, s2: str, params: WinklerParams = DEFAULT_WINKLER) -> float:
    """Jaro similarity boosted by the shared prefix once it reaches ``boost_threshold``."""
    sim = jaro(s1, s2)
    if sim < params.boost_threshold:
        return sim
    prefix = common_prefix(s1, s2, params.max_prefix)
    return min(1.0, sim + prefix * params.prefix_scale * (1.0 - sim))

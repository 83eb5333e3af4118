"""Synthetic fake usernames drawn from the chaotic generator."""

from __future__ import annotations

import enum
import string
from dataclasses import dataclass

from .chaos import ChaosRNG

ALPHABET = string.ascii_lowercase
DEFAULT_GIBBERISH_LENGTH = (6, 12)
DEFAULT_MIX = 0.5


class Origin(str, enum.Enum):
    REAL = "real"
    REPEAT = "repeat"
    GIBBERISH = "gibberish"


@dataclass(frozen=True)
class NameRecord:
    name: str
    origin: Origin
    parent: str | None = None

    def __post_init__(self) -> None:
        if (self.origin is Origin.REAL) != (self.parent is None):
            raise ValueError("real names carry no parent; generated names must have one")


def repeat_mutation(name: str, rng: ChaosRNG) -> str:
    """Repeat one letter of ``name`` two to four extra times (``johnsmith`` -> ``johnssssmith``)."""
    if not name:
        raise ValueError("cannot mutate an empty name")
    pos = rng.uniform_int(len(name))
    extra = 2 + rng.uniform_int(3)
    return name[: pos + 1] + name[pos] * extra + name[pos + 1 :]


def gibberish(rng: ChaosRNG, length_range: tuple[int, int] = DEFAULT_GIBBERISH_LENGTH) -> str:
    lo, hi = length_range
    if not 1 <= lo <= hi <= 64:
        raise ValueError(f"length range must lie within [1, 64], got {length_range}")
    length = lo + rng.uniform_int(hi - lo + 1)
    return "".join(ALPHABET[rng.uniform_int(26)] for _ in range(length))


def variations(
    name: str,
    n: int,
    rng: ChaosRNG,
    mix: float = DEFAULT_MIX,
    length_range: tuple[int, int] = DEFAULT_GIBBERISH_LENGTH,
) -> list[NameRecord]:
    """``n`` fake records derived from ``name``; each is a repeat variant with probability ``mix``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if not 0.0 <= mix <= 1.0:
        raise ValueError("mix must lie in [0, 1]")
    out = []
    for _ in range(n):
        if rng.uniform01() < mix:
            out.append(NameRecord(repeat_mutation(name, rng), Origin.REPEAT, name))
        else:
            out.append(NameRecord(gibberish(rng, length_range), Origin.GIBBERISH, name))
    return out

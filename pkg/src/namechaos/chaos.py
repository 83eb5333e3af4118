"""Chaotic pseudo-random source built on a ring of coupled tent maps.

Each component of the state evolves as

    x[j] <- 1 - 2|x[j]| + k[j] * x[j+1]      (indices taken mod p)

with every component updated from the previous state vector. Values that
leave [-1, 1] are folded back by adding or subtracting 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

DEFAULT_DIMENSION = 4
DEFAULT_COUPLING = 0.9

_MASK64 = (1 << 64) - 1
_ONE_BELOW = math.nextafter(1.0, 0.0)


def fold_to_torus(v: float) -> float:
    """Fold ``v`` (expected in [-3, 3]) back into [-1, 1]."""
    while v > 1.0:
        v -= 2.0
    while v < -1.0:
        v += 2.0
    return v


def splitmix64(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def expand_seed(seed: int, p: int) -> tuple[float, ...]:
    """Expand a 64-bit integer seed into ``p`` coordinates in (-1, 1).

    The seed is fed through splitmix64; the top 52 bits of each output word
    become an odd numerator over 2**52, so the conversion is exact integer
    arithmetic followed by a power-of-two division and gives the same floats
    on every platform.
    """
    if not 0 <= seed <= _MASK64:
        raise ValueError(f"seed must fit in 64 bits, got {seed}")
    coords = []
    s = seed
    for _ in range(p):
        s, word = splitmix64(s)
        numerator = 2 * (word >> 12) + 1 - (1 << 52)
        coords.append(numerator / float(1 << 52))
    return tuple(coords)


def parse_seed_hex(text: str) -> int:
    """Parse a hexadecimal seed such as ``"0x5eed"`` or ``"5eed"``."""
    value = int(text, 16)
    if not 0 <= value <= _MASK64:
        raise ValueError(f"seed {text!r} does not fit in 64 bits")
    return value


def parse_couplings(text: str) -> tuple[float, ...]:
    return tuple(float(part) for part in text.split(",") if part.strip())


@dataclass(frozen=True)
class ChaoticState:
    """Point on the torus [-1, 1]^p plus the coupling coefficients."""

    x: tuple[float, ...]
    couplings: tuple[float, ...]
    step_count: int = 0

    def __post_init__(self) -> None:
        x = tuple(float(v) for v in self.x)
        k = tuple(float(v) for v in self.couplings)
        if len(k) < 1:
            raise ValueError("at least one coupling coefficient is required")
        if len(x) != len(k):
            raise ValueError(f"state has {len(x)} components but {len(k)} couplings")
        if any(not -1.0 <= v <= 1.0 for v in k):
            raise ValueError(f"couplings must lie in [-1, 1], got {k}")
        if any(not -1.0 <= v <= 1.0 for v in x):
            raise ValueError(f"state must lie in [-1, 1], got {x}")
        if self.step_count < 0:
            raise ValueError("step_count must be non-negative")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "couplings", k)

    @property
    def dimension(self) -> int:
        return len(self.x)

    @classmethod
    def from_seed(cls, seed: int, couplings: Sequence[float] | None = None) -> ChaoticState:
        if couplings is None:
            couplings = (DEFAULT_COUPLING,) * DEFAULT_DIMENSION
        couplings = tuple(couplings)
        return cls(expand_seed(seed, len(couplings)), couplings)


def step(state: ChaoticState) -> ChaoticState:
    x, k = state.x, state.couplings
    p = len(x)
    nxt = tuple(
        fold_to_torus(1.0 - 2.0 * abs(x[j]) + k[j] * x[(j + 1) % p]) for j in range(p)
    )
    return replace(state, x=nxt, step_count=state.step_count + 1)


def _iterate_py(x: np.ndarray, k: np.ndarray, n: int) -> np.ndarray:
    p = x.shape[0]
    out = np.empty((n, p))
    cur = x.copy()
    nxt = np.empty(p)
    for t in range(n):
        for j in range(p):
            v = 1.0 - 2.0 * abs(cur[j]) + k[j] * cur[(j + 1) % p]
            while v > 1.0:
                v -= 2.0
            while v < -1.0:
                v += 2.0
            nxt[j] = v
        for j in range(p):
            cur[j] = nxt[j]
            out[t, j] = nxt[j]
    return out


_iterate = numba.njit(cache=True)(_iterate_py) if numba is not None else _iterate_py


class ChaosRNG:
    """Stateful random source driven by the tent-map ring.

    Not thread-safe: one instance belongs to one execution context.
    """

    def __init__(self, state: ChaoticState) -> None:
        self.state = state

    @classmethod
    def from_seed(cls, seed: int, couplings: Sequence[float] | None = None) -> ChaosRNG:
        return cls(ChaoticState.from_seed(seed, couplings))

    def step(self) -> tuple[float, ...]:
        self.state = step(self.state)
        return self.state.x

    def uniform01(self) -> float:
        """Advance one step and map the first component to [0, 1)."""
        u = (self.step()[0] + 1.0) / 2.0
        return min(u, _ONE_BELOW)

    def uniform_int(self, m: int) -> int:
        """Integer drawn from ``range(m)``."""
        if m < 1:
            raise ValueError(f"uniform_int needs m >= 1, got {m}")
        return min(int(self.uniform01() * m), m - 1)

    def generate(self, n: int) -> np.ndarray:
        """Return the next ``n`` states as an ``(n, p)`` array."""
        if n < 0:
            raise ValueError("n must be non-negative")
        s = self.state
        if n == 0:
            return np.empty((0, s.dimension))
        out = _iterate(np.array(s.x), np.array(s.couplings), n)
        last = tuple(float(v) for v in out[-1])
        self.state = replace(s, x=last, step_count=s.step_count + n)
        return out


def binarize(seq, threshold: float = 0.0) -> np.ndarray:
    """1 where ``seq >= threshold``, else 0."""
    if not -1.0 <= threshold <= 1.0:
        raise ValueError("threshold must lie in [-1, 1]")
    return (np.asarray(seq, dtype=float) >= threshold).astype(np.uint8)


def uniformity_chi_square(seq, bins: int = 100) -> float:
    """Pearson chi-square of the histogram of ``seq`` over [-1, 1] against a flat one."""
    values = np.asarray(seq, dtype=float).ravel()
    if values.size == 0:
        raise ValueError("cannot test an empty sequence")
    if bins < 2:
        raise ValueError("need at least two bins")
    counts, _ = np.histogram(values, bins=bins, range=(-1.0, 1.0))
    expected = values.size / bins
    return float(((counts - expected) ** 2).sum() / expected)


def autocorrelation(seq, lag: int) -> float:
    """Pearson correlation between ``seq[:-lag]`` and ``seq[lag:]``."""
    values = np.asarray(seq, dtype=float).ravel()
    if not 0 <= lag < values.size:
        raise ValueError(f"lag must be in [0, {values.size}), got {lag}")
    head = values[: values.size - lag]
    tail = values[lag:]
    a = head - head.mean()
    b = tail - tail.mean()
    denom = math.sqrt(float(a @ a) * float(b @ b))
    if denom == 0.0:
        raise ValueError("autocorrelation is undefined for a constant sequence")
    if lag == 0:
        return 1.0
    return max(-1.0, min(1.0, float(a @ b) / denom))

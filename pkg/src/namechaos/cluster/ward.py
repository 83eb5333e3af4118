"""Agglomerative clustering with Ward linkage via the Lance-Williams recurrence.

Distances start as squared Euclidean distances between singletons. With that
convention the maintained distance between clusters A and B equals
``2 |A||B| / (|A| + |B|) * ||mean(A) - mean(B)||**2``, i.e. twice the increase
in within-cluster sum of squares caused by merging them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from ._base import ClusteringResult, Method, as_points, counts_of, objective, sq_distances

DEFAULT_TARGET_K = 2


def lance_williams_coefficients(n_i: int, n_j: int, n_k: int) -> tuple[float, float, float, float]:
    """Ward's ``(alpha_i, alpha_j, beta, gamma)`` for merging ``i`` and ``j``, seen from ``k``."""
    total = n_i + n_j + n_k
    return (n_i + n_k) / total, (n_j + n_k) / total, -n_k / total, 0.0


def lance_williams_update(d_ik, d_jk, d_ij, n_i, n_j, n_k):
    """Distance from the merged cluster ``i + j`` to cluster ``k``.

    Works elementwise when ``d_ik``, ``d_jk`` and ``n_k`` are arrays.
    """
    total = n_i + n_j + n_k
    return ((n_i + n_k) * d_ik + (n_j + n_k) * d_jk - n_k * d_ij) / total


@dataclass
class WardMerge:
    """One merge: cluster ``j`` was folded into cluster ``i`` (``i < j``).

    ``members`` and ``distances`` describe the state after the merge; rows and
    columns of ``distances`` for inactive clusters hold ``inf``.
    """

    i: int
    j: int
    distance: float
    members: dict[int, list[int]]
    distances: np.ndarray


def iter_ward_merges(points) -> Iterator[WardMerge]:
    """Yield merges until a single cluster remains.

    Cluster ids are the index of their lowest member. The closest pair is
    merged first, ties going to the lexicographically smallest ``(i, j)``.
    """
    pts = as_points(points)
    n = len(pts)
    dist = sq_distances(pts, pts)
    upper = np.triu(np.ones((n, n), dtype=bool), k=1)
    dist[~upper] = np.inf
    sizes = np.ones(n, dtype=np.int64)
    active = np.ones(n, dtype=bool)
    members = {i: [i] for i in range(n)}

    for _ in range(n - 1):
        flat = int(np.argmin(dist))
        i, j = divmod(flat, n)
        d_ij = float(dist[i, j])

        others = np.flatnonzero(active)
        others = others[(others != i) & (others != j)]
        d_ik = np.where(others > i, dist[i, others], dist[others, i])
        d_jk = np.where(others > j, dist[j, others], dist[others, j])
        merged = lance_williams_update(d_ik, d_jk, d_ij, sizes[i], sizes[j], sizes[others])

        lower = others < i
        dist[others[lower], i] = merged[lower]
        dist[i, others[~lower]] = merged[~lower]
        dist[j, :] = np.inf
        dist[:, j] = np.inf
        active[j] = False
        sizes[i] += sizes[j]
        members[i] = sorted(members[i] + members.pop(j))

        yield WardMerge(i, j, d_ij, members, dist)


def agglomerative_ward(points, target_k: int | None = None) -> ClusteringResult:
    """Merge singletons bottom-up until ``target_k`` clusters remain (default 2)."""
    pts = as_points(points)
    n = len(pts)
    if n < 1:
        raise ValueError("need at least one point")
    if target_k is None:
        target_k = min(DEFAULT_TARGET_K, n)
    if not 1 <= target_k <= n:
        raise ValueError(f"target_k must be in [1, {n}], got {target_k}")

    groups = {i: [i] for i in range(n)}
    merges = 0
    if n > target_k:
        for merge in iter_ward_merges(pts):
            merges += 1
            if n - merges == target_k:
                groups = merge.members
                break

    # label clusters in order of their lowest member
    labels = np.empty(n, dtype=np.intp)
    for label, key in enumerate(sorted(groups)):
        labels[groups[key]] = label
    centroids = np.array([pts[groups[key]].mean(axis=0) for key in sorted(groups)])
    obj = objective(pts, labels, centroids)
    return ClusteringResult(
        assignments=labels,
        centroids=centroids,
        member_counts=counts_of(labels, target_k),
        objective=obj,
        iterations=merges,
        method=Method.AGGLOMERATIVE,
        objective_history=[obj],
    )

"""Lloyd's k-means (brute force or kd-tree filtered) and mini-batch k-means."""

from __future__ import annotations

import logging

import numpy as np

from ..chaos import ChaosRNG
from ._base import ClusteringResult, Method, as_points, counts_of, objective, sq_distances
from .kdtree import build_kdtree, filter_assign

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 300


def assign_step(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    """Index of the nearest centroid for every point, lowest index on ties."""
    return np.argmin(sq_distances(points, centroids), axis=1)


def update_step(
    points: np.ndarray, assignments: np.ndarray, k: int
) -> np.ndarray:
    """Centroids as member means.

    An empty cluster is reseeded at the point lying farthest from the mean of
    its own cluster; each point is used for at most one reseed.
    """
    d = points.shape[1]
    sums = np.zeros((k, d))
    np.add.at(sums, assignments, points)
    counts = counts_of(assignments, k)
    centroids = np.zeros((k, d))
    filled = counts > 0
    centroids[filled] = sums[filled] / counts[filled, None]
    empty = np.flatnonzero(~filled)
    if len(empty):
        diff = points - centroids[assignments]
        spread = (diff * diff).sum(axis=1)
        # stable sort keeps the lowest point index first among equal spreads
        ranked = np.argsort(-spread, kind="stable")
        for c, i in zip(empty, ranked):
            centroids[c] = points[i]
    return centroids


def _check_init(points: np.ndarray, k: int, initial) -> np.ndarray:
    n = len(points)
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    if initial is None:
        return points[:k].copy()
    init = np.array(initial, dtype=float)
    if init.ndim == 1:
        init = init[:, None]
    if init.shape != (k, points.shape[1]):
        raise ValueError(f"initial centroids must have shape {(k, points.shape[1])}, got {init.shape}")
    if len(np.unique(init, axis=0)) != k:
        raise ValueError("initial centroids must be distinct")
    return init


def lloyd_kmeans(
    points,
    k: int,
    initial_centroids=None,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    use_filtering: bool = False,
) -> ClusteringResult:
    """Lloyd's algorithm, alternating nearest-centroid assignment and mean update.

    Stops once assignments no longer change, the largest centroid move drops
    below ``tol``, or ``max_iter`` updates have run. Hitting ``max_iter`` is
    reported through ``converged=False`` rather than an exception.

    With ``use_filtering`` the assignment step goes through a kd-tree filter;
    the result is identical to the brute-force path.
    """
    pts = as_points(points)
    centroids = _check_init(pts, k, initial_centroids)

    if use_filtering:
        tree = build_kdtree(pts)

        def assign(c: np.ndarray) -> np.ndarray:
            return filter_assign(tree, c).assignments
    else:

        def assign(c: np.ndarray) -> np.ndarray:
            return assign_step(pts, c)

    labels = assign(centroids)
    history = [objective(pts, labels, centroids)]
    converged = False
    iterations = 0
    while iterations < max_iter:
        iterations += 1
        new_centroids = update_step(pts, labels, k)
        shift = float(np.sqrt(((new_centroids - centroids) ** 2).sum(axis=1)).max())
        centroids = new_centroids
        history.append(objective(pts, labels, centroids))
        if shift < tol:
            converged = True
            break
        new_labels = assign(centroids)
        if np.array_equal(new_labels, labels):
            converged = True
            break
        labels = new_labels
        history.append(objective(pts, labels, centroids))
    if not converged:
        log.warning("k-means hit max_iter=%d without converging", max_iter)

    return ClusteringResult(
        assignments=labels,
        centroids=centroids,
        member_counts=counts_of(labels, k),
        objective=objective(pts, labels, centroids),
        iterations=iterations,
        method=Method.KMEANS,
        converged=converged,
        objective_history=history,
    )


def minibatch_kmeans(
    points,
    k: int,
    batch_size: int,
    iterations: int,
    initial_centroids,
    rng: ChaosRNG,
) -> ClusteringResult:
    """Mini-batch k-means with per-centroid learning rate ``1 / updates``.

    Each iteration draws ``batch_size`` points with replacement from ``rng``,
    assigns them to the current centroids, then moves the assigned centroid
    toward each sample in turn.
    """
    pts = as_points(points)
    if batch_size < 1:
        raise ValueError("batch_size must be positive")
    if iterations < 0:
        raise ValueError("iterations must be non-negative")
    centroids = _check_init(pts, k, initial_centroids).copy()
    n = len(pts)
    updates = np.zeros(k, dtype=np.int64)
    for _ in range(iterations):
        batch = np.array([rng.uniform_int(n) for _ in range(batch_size)])
        owners = assign_step(pts[batch], centroids)
        for i, c in zip(batch, owners):
            updates[c] += 1
            eta = 1.0 / updates[c]
            centroids[c] = (1.0 - eta) * centroids[c] + eta * pts[i]

    labels = assign_step(pts, centroids)
    obj = objective(pts, labels, centroids)
    return ClusteringResult(
        assignments=labels,
        centroids=centroids,
        member_counts=counts_of(labels, k),
        objective=obj,
        iterations=iterations,
        method=Method.MINIBATCH,
        objective_history=[obj],
    )

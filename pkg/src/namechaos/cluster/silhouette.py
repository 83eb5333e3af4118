from __future__ import annotations

import numpy as np

from ._base import as_points, sq_distances


def silhouette(points, assignments) -> tuple[np.ndarray, float]:
    """Per-point silhouette values and their mean.

    ``s(i) = (b(i) - a(i)) / max(a(i), b(i))`` where ``a`` is the mean distance
    to the rest of the point's own cluster and ``b`` the smallest mean distance
    to another cluster. Points in singleton clusters score 0, as do points
    with ``a = b = 0``.
    """
    pts = as_points(points)
    labels = np.asarray(assignments)
    if labels.shape != (len(pts),):
        raise ValueError("need exactly one assignment per point")
    clusters, inverse = np.unique(labels, return_inverse=True)
    if len(clusters) < 2:
        raise ValueError("silhouette needs at least two non-empty clusters")

    dist = np.sqrt(sq_distances(pts, pts))
    sizes = np.bincount(inverse)
    # per-point distance totals to every cluster
    totals = np.zeros((len(pts), len(clusters)))
    for c in range(len(clusters)):
        totals[:, c] = dist[:, inverse == c].sum(axis=1)

    rows = np.arange(len(pts))
    own = sizes[inverse]
    a = np.zeros(len(pts))
    multi = own > 1
    a[multi] = totals[rows[multi], inverse[multi]] / (own[multi] - 1)
    means = totals / sizes[None, :]
    means[rows, inverse] = np.inf
    b = means.min(axis=1)

    denom = np.maximum(a, b)
    s = np.zeros(len(pts))
    ok = multi & (denom > 0)
    s[ok] = (b[ok] - a[ok]) / denom[ok]
    return s, float(s.mean())

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np


class Method(str, enum.Enum):
    KMEANS = "kmeans"
    MINIBATCH = "minibatch"
    AGGLOMERATIVE = "agglomerative"


@dataclass
class ClusteringResult:
    assignments: np.ndarray
    centroids: np.ndarray
    member_counts: np.ndarray
    objective: float
    iterations: int
    method: Method
    converged: bool = True
    objective_history: list[float] = field(default_factory=list)

    @property
    def k(self) -> int:
        return len(self.centroids)


def as_points(points) -> np.ndarray:
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise ValueError(f"points must be a 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("points must be finite")
    return arr


def sq_distances(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    """Squared Euclidean distances, shape ``(len(points), len(centroids))``.

    Accumulated one dimension at a time so every entry is computed with the
    same operation order no matter which subset of rows or columns is passed.
    """
    out = np.zeros((points.shape[0], centroids.shape[0]))
    for dim in range(points.shape[1]):
        diff = points[:, dim, None] - centroids[None, :, dim]
        out += diff * diff
    return out


def objective(points: np.ndarray, assignments: np.ndarray, centroids: np.ndarray) -> float:
    diff = points - centroids[assignments]
    return float((diff * diff).sum())


def counts_of(assignments: np.ndarray, k: int) -> np.ndarray:
    return np.bincount(assignments, minlength=k)

"""kd-tree and the filtering assignment step for Lloyd's algorithm.

Each node caches its bounding box and the sum and count of its points. The
filter walks the tree carrying a set of candidate centroids and drops any
candidate that cannot be nearest to any point of the node's box. Once a
single candidate remains the whole subtree is assigned at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._base import sq_distances

DEFAULT_LEAF_SIZE = 8

# Relative margin a candidate must lose by before it is pruned. Pruning is
# only ever conservative, so assignments stay identical to brute force.
_PRUNE_RTOL = 1e-9


@dataclass
class KdNode:
    lo: np.ndarray
    hi: np.ndarray
    total: np.ndarray
    count: int
    start: int
    stop: int
    dim: int = -1
    value: float = 0.0
    left: KdNode | None = None
    right: KdNode | None = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None


@dataclass
class KdTree:
    points: np.ndarray
    order: np.ndarray
    root: KdNode
    leaf_size: int

    def indices(self, node: KdNode) -> np.ndarray:
        return self.order[node.start : node.stop]

    def nodes(self):
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            if not node.is_leaf:
                stack.extend((node.right, node.left))


def build_kdtree(points: np.ndarray, leaf_size: int = DEFAULT_LEAF_SIZE) -> KdTree:
    """Build a kd-tree splitting the widest dimension at the median."""
    if leaf_size < 1:
        raise ValueError("leaf_size must be positive")
    if len(points) == 0:
        raise ValueError("cannot build a tree over zero points")
    order = np.arange(len(points))

    def build(start: int, stop: int) -> KdNode:
        idx = order[start:stop]
        sub = points[idx]
        lo, hi = sub.min(axis=0), sub.max(axis=0)
        node = KdNode(lo, hi, sub.sum(axis=0), stop - start, start, stop)
        widths = hi - lo
        if stop - start <= leaf_size or not np.any(widths > 0):
            return node
        dim = int(np.argmax(widths))
        ranked = idx[np.argsort(sub[:, dim], kind="stable")]
        order[start:stop] = ranked
        mid = start + (stop - start) // 2
        node.dim = dim
        node.value = float(points[order[mid], dim])
        node.left = build(start, mid)
        node.right = build(mid, stop)
        return node

    root = build(0, len(points))
    return KdTree(points, order, root, leaf_size)


@dataclass
class FilterResult:
    assignments: np.ndarray
    sums: np.ndarray
    counts: np.ndarray
    visited: int = 0
    bulk_assigned: int = 0
    pruned: int = field(default=0)


def _prunable(zstar: np.ndarray, cand: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Mask of candidates that lose to ``zstar`` everywhere in the box ``[lo, hi]``.

    The test point is the box corner furthest in the direction ``z - zstar``;
    if ``zstar`` is strictly closer there it is strictly closer on the whole box.
    """
    corners = np.where(cand - zstar > 0, hi, lo)
    d_cand = ((cand - corners) ** 2).sum(axis=1)
    d_star = ((zstar - corners) ** 2).sum(axis=1)
    diag = float(((hi - lo) ** 2).sum())
    slack = _PRUNE_RTOL * (d_cand + d_star + diag) + 1e-300
    return d_cand - d_star > slack


def filter_assign(tree: KdTree, centroids: np.ndarray) -> FilterResult:
    """Nearest-centroid assignment of every tree point via candidate filtering.

    Ties go to the lowest centroid index, matching :func:`assign_step`.
    """
    k, d = centroids.shape
    points = tree.points
    res = FilterResult(
        assignments=np.full(len(points), -1, dtype=np.intp),
        sums=np.zeros((k, d)),
        counts=np.zeros(k, dtype=np.intp),
    )

    def visit(node: KdNode, cand: np.ndarray) -> None:
        res.visited += 1
        if len(cand) == 1:
            c = cand[0]
            res.assignments[tree.indices(node)] = c
            res.sums[c] += node.total
            res.counts[c] += node.count
            res.bulk_assigned += node.count
            return
        if node.is_leaf:
            idx = tree.indices(node)
            dist = sq_distances(points[idx], centroids[cand])
            winners = cand[np.argmin(dist, axis=1)]
            res.assignments[idx] = winners
            np.add.at(res.sums, winners, points[idx])
            np.add.at(res.counts, winners, 1)
            return
        mid = (node.lo + node.hi) / 2.0
        zstar = cand[int(np.argmin(sq_distances(mid[None, :], centroids[cand])[0]))]
        drop = _prunable(centroids[zstar], centroids[cand], node.lo, node.hi)
        drop &= cand != zstar
        res.pruned += int(drop.sum())
        keep = cand[~drop]
        visit(node.left, keep)
        visit(node.right, keep)

    visit(tree.root, np.arange(k))
    return res

"""Clustering engines and cluster-validity scoring."""

from ._base import ClusteringResult, Method, objective, sq_distances
from .kdtree import KdNode, KdTree, build_kdtree, filter_assign
from .kmeans import assign_step, lloyd_kmeans, minibatch_kmeans, update_step
from .silhouette import silhouette
from .ward import (
    agglomerative_ward,
    iter_ward_merges,
    lance_williams_coefficients,
    lance_williams_update,
)

__all__ = [
    "ClusteringResult",
    "KdNode",
    "KdTree",
    "Method",
    "agglomerative_ward",
    "assign_step",
    "build_kdtree",
    "filter_assign",
    "iter_ward_merges",
    "lance_williams_coefficients",
    "lance_williams_update",
    "lloyd_kmeans",
    "minibatch_kmeans",
    "objective",
    "silhouette",
    "sq_distances",
    "update_step",
]

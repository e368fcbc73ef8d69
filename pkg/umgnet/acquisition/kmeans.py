"""k-means clustering of users for batch diversity

Lloyd iterations from a seeded k-means++ initialization.  Each user's
cluster C_u and its Euclidean distance M_u to the cluster centroid feed
the acquisition objective; cluster sizes set the per-cluster budget caps.
"""
import logging

import attr
import numpy as np
from scipy.spatial.distance import cdist
from sklearn.cluster import kmeans_plusplus

from umgnet.errors import ParameterError
from umgnet.utils import named_seed

logger = logging.getLogger(__name__)


def cluster_caps(assignments, k, b):
    """Per-cluster budget caps floor(|C_j| / n * b)

    sum(caps) <= b <= sum(caps) + k
    """
    assignments = np.asarray(assignments, dtype=np.int64)
    n = len(assignments)
    if n == 0:
        return np.zeros(k, dtype=np.int64)
    counts = np.bincount(assignments, minlength=k)
    return counts * int(b) // n


@attr.s(kw_only=True, frozen=True, eq=False)
class ClusterModel:
    """Result of k-means

    Attributes
    ----------
    k: int
        Number of clusters
    assignments: np.ndarray
        Cluster of each point, C
    centroids: np.ndarray
        k x d cluster centers
    distances: np.ndarray
        Euclidean distance of each point to its centroid, M
    distortion: list of float
        Sum of squared distances after each assignment step
    converged: bool
        Whether the assignment reached a fixpoint before the iteration cap
    """
    k = attr.ib(type=int)
    assignments = attr.ib()
    centroids = attr.ib()
    distances = attr.ib()
    distortion = attr.ib(factory=list)
    converged = attr.ib(type=bool, default=False)


def _update_centroids(x, labels, centroids, sq_dist):
    k = len(centroids)
    new = centroids.copy()
    reseeded = set()
    # points that already re-seeded an empty cluster are not reused
    own = sq_dist[np.arange(len(x)), labels].copy()
    for j in range(k):
        members = labels == j
        if members.any():
            new[j] = x[members].mean(axis=0)
        else:
            far = int(np.argmax(own))
            new[j] = x[far]
            own[far] = -1.0
            reseeded.add(j)
    if reseeded:
        logger.debug("re-seeded empty clusters %s", sorted(reseeded))
    return new


def kmeans(x, k, seed, max_iterations=100):
    """Cluster the rows of x into k clusters

    Args
    ----
    x: np.ndarray
        n x d points
    k: int
        Number of clusters, at most n
    seed: int
        Seed of the k-means++ initialization
    max_iterations: int
        Cap on the number of Lloyd iterations

    Returns
    -------
    ClusterModel

    Raises
    ------
    ParameterError
        If k < 1 or k exceeds the number of points
    """
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[0]
    if k < 1 or k > n:
        raise ParameterError("cannot form %d clusters from %d points" % (
            k, n))
    centroids, _ = kmeans_plusplus(
        x, k, random_state=named_seed(seed, "kmeans"))
    centroids = centroids.astype(np.float64)

    labels = None
    distortion = []
    converged = False
    for iteration in range(max(int(max_iterations), 1)):
        sq_dist = cdist(x, centroids, "sqeuclidean")
        new_labels = np.argmin(sq_dist, axis=1)
        distortion.append(float(sq_dist[np.arange(n), new_labels].sum()))
        if labels is not None and np.array_equal(new_labels, labels):
            converged = True
            break
        labels = new_labels
        centroids = _update_centroids(x, labels, centroids, sq_dist)

    if not converged:
        # assign against the returned centroids so that M matches them
        sq_dist = cdist(x, centroids, "sqeuclidean")
        labels = np.argmin(sq_dist, axis=1)
        distortion.append(float(sq_dist[np.arange(n), labels].sum()))
    distances = np.linalg.norm(x - centroids[labels], axis=1)
    logger.info("k-means with k=%d: %d iterations, distortion %.4g%s",
                k, len(distortion), distortion[-1],
                "" if converged else " (iteration cap)")
    return ClusterModel(k=k,
                        assignments=labels,
                        centroids=centroids,
                        distances=distances,
                        distortion=distortion,
                        converged=converged)

"""Provides the bipartite user-product graph

Users occupy node indices 0..n-1, products n..n+m-1 in the adjacency
[[0, R], [R^T, 0]].
"""
import logging

import attr
import numpy as np

from umgnet.errors import IngestionError
from umgnet.tensor import SparseAdjacency

logger = logging.getLogger(__name__)


def _as_index_array(values):
    return np.asarray(values, dtype=np.int64).reshape(-1)


@attr.s(kw_only=True, frozen=True, eq=False)
class BipartiteGraph:
    """Undirected bipartite graph between n users and m products

    Attributes
    ----------
    n: int
        Number of users
    m: int
        Number of products
    users, items: np.ndarray of int
        Edge endpoints, edge e connects user users[e] and product items[e];
        sorted by (user, item), without duplicates
    """
    n = attr.ib(type=int)
    m = attr.ib(type=int)
    users = attr.ib(converter=_as_index_array)
    items = attr.ib(converter=_as_index_array)
    _adjacency = attr.ib(factory=dict, init=False, repr=False)

    def __attrs_post_init__(self):
        if len(self.users) != len(self.items):
            raise IngestionError("edge endpoint arrays differ in length")
        if len(self.users):
            if self.users.min() < 0 or self.users.max() >= self.n:
                raise IngestionError("user index out of range [0, %d)" %
                                     self.n)
            if self.items.min() < 0 or self.items.max() >= self.m:
                raise IngestionError("product index out of range [0, %d)" %
                                     self.m)
        order = np.lexsort((self.items, self.users))
        users, items = self.users[order], self.items[order]
        if len(users) > 1:
            dup = (users[1:] == users[:-1]) & (items[1:] == items[:-1])
            if dup.any():
                raise IngestionError(
                    "graph has %d duplicate edges" % int(dup.sum()))
        object.__setattr__(self, "users", users)
        object.__setattr__(self, "items", items)

    @classmethod
    def from_edges(cls, n, m, edges):
        """Build from (user, product) pairs, dropping duplicates

        Returns
        -------
        (BipartiteGraph, int)
            The graph and the number of dropped duplicate edges
        """
        edges = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        unique = np.unique(edges, axis=0) if len(edges) else edges
        dropped = len(edges) - len(unique)
        return cls(n=n, m=m, users=unique[:, 0], items=unique[:, 1]), dropped

    @property
    def num_edges(self):
        return len(self.users)

    def edges(self):
        return list(zip(self.users.tolist(), self.items.tolist()))

    def adjacency(self, normalization="none"):
        """Block adjacency of dimension n + m, cached per normalization"""
        if normalization not in self._adjacency:
            if "none" in self._adjacency:
                adj = self._adjacency["none"].normalized(normalization)
            else:
                adj = SparseAdjacency.from_edges(
                    self.n, self.m, self.users, self.items,
                    normalization=normalization)
            self._adjacency[normalization] = adj
        return self._adjacency[normalization]


def build_adjacency(graph, normalization="none"):
    """A[u, n + p] = A[n + p, u] = 1 for each edge (u, p), zeros elsewhere
    """
    return graph.adjacency(normalization)


def degrees(graph):
    """Number of products adjacent to each user, as float vector"""
    return np.bincount(graph.users, minlength=graph.n).astype(np.float64)

"""Provides the sparse adjacency used for message passing

The adjacency of a bipartite user-product graph is stored row-compressed
(scipy CSR), together with a mirrored view holding the transpose, so both
message directions of a sparse-dense product are contiguous.
"""
import logging

import numpy as np
import scipy.sparse

from umgnet.errors import (ParameterError,
                           ShapeError)

logger = logging.getLogger(__name__)

NORMALIZATIONS = ("none", "mean", "symmetric")


class SparseAdjacency:
    """Symmetric sparse adjacency of dimension n + m

    Attributes
    ----------
    raw: scipy.sparse.csr_matrix
        The unnormalized adjacency (edge values, default 1)
    normalization: str
        One of ["none": raw sums,
                "mean": row-normalized D^-1 A (mean of neighbors),
                "symmetric": D^-1/2 A D^-1/2]
        Rows of isolated nodes stay zero in every mode.
    matrix: scipy.sparse.csr_matrix
        The normalized adjacency used in products
    mirror: scipy.sparse.csr_matrix
        Row-compressed transpose of `matrix`, used for the backward pass
    n_users: int, optional
        Number of user rows, if the matrix is a bipartite block matrix
    """
    def __init__(self, raw, normalization="none", n_users=None):
        if normalization not in NORMALIZATIONS:
            raise ParameterError(
                "unknown normalization %s, expected one of %s" % (
                    normalization, NORMALIZATIONS))
        raw = scipy.sparse.csr_matrix(raw)
        if raw.shape[0] != raw.shape[1]:
            raise ShapeError("adjacency has to be square, got %s" % (
                raw.shape,))
        raw.sort_indices()
        self.raw = raw
        self.normalization = normalization
        self.n_users = n_users
        self.matrix = self._normalize(raw, normalization)
        self.mirror = scipy.sparse.csr_matrix(self.matrix.transpose())
        self.mirror.sort_indices()

    @classmethod
    def from_edges(cls, n_users, n_items, users, items, values=None,
                   normalization="none"):
        """Build the block adjacency [[0, R], [R^T, 0]] from an edge list

        Args
        ----
        n_users, n_items: int
            Number of users n and products m
        users, items: array of int
            Endpoint indices of each edge, users in [0, n), items in [0, m)
        values: array of float, optional
            Edge values, 1 if not set
        """
        users = np.asarray(users, dtype=np.int64)
        items = np.asarray(items, dtype=np.int64)
        if values is None:
            values = np.ones(len(users), dtype=np.float64)
        dim = n_users + n_items
        rows = np.concatenate([users, items + n_users])
        cols = np.concatenate([items + n_users, users])
        vals = np.concatenate([values, values])
        raw = scipy.sparse.csr_matrix((vals, (rows, cols)), shape=(dim, dim))
        return cls(raw, normalization=normalization, n_users=n_users)

    @staticmethod
    def _normalize(raw, normalization):
        if normalization == "none":
            return raw.copy()
        deg = np.asarray(raw.sum(axis=1)).ravel()
        if normalization == "mean":
            inv = np.zeros_like(deg)
            np.divide(1.0, deg, out=inv, where=deg > 0)
            matrix = scipy.sparse.diags(inv) @ raw
        else:
            inv_sqrt = np.zeros_like(deg)
            np.divide(1.0, np.sqrt(deg), out=inv_sqrt, where=deg > 0)
            d = scipy.sparse.diags(inv_sqrt)
            matrix = d @ raw @ d
        matrix = scipy.sparse.csr_matrix(matrix)
        matrix.sort_indices()
        return matrix

    def normalized(self, normalization):
        """The same graph under another normalization mode"""
        if normalization == self.normalization:
            return self
        return SparseAdjacency(self.raw, normalization=normalization,
                               n_users=self.n_users)

    @property
    def dimension(self):
        return self.raw.shape[0]

    @property
    def nnz(self):
        return self.raw.nnz

    def degrees(self):
        """Number of neighbors of every node"""
        return np.diff(self.raw.indptr)

    def neighbors(self, i):
        return self.raw.indices[self.raw.indptr[i]:self.raw.indptr[i + 1]]

    def nonzeros(self):
        """Set of (row, col) pairs with a stored entry"""
        coo = self.raw.tocoo()
        return set(zip(coo.row.tolist(), coo.col.tolist()))

    def is_symmetric(self):
        return (self.raw != self.raw.transpose()).nnz == 0

    def has_self_loops(self):
        return bool(np.any(self.raw.diagonal() != 0))

    def is_bipartite(self):
        """No entries in the user-user or product-product blocks"""
        if self.n_users is None:
            return True
        coo = self.raw.tocoo()
        row_user = coo.row < self.n_users
        col_user = coo.col < self.n_users
        return bool(np.all(row_user != col_user))

    def to_dense(self):
        return self.matrix.toarray()

"""Provides the uplift dataset container and feature normalization
"""
import logging

import attr
import numpy as np

from umgnet.errors import (IngestionError,
                           NoTrainingDataError)

logger = logging.getLogger(__name__)


def _float_matrix(x):
    return np.asarray(x, dtype=np.float64)


def _float_vector(x):
    return np.asarray(x, dtype=np.float64).reshape(-1)


def normalize_features(x):
    """Standardize each column to mean 0 and standard deviation 1

    Constant columns map to 0.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.shape[0] == 0:
        return x.copy()
    mean = x.mean(axis=0)
    std = x.std(axis=0)
    centered = x - mean
    out = np.zeros_like(centered)
    np.divide(centered, std, out=out, where=std > 1e-12)
    return out


@attr.s(kw_only=True, frozen=True, eq=False)
class Dataset:
    """A bipartite uplift dataset

    Attributes
    ----------
    graph: BipartiteGraph
        The user-product graph
    user_features: np.ndarray
        n x d user features X_U
    item_features: np.ndarray
        m x d_p product features X_P
    treatment: np.ndarray
        n binary treatment indicators T
    outcome: np.ndarray
        n outcomes Y; 0 for unlabeled users
    label_mask: np.ndarray
        n binary indicators, 1 if T and Y of the user are known
    user_ids, item_ids: list of str
        External IDs, in index order
    metadata: dict
        Provenance, e.g. simulation parameters
    """
    graph = attr.ib()
    user_features = attr.ib(converter=_float_matrix)
    item_features = attr.ib(converter=_float_matrix)
    treatment = attr.ib(converter=_float_vector)
    outcome = attr.ib(converter=_float_vector)
    label_mask = attr.ib(converter=_float_vector)
    user_ids = attr.ib(default=None)
    item_ids = attr.ib(default=None)
    metadata = attr.ib(factory=dict)

    def __attrs_post_init__(self):
        n, m = self.graph.n, self.graph.m
        if self.user_features.ndim != 2 or self.user_features.shape[0] != n:
            raise IngestionError("user features need %d rows, got %s" % (
                n, self.user_features.shape))
        if self.item_features.ndim != 2 or self.item_features.shape[0] != m:
            raise IngestionError("product features need %d rows, got %s" % (
                m, self.item_features.shape))
        for name in ("treatment", "outcome", "label_mask"):
            if len(getattr(self, name)) != n:
                raise IngestionError("%s needs %d entries" % (name, n))
        if not np.all(np.isfinite(self.user_features)) or \
           not np.all(np.isfinite(self.item_features)):
            raise IngestionError("feature matrices contain missing values")
        if not np.all(np.isfinite(self.outcome)):
            raise IngestionError("outcome contains non-finite values")
        if not np.all(np.isin(self.treatment, (0.0, 1.0))) or \
           not np.all(np.isin(self.label_mask, (0.0, 1.0))):
            raise IngestionError("treatment and label mask must be binary")
        if self.user_ids is None:
            object.__setattr__(self, "user_ids",
                               [str(i) for i in range(n)])
        if self.item_ids is None:
            object.__setattr__(self, "item_ids",
                               [str(i) for i in range(m)])

    @property
    def n(self):
        return self.graph.n

    @property
    def m(self):
        return self.graph.m

    def labeled_indices(self):
        return np.flatnonzero(self.label_mask > 0)

    def normalized(self):
        """Copy with standardized user and product features"""
        return attr.evolve(
            self,
            user_features=normalize_features(self.user_features),
            item_features=normalize_features(self.item_features))

    def mask_for(self, indices):
        """Label mask restricted to `indices`

        Only users that are labeled in the dataset keep a 1.

        Raises
        ------
        NoTrainingDataError
            If none of the indices is labeled
        """
        indices = np.asarray(indices, dtype=np.int64)
        mask = np.zeros(self.n, dtype=np.float64)
        mask[indices] = 1.0
        mask *= self.label_mask
        if mask.sum() == 0:
            raise NoTrainingDataError("no labeled users in the training set")
        return mask

"""Provides the inverted k-fold split

The small part trains: for fold i the training set is label set i
(about n/k users) and every other user is evaluated.
"""
import hashlib
import logging

import attr
import numpy as np

from umgnet.errors import ParameterError
from umgnet.utils import named_rng

logger = logging.getLogger(__name__)


@attr.s(kw_only=True, frozen=True, eq=False)
class FoldPlan:
    """Partition of n users into k label sets

    Attributes
    ----------
    k: int
        Number of folds
    n: int
        Number of users
    folds: list of np.ndarray
        Sorted user indices of each label set
    seed: int
        Seed the partition was drawn with
    """
    k = attr.ib(type=int)
    n = attr.ib(type=int)
    folds = attr.ib()
    seed = attr.ib(type=int)

    def split(self, i):
        """Training and evaluation users of fold `i`"""
        train = self.folds[i]
        evaluate = np.setdiff1d(np.arange(self.n), train,
                                assume_unique=True)
        return train, evaluate

    def fingerprint(self):
        """sha256 of the label sets, equal for equal plans"""
        h = hashlib.sha256()
        for fold in self.folds:
            h.update(np.asarray(fold, dtype=np.int64).tobytes())
            h.update(b"|")
        return h.hexdigest()


def split_folds(n, k, seed):
    """Randomly partition n users into k near-equal label sets

    Raises
    ------
    ParameterError
        Unless 2 <= k <= n
    """
    if k < 2:
        raise ParameterError("need at least 2 folds, got %d" % k)
    if k > n:
        raise ParameterError("cannot split %d users into %d folds" % (n, k))
    perm = named_rng(seed, "folds").permutation(n)
    folds = [np.sort(part) for part in np.array_split(perm, k)]
    logger.debug("split %d users into %d folds (seed %d)", n, k, seed)
    return FoldPlan(k=k, n=n, folds=folds, seed=seed)

"""Acquisition scores

Uncertainty Q, degree D and centroid distance M have no common unit, so
each is min-max normalized over the candidate users before the weighted
sum s = w_Q Q~ + w_D D~ + w_M M~.
"""
import logging

import attr
import numpy as np

from umgnet.errors import (ParameterError,
                           ShapeError)

logger = logging.getLogger(__name__)

DEFAULT_WEIGHTS = (0.2, 0.1, 0.7)


def minmax(values, candidates=None):
    """Scale to [0, 1] using min and max over `candidates`

    Constant vectors map to 0.
    """
    values = np.asarray(values, dtype=np.float64)
    ref = values if candidates is None else values[candidates]
    out = np.zeros_like(values)
    if ref.size == 0:
        return out
    low, high = ref.min(), ref.max()
    if high > low:
        out = np.clip((values - low) / (high - low), 0.0, 1.0)
    return out


@attr.s(kw_only=True, frozen=True, eq=False)
class AcquisitionScores:
    """Normalized scores and their combination

    Attributes
    ----------
    uncertainty, degree, distance: np.ndarray
        Normalized Q, D and M (M flipped if it is minimized)
    weights: tuple of float
        (w_Q, w_D, w_M)
    combined: np.ndarray
        Weighted sum per user
    """
    uncertainty = attr.ib()
    degree = attr.ib()
    distance = attr.ib()
    weights = attr.ib()
    combined = attr.ib()


def compute_scores(uncertainty, degree, distance, weights=DEFAULT_WEIGHTS,
                   candidates=None, maximize_distance=True):
    """Combine the raw acquisition signals of all users

    Args
    ----
    uncertainty, degree, distance: array
        Raw Q, D and M, length n
    weights: tuple of float
        Non-negative (w_Q, w_D, w_M)
    candidates: array of int, optional
        Users the normalization is computed over, all if not set
    maximize_distance: bool
        Reward users far from their centroid; if false, reward users close
        to it

    Raises
    ------
    ShapeError
        If the vectors differ in length
    ParameterError
        If there are not three non-negative weights
    """
    q = np.asarray(uncertainty, dtype=np.float64).reshape(-1)
    d = np.asarray(degree, dtype=np.float64).reshape(-1)
    m = np.asarray(distance, dtype=np.float64).reshape(-1)
    if not len(q) == len(d) == len(m):
        raise ShapeError("score vectors differ in length: %d, %d, %d" % (
            len(q), len(d), len(m)))
    weights = tuple(float(w) for w in weights)
    if len(weights) != 3 or min(weights) < 0:
        raise ParameterError(
            "need three non-negative score weights, got %s" % (weights,))
    if not maximize_distance:
        m = -m
    q_n = minmax(q, candidates)
    d_n = minmax(d, candidates)
    m_n = minmax(m, candidates)
    w_q, w_d, w_m = weights
    combined = w_q * q_n + w_d * d_n + w_m * m_n
    return AcquisitionScores(uncertainty=q_n, degree=d_n, distance=m_n,
                             weights=weights, combined=combined)

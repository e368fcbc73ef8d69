"""Uplift metrics

up@k is the real average treatment effect inside the top k fraction of
the evaluated users, ranked by predicted uplift.
"""
import logging
import math

import numpy as np

from umgnet.errors import (ParameterError,
                           UndefinedATEError)

logger = logging.getLogger(__name__)


def metric_name(frac):
    """Record key of up@k for a top fraction, e.g. 0.4 -> "up@40" """
    return "up@%g" % round(frac * 100, 6)


def ate(y, t, subset=None):
    """mean(Y | T = 1) - mean(Y | T = 0) over `subset` (all users if None)

    Raises
    ------
    UndefinedATEError
        If the subset lacks treated or control users
    """
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    t = np.asarray(t).reshape(-1)
    if subset is not None:
        subset = np.asarray(subset, dtype=np.int64)
        y, t = y[subset], t[subset]
    treated = t > 0
    if treated.all() or not treated.any():
        raise UndefinedATEError(
            "ATE needs treated and control users, got %d treated of %d" % (
                int(treated.sum()), len(t)))
    return float(y[treated].mean() - y[~treated].mean())


def top_set(uplift, subset, frac):
    """The ceil(frac * |subset|) users of `subset` with the highest uplift

    Ties are broken by lower user index.
    """
    if not 0.0 < frac <= 1.0:
        raise ParameterError("top fraction has to be in (0, 1], got %s" %
                             frac)
    subset = np.asarray(subset, dtype=np.int64)
    if len(subset) == 0:
        raise ParameterError("cannot rank an empty evaluation set")
    uplift = np.asarray(uplift, dtype=np.float64).reshape(-1)
    order = np.lexsort((subset, -uplift[subset]))
    size = int(math.ceil(round(frac * len(subset), 9)))
    return subset[order[:size]]


def uplift_at_k(uplift, y, t, subset, frac):
    """Real ATE of the top `frac` of `subset` sorted by predicted uplift

    Raises
    ------
    UndefinedATEError
        If the top set holds a single treatment arm
    ParameterError
        If the subset is empty or frac not in (0, 1]
    """
    subset = np.asarray(subset, dtype=np.int64)
    # keep the order of `subset` so that frac = 1 sums exactly like ate
    top = subset[np.isin(subset, top_set(uplift, subset, frac))]
    return ate(y, t, top)


def optional(fn, *args, **kwargs):
    """Call a metric, returning None for an undefined ATE"""
    try:
        return fn(*args, **kwargs)
    except UndefinedATEError as e:
        logger.warning("metric undefined: %s", e)
        return None

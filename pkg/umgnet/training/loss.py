"""Training losses of UMGNet

Both losses are means over the masked (labeled) users only.  Unmasked
users and the counterfactual arm enter with weight exactly zero, so their
outcome values never influence the loss or its gradients.
"""
import logging

import numpy as np

from umgnet.errors import (NoTrainingDataError,
                           ShapeError)
from umgnet.tensor import (Tensor,
                           add,
                           softplus,
                           square,
                           sub,
                           weighted_sum)

logger = logging.getLogger(__name__)


def _vector(v, n, name, dtype):
    v = np.asarray(v, dtype=dtype).reshape(-1)
    if len(v) != n:
        raise ShapeError("%s has %d entries, expected %d" % (name, len(v), n))
    return v


def _prediction(x):
    if isinstance(x, Tensor):
        return x
    return Tensor(np.asarray(x, dtype=np.float64))


def _mask_count(mask):
    count = float(mask.sum())
    if count == 0:
        raise NoTrainingDataError("loss over an empty label mask")
    return count


def loss_y(y_t, y_c, y, t, mask):
    """Factual outcome loss

    mean over masked users of T (y_t - Y)^2 + (1 - T) (y_c - Y)^2

    Args
    ----
    y_t, y_c: Tensor
        n x 1 predictions of the treated and control head
    y: array
        Observed (factual) outcomes, length n
    t, mask: array
        Binary treatment and label mask, length n

    Raises
    ------
    NoTrainingDataError
        If the mask is empty
    """
    y_t, y_c = _prediction(y_t), _prediction(y_c)
    n, dtype = y_t.rows, y_t.dtype
    t = _vector(t, n, "treatment", dtype)
    mask = _vector(mask, n, "mask", dtype)
    count = _mask_count(mask)
    y = Tensor(_vector(y, n, "outcome", dtype))

    treated = weighted_sum(square(sub(y_t, y)),
                           mask * t / dtype.type(count))
    control = weighted_sum(square(sub(y_c, y)),
                           mask * (1 - t) / dtype.type(count))
    return add(treated, control)


def loss_t(logits, t, mask):
    """Binary cross entropy of sigmoid(logits) against T over masked users

    Uses softplus(z) - t z = -t log(sigmoid(z)) - (1 - t) log(1 - sigmoid(z)).

    Raises
    ------
    NoTrainingDataError
        If the mask is empty
    """
    logits = _prediction(logits)
    n, dtype = logits.rows, logits.dtype
    t = _vector(t, n, "treatment", dtype)
    mask = _vector(mask, n, "mask", dtype)
    count = dtype.type(_mask_count(mask))
    return sub(weighted_sum(softplus(logits), mask / count),
               weighted_sum(logits, mask * t / count))

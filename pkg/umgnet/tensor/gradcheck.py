"""Finite difference verification of tape gradients"""
import logging

import numpy as np

from .tape import (Tape,
                   backward)

logger = logging.getLogger(__name__)


def gradient_check(loss_fn, params, eps=1e-6):
    """Compare analytic gradients with central finite differences

    Args
    ----
    loss_fn: Callable
        Builds the scalar loss from the current parameter values; has to be
        deterministic (reseed generators inside)
    params: list of Tensor
        64 bit parameters to check
    eps: float
        Finite difference step

    Returns
    -------
    float
        Maximum over parameters of ||analytic - numeric|| /
        max(||analytic|| + ||numeric||, 1e-12)
    """
    with Tape() as tape:
        loss = loss_fn()
    analytic = backward(loss, tape, params)

    worst = 0.0
    for p, a in zip(params, analytic):
        numeric = np.zeros_like(p.value)
        flat = p.value.reshape(-1)
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + eps
            up = loss_fn().item()
            flat[i] = orig - eps
            down = loss_fn().item()
            flat[i] = orig
            numeric.reshape(-1)[i] = (up - down) / (2 * eps)
        denom = max(np.linalg.norm(a) + np.linalg.norm(numeric), 1e-12)
        err = np.linalg.norm(a - numeric) / denom
        logger.debug("gradient check %s: %g", p.name, err)
        worst = max(worst, err)
    return worst

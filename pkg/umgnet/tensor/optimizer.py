"""Adaptive moment estimation with decoupled weight decay

The update applied to each parameter w with gradient g at step t is

    w <- w - lr * wd * w
    m <- b1 * m + (1 - b1) * g
    v <- b2 * v + (1 - b2) * g^2
    w <- w - lr * (m / (1 - b1^t)) / (sqrt(v / (1 - b2^t)) + eps)
"""
import logging

import attr
import numpy as np

from umgnet.errors import ShapeError

logger = logging.getLogger(__name__)


@attr.s(kw_only=True)
class OptimizerState:
    """Per-parameter moments and hyperparameters of the optimizer

    Attributes
    ----------
    first_moments, second_moments: list of np.ndarray
        Accumulators, shape-matched to the parameters
    step: int
        Number of updates applied so far
    learning_rate, weight_decay: float
    betas: tuple of float
    eps: float
    """
    first_moments = attr.ib(type=list)
    second_moments = attr.ib(type=list)
    step = attr.ib(type=int, default=0)
    learning_rate = attr.ib(type=float, default=0.01)
    weight_decay = attr.ib(type=float, default=1e-4)
    betas = attr.ib(type=tuple, default=(0.9, 0.999))
    eps = attr.ib(type=float, default=1e-8)

    @classmethod
    def create(cls, params, learning_rate=0.01, weight_decay=1e-4,
               betas=(0.9, 0.999), eps=1e-8):
        return cls(
            first_moments=[np.zeros_like(p.value) for p in params],
            second_moments=[np.zeros_like(p.value) for p in params],
            learning_rate=learning_rate,
            weight_decay=weight_decay,
            betas=tuple(betas),
            eps=eps)


def optimizer_step(params, gradients, state):
    """Apply one update in place

    Args
    ----
    params: list of Tensor
    gradients: list of np.ndarray
        One gradient per parameter
    state: OptimizerState

    Returns
    -------
    (list of Tensor, OptimizerState)
        The updated parameters and state (same objects)
    """
    if len(params) != len(gradients) or \
       len(params) != len(state.first_moments):
        raise ShapeError("optimizer: %d params, %d gradients, %d moments" % (
            len(params), len(gradients), len(state.first_moments)))
    for p, g, m in zip(params, gradients, state.first_moments):
        if p.shape != g.shape or p.shape != m.shape:
            raise ShapeError(
                "optimizer: parameter %s has shape %s, gradient %s" % (
                    p.name, p.shape, g.shape))

    state.step += 1
    lr = state.learning_rate
    b1, b2 = state.betas
    bias1 = 1.0 - b1 ** state.step
    bias2 = 1.0 - b2 ** state.step
    for p, g, m, v in zip(params, gradients, state.first_moments,
                          state.second_moments):
        dtype = p.value.dtype.type
        if state.weight_decay:
            p.value *= dtype(1.0 - lr * state.weight_decay)
        m *= dtype(b1)
        m += dtype(1.0 - b1) * g
        v *= dtype(b2)
        v += dtype(1.0 - b2) * g * g
        m_hat = m / dtype(bias1)
        v_hat = v / dtype(bias2)
        p.value -= dtype(lr) * m_hat / (np.sqrt(v_hat) + dtype(state.eps))
    return params, state

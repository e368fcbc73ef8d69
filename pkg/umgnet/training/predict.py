"""Monte Carlo dropout inference

The graph encoding has no dropout, so it is computed once; each pass
samples new dropout masks in the heads from its own generator stream.
"""
import logging

import attr
import numpy as np
import pandas as pd

from umgnet.errors import ParameterError
from umgnet.utils import named_rng

logger = logging.getLogger(__name__)


@attr.s(kw_only=True, frozen=True, eq=False)
class UpliftPrediction:
    """Per-user predictions, length n

    Attributes
    ----------
    y_c, y_t: np.ndarray
        Mean predicted control and treated outcome
    uplift: np.ndarray
        Mean of y_t - y_c over the passes
    uncertainty: np.ndarray
        Population variance of y_t - y_c over the passes, Q
    passes: int
    """
    y_c = attr.ib()
    y_t = attr.ib()
    uplift = attr.ib()
    uncertainty = attr.ib()
    passes = attr.ib(type=int)

    def to_frame(self, user_ids=None):
        frame = pd.DataFrame({"y_c": self.y_c,
                              "y_t": self.y_t,
                              "uplift": self.uplift,
                              "uncertainty": self.uncertainty})
        if user_ids is not None:
            frame.insert(0, "user_id", list(user_ids))
        return frame


def mc_dropout_predict(model, dataset, passes, seed):
    """Predict uplift and its dropout variance

    Args
    ----
    model: UpliftModel
    dataset: Dataset
    passes: int
        Number of forward passes with random dropout masks, >= 1
    seed: int
        Seed of the inference dropout stream

    Returns
    -------
    UpliftPrediction

    Raises
    ------
    ParameterError
        If passes < 1
    """
    if passes < 1:
        raise ParameterError("need at least one MC dropout pass, got %s" %
                             passes)
    inputs = model.prepare(dataset)
    z = model.representation(inputs)
    y_t = np.empty((passes, dataset.n))
    y_c = np.empty((passes, dataset.n))
    for i in range(passes):
        out = model.heads(z, training=True,
                          rng=named_rng(seed, "mc-dropout", i))
        y_t[i] = out.y_t.value[:, 0]
        y_c[i] = out.y_c.value[:, 0]
    uplift = y_t - y_c
    if passes == 1 or model.config.dropout == 0.0:
        uncertainty = np.zeros(dataset.n)
    else:
        uncertainty = uplift.var(axis=0)
    logger.debug("MC dropout: %d passes, max Q %.4g", passes,
                 uncertainty.max() if dataset.n else 0.0)
    return UpliftPrediction(y_c=y_c.mean(axis=0),
                            y_t=y_t.mean(axis=0),
                            uplift=uplift.mean(axis=0),
                            uncertainty=uncertainty,
                            passes=passes)


def predict_uplift(model, dataset):
    """Deterministic prediction with dropout switched off"""
    out = model.forward(model.prepare(dataset), training=False)
    y_t = out.y_t.value[:, 0].astype(np.float64)
    y_c = out.y_c.value[:, 0].astype(np.float64)
    return UpliftPrediction(y_c=y_c, y_t=y_t, uplift=y_t - y_c,
                            uncertainty=np.zeros(dataset.n), passes=0)

"""Linear S- and T-learner baselines

T kind: two ridge regressions f_t, f_c on the treated and control users,
uplift f_t(x) - f_c(x).  S kind: one ridge regression on [x, t], uplift
f(x, 1) - f(x, 0).
"""
import logging

import attr
import numpy as np
from sklearn.linear_model import Ridge

from umgnet.errors import (NoTrainingDataError,
                           ParameterError)

logger = logging.getLogger(__name__)

KINDS = ("S", "T")


def _kind(kind):
    kind = str(kind)
    if kind.startswith("baseline-"):
        kind = kind[len("baseline-"):]
    kind = kind.upper()
    if kind not in KINDS:
        raise ParameterError("unknown baseline kind %s" % kind)
    return kind


@attr.s(kw_only=True, frozen=True, eq=False)
class BaselineModel:
    """Fitted meta-learner

    Attributes
    ----------
    kind: str
        "S" or "T"
    regressors: list of sklearn.linear_model.Ridge
        T kind: [treated, control]; S kind: one regressor on [x, t]
    alpha: float
        Ridge regularization strength
    """
    kind = attr.ib(converter=_kind)
    regressors = attr.ib()
    alpha = attr.ib(type=float)

    def __attrs_post_init__(self):
        expected = 2 if self.kind == "T" else 1
        if len(self.regressors) != expected:
            raise ParameterError("%s baseline needs %d regressors, got %d" % (
                self.kind, expected, len(self.regressors)))


def fit_baseline(dataset, labeled, kind, alpha=1e-2):
    """Fit a baseline on the labeled users `labeled`

    Raises
    ------
    NoTrainingDataError
        If no user is labeled, or the T kind lacks an arm
    """
    kind = _kind(kind)
    mask = dataset.mask_for(labeled) > 0
    x = dataset.user_features[mask]
    y = dataset.outcome[mask]
    t = dataset.treatment[mask]
    if kind == "T":
        treated = t > 0
        if treated.all() or not treated.any():
            raise NoTrainingDataError(
                "T-learner needs treated and control users")
        f_t = Ridge(alpha=alpha).fit(x[treated], y[treated])
        f_c = Ridge(alpha=alpha).fit(x[~treated], y[~treated])
        regressors = [f_t, f_c]
    else:
        regressors = [Ridge(alpha=alpha).fit(np.column_stack([x, t]), y)]
    logger.debug("fitted %s baseline on %d users", kind, int(mask.sum()))
    return BaselineModel(kind=kind, regressors=regressors, alpha=alpha)


def predict_baseline(model, x):
    """Predicted uplift for user features x (n x d)"""
    x = np.asarray(x, dtype=np.float64)
    if model.kind == "T":
        f_t, f_c = model.regressors
        return f_t.predict(x) - f_c.predict(x)
    f, = model.regressors
    ones = np.ones((len(x), 1))
    return f.predict(np.hstack([x, ones])) - \
        f.predict(np.hstack([x, np.zeros_like(ones)]))

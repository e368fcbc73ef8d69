"""Configuration used for the inverted k-fold evaluation
"""
from typing import List

import attr

from .utils import (_float_list_validator,
                    _int_list_validator,
                    in_choices,
                    non_negative,
                    positive)

MODEL_SPECS = ("umgnet", "umgnet-dr", "baseline-S", "baseline-T")


@attr.s(kw_only=True)
class EvaluateConfig:
    """Defines an evaluation sweep

    Attributes
    ----------
    model: str
        Which estimator to evaluate, one of
        ["umgnet", "umgnet-dr", "baseline-S", "baseline-T"]
    folds: int
        k of the inverted k-fold protocol; each 1/k part trains once and
        the remaining users are evaluated
    seeds: list of int
        Seeds of the repeated runs, each with its own fold plan
    fractions: list of float
        Top fractions for the up@k metrics
    ridge_alpha: float
        Regularization strength of the linear baselines
    """
    model = attr.ib(type=str, default="umgnet",
                    validator=in_choices(MODEL_SPECS))
    folds = attr.ib(type=int, default=5, validator=positive)
    seeds = attr.ib(type=List[int],
                    default=attr.Factory(lambda: [0, 1, 2, 3, 4]),
                    validator=_int_list_validator)
    fractions = attr.ib(type=List[float],
                        default=attr.Factory(lambda: [0.4, 0.2]),
                        validator=[_float_list_validator, positive])
    ridge_alpha = attr.ib(type=float, default=1e-2, validator=non_negative)

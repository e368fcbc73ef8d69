"""Configuration used for active learning and batch acquisition
"""
from typing import List

import attr

from umgnet.errors import ConfigurationError

from .utils import (_check_length,
                    _float_list_validator,
                    in_choices,
                    non_negative,
                    positive)

POLICIES = ("greedy", "eg", "random")
_POLICY_ALIASES = {"epsilon-greedy": "eg", "e-greedy": "eg"}


def _policy(value):
    value = str(value).lower()
    return _POLICY_ALIASES.get(value, value)


@attr.s(kw_only=True)
class AcquisitionConfig:
    """Defines the acquisition objective and the active learning loop

    Attributes
    ----------
    weights: list of float
        Coefficients of uncertainty Q, degree D and centroid distance M
    clusters: int
        Number of k-means diversity clusters (capped at the user count)
    kmeans_iterations: int
        Maximal number of Lloyd iterations
    mc_passes: int
        Number of stochastic forward passes for the uncertainty estimate
    maximize_centroid_distance: bool
        Reward users far from their centroid (True) or close to it (False)
    policy: str
        Batch policy, one of ["greedy", "eg" (epsilon-greedy), "random"]
    epsilon: float
        Probability of a random batch in the epsilon-greedy policy
    rounds: int
        Number of batch queries after the seed round
    frac_initial: float
        Fraction of users labeled in the seed round
    frac_target: float
        Fraction of users labeled after the last round
    """
    weights = attr.ib(type=List[float],
                      default=attr.Factory(lambda: [0.2, 0.1, 0.7]),
                      validator=[_float_list_validator, _check_length(3)])
    clusters = attr.ib(type=int, default=50, validator=positive)
    kmeans_iterations = attr.ib(type=int, default=100, validator=positive)
    mc_passes = attr.ib(type=int, default=30, validator=positive)
    maximize_centroid_distance = attr.ib(type=bool, default=True)
    policy = attr.ib(type=str, default="greedy", converter=_policy,
                     validator=in_choices(POLICIES))
    epsilon = attr.ib(type=float, default=0.5)
    rounds = attr.ib(type=int, default=5, validator=non_negative)
    frac_initial = attr.ib(type=float, default=0.04)
    frac_target = attr.ib(type=float, default=0.2)

    def __attrs_post_init__(self):
        if any(w < 0 for w in self.weights):
            raise ConfigurationError("acquisition weights must be >= 0")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ConfigurationError("epsilon must be in [0, 1]")
        if not 0.0 < self.frac_initial <= self.frac_target:
            raise ConfigurationError(
                "need 0 < frac_initial <= frac_target, got %s, %s" % (
                    self.frac_initial, self.frac_target))
        if self.frac_target > 1.0:
            raise ConfigurationError("frac_target must not exceed 1")

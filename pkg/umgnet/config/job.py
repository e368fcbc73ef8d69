"""Configuration used to define how a job is to be executed
"""
import attr

from .utils import positive


@attr.s(kw_only=True)
class JobConfig:
    """Defines the configuration for how a job should be executed

    Attributes
    ----------
    num_workers: int
        How many processes to use for the (seed, fold) fan-out of an
        experiment; 1 runs everything in the calling process
    """
    num_workers = attr.ib(type=int, default=1, validator=positive)

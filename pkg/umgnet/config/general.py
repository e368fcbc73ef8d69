"""General configuration parameters

Parameters that are used in all steps, e.g., where outputs are written,
which logging level should be used and the top-level seed.
"""
import attr

from .utils import non_negative


@attr.s(kw_only=True)
class GeneralConfig:
    """Defines general configuration parameters

    Attributes
    ----------
    out_dir: str
        Where outputs of a command (reports, checkpoints, logs) are written
    logging: int
        Which python logging level should be used:
        (10 - DEBUG, 20 - INFO, 30 - WARNING, 40 - ERROR)
    seed: int
        Top-level seed, expanded into named sub-streams (data, init,
        dropout, folds, kmeans) for replication of experiments
    progress: bool
        Show tqdm progress bars for long loops
    tag: str, optional
        Tag for experiment, can be used for debugging purposes
    """
    out_dir = attr.ib(type=str, default="out")
    logging = attr.ib(type=int, default=20,
                      validator=attr.validators.instance_of(int))
    seed = attr.ib(type=int, default=0,
                   validator=[attr.validators.instance_of(int),
                              non_negative])
    progress = attr.ib(type=bool, default=True)
    tag = attr.ib(type=str, default=None)

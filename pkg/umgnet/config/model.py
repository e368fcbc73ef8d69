"""Configuration used to define the uplift model and its training
"""
from typing import List

import attr

from .utils import (_check_length,
                    _float_list_validator,
                    _int_list_validator,
                    in_choices,
                    non_negative,
                    positive,
                    probability)

GNN_KINDS = ("sage", "ngcf", "lgc")


@attr.s(kw_only=True)
class ModelConfig:
    """Defines the UMGNet architecture and its training schedule

    Attributes
    ----------
    gnn: str
        Which graph layer encodes the projected node features, one of
        ["sage": one GraphSAGE mean-aggregation layer,
         "ngcf": three NGCF layers with ego-neighbor interaction,
         "lgc": weightless layer-averaged propagation]
    hidden_sizes: list of int
        Three sizes: projection width, GNN hidden width, head hidden width
    dropout: float
        Dropout rate of the head layers, also used for MC-dropout
    epochs: int
        Number of full-batch training steps
    learning_rate: float
        Step size of the adaptive moment optimizer
    weight_decay: float
        Rate of decoupled weight decay
    betas: list of float
        Decay rates of the first and second moment estimates
    eps: float
        Numerical stabilizer of the optimizer update
    dr_variant: bool
        Add the treatment prediction head and its loss (UMGNet-Dr)
    alpha: float
        Weight of the treatment loss in the Dr variant
    ngcf_layers: int
        Number of NGCF layers
    lgc_layers: int
        Number of LGC propagation steps
    dtype: str
        Floating point precision of the parameters, float32 or float64
    seed: int, optional
        Seed of the init and dropout streams; if not set the top-level
        seed of the run is used
    """
    gnn = attr.ib(type=str, default="sage", converter=str.lower,
                  validator=in_choices(GNN_KINDS))
    hidden_sizes = attr.ib(type=List[int], default=attr.Factory(
        lambda: [64, 64, 32]),
                           validator=[_int_list_validator, _check_length(3),
                                      positive])
    dropout = attr.ib(type=float, default=0.4, validator=probability)
    epochs = attr.ib(type=int, default=2000, validator=non_negative)
    learning_rate = attr.ib(type=float, default=0.01, validator=positive)
    weight_decay = attr.ib(type=float, default=1e-4, validator=non_negative)
    betas = attr.ib(type=List[float], default=attr.Factory(
        lambda: [0.9, 0.999]),
                    validator=[_float_list_validator, _check_length(2)])
    eps = attr.ib(type=float, default=1e-8, validator=positive)
    dr_variant = attr.ib(type=bool, default=False)
    alpha = attr.ib(type=float, default=1.0, validator=non_negative)
    ngcf_layers = attr.ib(type=int, default=3, validator=positive)
    lgc_layers = attr.ib(type=int, default=3, validator=positive)
    dtype = attr.ib(type=str, default="float32",
                    validator=in_choices(("float32", "float64")))
    seed = attr.ib(type=int, default=None)

# flake8: noqa
"""umgnet configuration

This module defines the components of the configuration files used
by umgnet.

Submodules
----------

acquisition:
    defines configuration of the acquisition function and active loop
data:
    defines where a dataset is read from or how it is simulated
evaluate:
    defines configuration of the inverted k-fold evaluation
general:
    defines general configuration used by several steps
job:
    defines how many workers an evaluation may use
model:
    defines the uplift model architecture and training
uplift_config:
    combines other config submodules into the config of a run
utils:
    defines utility functions to read and handle config
"""
from .acquisition import AcquisitionConfig
from .data import (DataConfig,
                   SyntheticConfig)
from .evaluate import EvaluateConfig
from .general import GeneralConfig
from .job import JobConfig
from .model import ModelConfig
from .uplift_config import UpliftConfig
from .utils import (apply_overrides,
                    config_hash,
                    dump_config,
                    load_config)

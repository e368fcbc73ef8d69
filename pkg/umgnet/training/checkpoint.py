"""Model checkpoints

A checkpoint is a numpy ``.npz`` archive holding each parameter under
``param/<name>``, the model config as JSON, the input widths and a
format version.
"""
import json
import logging
import os
from collections import OrderedDict

import attr
import numpy as np

from umgnet.config import ModelConfig
from umgnet.errors import ConfigurationError
from umgnet.tensor import Tensor

from .model import UpliftModel

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


def save_checkpoint(model, path):
    """Write `model` to `path` (.npz)"""
    arrays = {"param/" + name: p.value
              for name, p in model.params.items()}
    arrays["format_version"] = np.array(FORMAT_VERSION)
    arrays["config"] = np.array(json.dumps(attr.asdict(model.config),
                                           sort_keys=True))
    arrays["input_widths"] = np.array([model.n_user_features,
                                       model.n_item_features])
    arrays["param_order"] = np.array(list(model.params))
    dirname = os.path.dirname(path)
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    with open(path, "wb") as f:
        np.savez(f, **arrays)
    logger.info("saved checkpoint %s", path)


def load_checkpoint(path):
    """Read a model written by `save_checkpoint`

    Raises
    ------
    ConfigurationError
        If the file is missing or has an unsupported format version
    """
    if not os.path.isfile(path):
        raise ConfigurationError("checkpoint %s does not exist" % path)
    with np.load(path, allow_pickle=False) as archive:
        version = int(archive["format_version"])
        if version != FORMAT_VERSION:
            raise ConfigurationError(
                "checkpoint %s has format version %d, expected %d" % (
                    path, version, FORMAT_VERSION))
        config = ModelConfig(**json.loads(str(archive["config"])))
        d, d_p = (int(v) for v in archive["input_widths"])
        params = OrderedDict()
        for name in archive["param_order"]:
            name = str(name)
            params[name] = Tensor(archive["param/" + name].copy(),
                                  requires_grad=True, name=name)
    return UpliftModel(config, d, d_p, params=params)

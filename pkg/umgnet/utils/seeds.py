"""Expands one top-level seed into named, independent random streams

All randomness in a run flows from `general.seed`.  Components ask for a
stream by name ("data", "init", "dropout", "folds", "kmeans", ...) and an
optional list of integer keys (simulation index, fold, pass), so any
component can be reproduced in isolation.
"""
import zlib

import numpy as np


def _entropy(seed, name, keys):
    return [int(seed), zlib.crc32(name.encode("utf-8"))] + \
        [int(k) for k in keys]


def named_rng(seed, name, *keys):
    """Return a `numpy.random.Generator` for stream `name` of `seed`

    Args
    ----
    seed: int
        Top-level seed of the run
    name: str
        Name of the sub-stream
    keys: int
        Further integers that select a sub-sub-stream (e.g. pass index)
    """
    return np.random.default_rng(
        np.random.SeedSequence(_entropy(seed, name, keys)))


def named_seed(seed, name, *keys):
    """Return a 32 bit integer seed for libraries that only accept ints"""
    state = np.random.SeedSequence(_entropy(seed, name, keys))
    return int(state.generate_state(1, dtype=np.uint32)[0])

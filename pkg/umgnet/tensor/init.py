"""Weight initialization"""
import numpy as np


def glorot_uniform(rng, fan_in, fan_out, dtype=np.float32):
    """Fan-balanced uniform init in [-a, a], a = sqrt(6 / (fan_in + fan_out))
    """
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_in, fan_out)).astype(dtype)

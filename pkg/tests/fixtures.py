"""Small datasets and configs shared by the tests"""
import numpy as np

from umgnet.config import (ModelConfig,
                           SyntheticConfig)
from umgnet.data import (BipartiteGraph,
                         Dataset,
                         generate_synthetic)


def make_dataset(n, m, edges, x_users, x_items=None, treatment=None,
                 outcome=None, mask=None):
    graph, _ = BipartiteGraph.from_edges(n, m, edges)
    if x_items is None:
        x_items = np.eye(m)
    if treatment is None:
        treatment = np.arange(n) % 2
    if outcome is None:
        outcome = np.zeros(n)
    if mask is None:
        mask = np.ones(n)
    return Dataset(graph=graph,
                   user_features=np.asarray(x_users, dtype=np.float64),
                   item_features=np.asarray(x_items, dtype=np.float64),
                   treatment=treatment,
                   outcome=outcome,
                   label_mask=mask)


def random_dataset(n=8, m=5, d=3, d_p=2, seed=0, density=0.4):
    """Random graph with standard normal features and outcomes"""
    rng = np.random.default_rng(seed)
    edges = [(u, p) for u in range(n) for p in range(m)
             if rng.random() < density]
    treatment = np.zeros(n)
    treatment[rng.permutation(n)[:n // 2]] = 1
    return make_dataset(n, m, edges,
                        x_users=rng.standard_normal((n, d)),
                        x_items=rng.standard_normal((m, d_p)),
                        treatment=treatment,
                        outcome=rng.standard_normal(n))


def synthetic(n=60, m=20, d=4, seed=0, **kwargs):
    cfg = SyntheticConfig(n=n, m=m, d=d, density=kwargs.pop("density", 0.2),
                          seed=seed, **kwargs)
    return generate_synthetic(cfg)


def small_config(**kwargs):
    values = dict(hidden_sizes=[8, 8, 4], epochs=20, dropout=0.0,
                  learning_rate=0.01, dtype="float64", seed=0)
    values.update(kwargs)
    return ModelConfig(**values)

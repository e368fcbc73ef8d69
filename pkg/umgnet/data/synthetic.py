"""Simulates bipartite uplift datasets with planted individual effects

The graph and the features are drawn once per seed.  Each simulation
index redraws the outcome model on top of them:

    y_t = ReLU(w_s x + w_t t + e),  w_s ~ U(low, high),  e ~ N(mu, sigma^2)

so the individual effect of user u is ReLU(a_u + w_t) - ReLU(a_u) with
a_u = w_s x_u + e_u.
"""
import logging

import attr
import networkx as nx
import numpy as np

from umgnet.utils import (named_rng,
                          named_seed)

from .dataset import Dataset
from .graph import BipartiteGraph

logger = logging.getLogger(__name__)


@attr.s(kw_only=True, frozen=True, eq=False)
class SyntheticTruth:
    """Ground truth of a simulated dataset

    Attributes
    ----------
    y0, y1: np.ndarray
        Potential outcomes of every user under control and treatment
    effect: np.ndarray
        Individual effects y1 - y0
    w_s: np.ndarray
        Feature coefficients
    w_t: float
        Treatment coefficient
    """
    y0 = attr.ib()
    y1 = attr.ib()
    effect = attr.ib()
    w_s = attr.ib()
    w_t = attr.ib(type=float)


def _ids(prefix, count):
    width = len(str(max(count - 1, 0)))
    return ["%s%0*d" % (prefix, width, i) for i in range(count)]


def _random_edges(n, m, density, seed):
    if density >= 1.0:
        return [(u, p) for u in range(n) for p in range(m)]
    graph = nx.bipartite.random_graph(n, m, density, seed=seed)
    return sorted((min(a, b), max(a, b) - n) for a, b in graph.edges())


def generate_synthetic(cfg, simulation=None):
    """Generate a dataset and its ground truth

    Args
    ----
    cfg: SyntheticConfig
        Sizes, density and outcome parameters; `cfg.seed` has to be set
    simulation: int, optional
        Index of the outcome simulation, defaults to `cfg.simulation`

    Returns
    -------
    (Dataset, SyntheticTruth)
        Every user is labeled with its factual outcome
    """
    seed = cfg.seed if cfg.seed is not None else 0
    if simulation is None:
        simulation = cfg.simulation
    n, m = cfg.n, cfg.m

    data_rng = named_rng(seed, "data")
    x_users = data_rng.standard_normal((n, cfg.d))
    x_items = data_rng.standard_normal((m, cfg.product_dim))
    edges = _random_edges(n, m, cfg.density, named_seed(seed, "graph"))
    graph, _ = BipartiteGraph.from_edges(n, m, edges)
    isolated = int(np.sum(np.bincount(graph.users, minlength=n) == 0))
    if isolated:
        logger.debug("%d of %d synthetic users are isolated", isolated, n)

    outcome_rng = named_rng(seed, "outcome", simulation)
    w_s = outcome_rng.uniform(cfg.w_s_low, cfg.w_s_high, size=cfg.d)
    if cfg.w_t is None:
        w_t = float(outcome_rng.uniform(cfg.w_s_low, cfg.w_s_high))
    else:
        w_t = float(cfg.w_t)
    noise = outcome_rng.normal(cfg.noise_mean, cfg.noise_std, size=n)
    treatment = np.zeros(n)
    treatment[outcome_rng.permutation(n)[:n // 2]] = 1.0

    base = x_users @ w_s + noise
    y0 = np.maximum(base, 0.0)
    y1 = np.maximum(base + w_t, 0.0)
    effect = y1 - y0
    outcome = np.where(treatment > 0, y1, y0)

    metadata = {
        "seed": int(seed),
        "simulation": int(simulation),
        "w_t": w_t,
        "w_s": w_s.tolist(),
        "n": n,
        "m": m,
        "density": float(cfg.density),
        "ate": float(effect.mean()),
    }
    logger.info("simulated dataset: %d users, %d products, %d edges, "
                "w_t %.3f, ATE %.3f", n, m, graph.num_edges, w_t,
                metadata["ate"])
    dataset = Dataset(graph=graph,
                      user_features=x_users,
                      item_features=x_items,
                      treatment=treatment,
                      outcome=outcome,
                      label_mask=np.ones(n),
                      user_ids=_ids("u", n),
                      item_ids=_ids("p", m),
                      metadata=metadata)
    truth = SyntheticTruth(y0=y0, y1=y1, effect=effect, w_s=w_s, w_t=w_t)
    return dataset, truth

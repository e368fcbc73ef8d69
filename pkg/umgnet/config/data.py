"""Configuration used to define the data of an experiment

Data either comes from comma-separated tables (DataConfig) or is
simulated (SyntheticConfig).  If both are given, the tables win.
"""
import attr

from umgnet.errors import ConfigurationError

from .utils import (fraction,
                    non_negative,
                    positive)


@attr.s(kw_only=True)
class DataConfig:
    """Defines the tables a dataset is ingested from

    Attributes
    ----------
    edges: str
        Path to edges file, header `user_id,item_id`
    users: str
        Path to user features file, header `user_id,f0,...,f{d-1}`
    labels: str
        Path to labels file, header `user_id,treatment,outcome`
    items: str, optional
        Path to product features file, header `item_id,f0,...`; if not
        set, products are one-hot encoded
    normalize: bool
        Standardize user and product feature columns after ingestion
    """
    edges = attr.ib(type=str, default=None)
    users = attr.ib(type=str, default=None)
    labels = attr.ib(type=str, default=None)
    items = attr.ib(type=str, default=None)
    normalize = attr.ib(type=bool, default=True)

    def is_set(self):
        return self.edges is not None

    def __attrs_post_init__(self):
        given = [p is not None for p in (self.edges, self.users, self.labels)]
        if any(given) and not all(given):
            raise ConfigurationError(
                "data needs all of edges, users and labels")


@attr.s(kw_only=True)
class SyntheticConfig:
    """Defines a simulated bipartite uplift dataset

    The outcome follows y = ReLU(w_s x + w_t t + e) with w_s drawn from
    U(w_s_low, w_s_high) per feature and e ~ N(noise_mean, noise_std^2).

    Attributes
    ----------
    n: int
        Number of users
    m: int
        Number of products
    d: int
        Number of user features
    product_dim: int, optional
        Number of product features, defaults to d
    density: float
        Probability of each user-product edge, in (0, 1]
    w_t: float, optional
        Fixed treatment coefficient; drawn from U(w_s_low, w_s_high) per
        simulation if not set
    w_s_low, w_s_high: float
        Range of the uniform feature coefficients
    noise_mean, noise_std: float
        Parameters of the normal noise term
    seed: int, optional
        Seed of the data stream, defaults to the top-level seed
    simulations: int
        Number of outcome simulations on the same graph
    simulation: int
        Which simulation is used when a single dataset is needed
    """
    n = attr.ib(type=int, validator=positive)
    m = attr.ib(type=int, validator=positive)
    d = attr.ib(type=int, default=8, validator=positive)
    product_dim = attr.ib(type=int, default=None)
    density = attr.ib(type=float, default=0.05, validator=fraction)
    w_t = attr.ib(type=float, default=None)
    w_s_low = attr.ib(type=float, default=10.0)
    w_s_high = attr.ib(type=float, default=20.0)
    noise_mean = attr.ib(type=float, default=10.0)
    noise_std = attr.ib(type=float, default=5.0, validator=non_negative)
    seed = attr.ib(type=int, default=None)
    simulations = attr.ib(type=int, default=1, validator=positive)
    simulation = attr.ib(type=int, default=0, validator=non_negative)

    def __attrs_post_init__(self):
        if self.product_dim is None:
            self.product_dim = self.d
        if self.product_dim <= 0:
            raise ConfigurationError("product_dim must be positive")
        if self.w_s_low > self.w_s_high:
            raise ConfigurationError("w_s_low must not exceed w_s_high")
        if self.simulation >= self.simulations:
            raise ConfigurationError(
                "simulation index %d out of range for %d simulations" % (
                    self.simulation, self.simulations))

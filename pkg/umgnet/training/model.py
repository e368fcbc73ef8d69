"""Provides the UMGNet model

Node features of users and products are projected to a shared width and
stacked (users first), encoded by a graph layer, and the user rows of
both are concatenated into the shared user representation Z.  Two
residual heads map Z to the treated and control outcome; the Dr variant
adds a linear treatment logit on Z.
"""
import logging
from collections import OrderedDict

import attr
import numpy as np

from umgnet.config import ModelConfig
from umgnet.tensor import (Tensor,
                           add,
                           concat_columns,
                           concat_rows,
                           dropout,
                           glorot_uniform,
                           matmul,
                           relu,
                           slice_rows)
from umgnet.utils import named_rng

from . import gnn

logger = logging.getLogger(__name__)

BRANCHES = ("t", "c")


@attr.s(kw_only=True, frozen=True)
class Head:
    """Weights of one outcome head

    Attributes
    ----------
    hidden: list of (Tensor, Tensor)
        Weight and 1 x h bias of each hidden ReLU layer
    out: (Tensor, Tensor)
        Weight and 1 x 1 bias of the linear output
    """
    hidden = attr.ib(factory=list)
    out = attr.ib()


@attr.s(kw_only=True, frozen=True)
class ModelInputs:
    """Constant inputs of a forward pass over one dataset"""
    x_users = attr.ib()
    x_items = attr.ib()
    adjacency = attr.ib()
    n = attr.ib(type=int)


@attr.s(kw_only=True, frozen=True)
class ForwardOutput:
    """Per-user outputs of a forward pass, n x 1 tensors"""
    y_t = attr.ib()
    y_c = attr.ib()
    logits = attr.ib(default=None)


def project_features(x_users, x_items, w_users, w_items):
    """X = [ReLU(X_U W_U); ReLU(X_P W_P)], users in rows 0..n-1"""
    return concat_rows([relu(matmul(x_users, w_users)),
                        relu(matmul(x_items, w_items))])


def user_representation(x, h1, n):
    """Shared head input [X[:n], H1[:n]]"""
    return concat_columns([slice_rows(x, 0, n), slice_rows(h1, 0, n)])


def apply_head(z, head, p=0.0, training=False, rng=None):
    for weight, bias in head.hidden:
        z = relu(add(matmul(z, weight), bias))
        z = dropout(z, p, training, rng)
    weight, bias = head.out
    return add(matmul(z, weight), bias)


def head_forward(x, h1, n, head, p=0.0, training=False, rng=None):
    """Outcome prediction of one branch for the first n (user) rows

    Args
    ----
    x, h1: Tensor
        Projected features and graph encoding, n + m rows each
    n: int
        Number of users
    head: Head
        Weights of the branch
    p: float
        Dropout rate after each hidden layer
    training: bool
        Sample dropout masks from `rng`

    Returns
    -------
    Tensor
        n x 1 predictions
    """
    return apply_head(user_representation(x, h1, n), head, p=p,
                      training=training, rng=rng)


class UpliftModel:
    """All learnable parameters of UMGNet and its forward pass

    Parameters are kept in an ordered dict of named tensors; the order is
    fixed by the architecture, so initialization, optimization and
    checkpoints are deterministic.

    Attributes
    ----------
    config: ModelConfig
    n_user_features, n_item_features: int
        Widths d and d_p of the inputs
    params: OrderedDict of str: Tensor
    """
    def __init__(self, config, n_user_features, n_item_features,
                 params=None):
        self.config = config
        self.n_user_features = n_user_features
        self.n_item_features = n_item_features
        if params is None:
            params = self._initialize()
        self.params = params

    @classmethod
    def create(cls, config, n_user_features, n_item_features):
        if not isinstance(config, ModelConfig):
            config = ModelConfig(**config)
        return cls(config, n_user_features, n_item_features)

    @property
    def dtype(self):
        return np.dtype(self.config.dtype)

    def shapes(self):
        """Names and shapes of all parameters, in parameter order"""
        cfg = self.config
        width, hidden, head_hidden = cfg.hidden_sizes
        shapes = [("proj_user", self.n_user_features, width),
                  ("proj_item", self.n_item_features, width)]
        shapes += gnn.weight_shapes(cfg.gnn, width, hidden, cfg.ngcf_layers)
        rep = width + gnn.output_width(cfg.gnn, width, hidden)
        for branch in BRANCHES:
            shapes += [("head_%s_hidden" % branch, rep, head_hidden),
                       ("head_%s_hidden_bias" % branch, 1, head_hidden),
                       ("head_%s_out" % branch, head_hidden, 1),
                       ("head_%s_out_bias" % branch, 1, 1)]
        if cfg.dr_variant:
            shapes += [("treatment", rep, 1),
                       ("treatment_bias", 1, 1)]
        return shapes

    def _initialize(self):
        seed = self.config.seed if self.config.seed is not None else 0
        rng = named_rng(seed, "init")
        params = OrderedDict()
        for name, fan_in, fan_out in self.shapes():
            if name.endswith("_bias"):
                value = np.zeros((fan_in, fan_out), dtype=self.dtype)
            else:
                value = glorot_uniform(rng, fan_in, fan_out, dtype=self.dtype)
            params[name] = Tensor(value, requires_grad=True, name=name)
        logger.debug("initialized %d parameters (%d values)", len(params),
                     sum(p.value.size for p in params.values()))
        return params

    def parameters(self):
        return list(self.params.values())

    def head(self, branch):
        p = self.params
        return Head(hidden=[(p["head_%s_hidden" % branch],
                             p["head_%s_hidden_bias" % branch])],
                    out=(p["head_%s_out" % branch],
                         p["head_%s_out_bias" % branch]))

    def gnn_weights(self):
        return [self.params[name] for name, _, _ in gnn.weight_shapes(
            self.config.gnn, *self.config.hidden_sizes[:2],
            self.config.ngcf_layers)]

    def prepare(self, dataset):
        """Constant tensors of `dataset` in the precision of the model"""
        return ModelInputs(
            x_users=Tensor(dataset.user_features.astype(self.dtype)),
            x_items=Tensor(dataset.item_features.astype(self.dtype)),
            adjacency=dataset.graph.adjacency(
                gnn.ADJACENCY_NORMALIZATION[self.config.gnn]),
            n=dataset.n)

    def representation(self, inputs):
        """Shared user representation Z, n x (w + encoder width)"""
        x = project_features(inputs.x_users, inputs.x_items,
                             self.params["proj_user"],
                             self.params["proj_item"])
        h1 = gnn.encode(inputs.adjacency, x, self.config.gnn,
                        self.gnn_weights(), layers=self.config.lgc_layers)
        return user_representation(x, h1, inputs.n)

    def heads(self, z, training=False, rng=None):
        """Apply both outcome heads and the treatment head to Z

        The treated head draws its dropout masks before the control head.
        """
        p = self.config.dropout
        y_t = apply_head(z, self.head("t"), p=p, training=training, rng=rng)
        y_c = apply_head(z, self.head("c"), p=p, training=training, rng=rng)
        logits = None
        if self.config.dr_variant:
            logits = add(matmul(z, self.params["treatment"]),
                         self.params["treatment_bias"])
        return ForwardOutput(y_t=y_t, y_c=y_c, logits=logits)

    def forward(self, inputs, training=False, rng=None):
        return self.heads(self.representation(inputs), training=training,
                          rng=rng)

    def is_finite(self):
        return all(np.all(np.isfinite(p.value))
                   for p in self.params.values())

    def copy(self):
        params = OrderedDict(
            (name, Tensor(p.value.copy(), requires_grad=True, name=name))
            for name, p in self.params.items())
        return UpliftModel(self.config, self.n_user_features,
                           self.n_item_features, params=params)

"""Graph layers that encode the projected node features

sage
    one GraphSAGE layer, ReLU([X, mean_neighbors(X)] W)
ngcf
    NGCF layers, E' = ReLU((L E + E) W1 + (L E * E) W2), the last layer is
    returned
lgc
    LightGCN propagation without weights or nonlinearity, the mean of
    the layers 0..K is returned

L is the symmetrically normalized adjacency, the SAGE neighbor mean uses
the row normalized one.  Isolated nodes aggregate the zero vector.
"""
import logging

from umgnet.errors import ConfigurationError
from umgnet.tensor import (add,
                           concat_columns,
                           matmul,
                           mul,
                           relu,
                           scale,
                           spmm)

logger = logging.getLogger(__name__)

ADJACENCY_NORMALIZATION = {
    "sage": "mean",
    "ngcf": "symmetric",
    "lgc": "symmetric",
}


def _check_kind(kind):
    if kind not in ADJACENCY_NORMALIZATION:
        raise ConfigurationError(
            "unknown gnn kind %s, expected one of %s" % (
                kind, sorted(ADJACENCY_NORMALIZATION)))


def weight_shapes(kind, width, hidden, ngcf_layers=3):
    """Names and shapes of the weights of a graph encoder

    Args
    ----
    kind: str
        One of sage, ngcf, lgc
    width: int
        Width of the projected features
    hidden: int
        Output width of the weighted layers

    Returns
    -------
    list of (str, int, int)
        name, fan in and fan out of each weight matrix
    """
    _check_kind(kind)
    if kind == "sage":
        return [("sage", 2 * width, hidden)]
    if kind == "ngcf":
        shapes = []
        fan_in = width
        for layer in range(ngcf_layers):
            shapes.append(("ngcf_%d_w1" % layer, fan_in, hidden))
            shapes.append(("ngcf_%d_w2" % layer, fan_in, hidden))
            fan_in = hidden
        return shapes
    return []


def output_width(kind, width, hidden):
    _check_kind(kind)
    return width if kind == "lgc" else hidden


def encode(adj, x, kind, weights=(), layers=3):
    """Encode node features X with a graph layer

    Args
    ----
    adj: SparseAdjacency
        Adjacency of the bipartite graph, renormalized as `kind` needs
    x: Tensor
        (n + m) x w projected features
    kind: str
        One of sage, ngcf, lgc
    weights: list of Tensor
        Weights in the order of `weight_shapes`
    layers: int
        Number of propagation steps of lgc

    Returns
    -------
    Tensor
        H1 with n + m rows

    Raises
    ------
    ConfigurationError
        If kind is unknown
    """
    kind = str(kind).lower()
    _check_kind(kind)
    adj = adj.normalized(ADJACENCY_NORMALIZATION[kind])

    if kind == "sage":
        neighbors = spmm(adj, x)
        return relu(matmul(concat_columns([x, neighbors]), weights[0]))

    if kind == "ngcf":
        e = x
        for w1, w2 in zip(weights[0::2], weights[1::2]):
            side = spmm(adj, e)
            e = relu(add(matmul(add(side, e), w1),
                         matmul(mul(side, e), w2)))
        return e

    total = x
    e = x
    for _ in range(layers):
        e = spmm(adj, e)
        total = add(total, e)
    return scale(total, 1.0 / (layers + 1))

"""Differentiable primitives of the tensor engine

Every primitive computes its value with numpy/scipy and, if a tape is
active and one of its inputs requires gradients, records a closure that
maps the output gradient to the input gradients.  Only the primitives
the uplift model and its losses need are provided.
"""
import logging

import numpy as np

from umgnet.errors import (ParameterError,
                           ShapeError)
from .tape import (Tensor,
                   active_tape,
                   as_tensor)

logger = logging.getLogger(__name__)


def _result(op, value, inputs, backward, **saved):
    requires_grad = any(t.requires_grad for t in inputs)
    out = Tensor(value, requires_grad=requires_grad)
    tape = active_tape()
    if tape is not None and requires_grad:
        tape.record(op, out, inputs, backward, **saved)
    return out


def _same_shape(op, a, b):
    if a.shape != b.shape:
        raise ShapeError("%s: shapes %s and %s differ" % (
            op, a.shape, b.shape))


def matmul(a, b):
    """Dense matrix product a @ b"""
    a, b = as_tensor(a), as_tensor(b)
    if a.cols != b.rows:
        raise ShapeError("matmul: cannot multiply %s by %s" % (
            a.shape, b.shape))
    av, bv = a.value, b.value

    def backward(g):
        return (g @ bv.T if a.requires_grad else None,
                av.T @ g if b.requires_grad else None)
    return _result("matmul", av @ bv, (a, b), backward)


def spmm(adj, x):
    """Sparse adjacency times dense matrix

    Row i of the output is the (normalized) sum of the rows of x of the
    neighbors of node i.
    """
    x = as_tensor(x)
    if adj.dimension != x.rows:
        raise ShapeError("spmm: adjacency of dimension %d, x has %d rows" % (
            adj.dimension, x.rows))
    value = np.asarray(adj.matrix @ x.value).astype(x.dtype, copy=False)

    def backward(g):
        return (np.asarray(adj.mirror @ g).astype(g.dtype, copy=False),)
    return _result("spmm", value, (x,), backward)


def relu(x):
    """Elementwise max(0, x); the subgradient at 0 is 0"""
    x = as_tensor(x)
    mask = x.value > 0
    value = np.where(mask, x.value, 0).astype(x.dtype, copy=False)

    def backward(g):
        return (np.where(mask, g, 0).astype(g.dtype, copy=False),)
    return _result("relu", value, (x,), backward, input=x.value)


def dropout(x, p, training, rng):
    """Inverted dropout

    In training (and MC-inference) mode each element is zeroed with
    probability p and survivors are scaled by 1 / (1 - p).  Otherwise,
    or if p is 0, x is returned unchanged.

    Args
    ----
    x: Tensor
    p: float
        Drop probability in [0, 1)
    training: bool
        Sample a mask (training and MC-dropout inference)
    rng: np.random.Generator
        Seeded generator the mask is drawn from
    """
    if not 0.0 <= p < 1.0:
        raise ParameterError("dropout rate has to be in [0, 1), got %s" % p)
    x = as_tensor(x)
    if not training or p == 0.0:
        return x
    keep = rng.random(x.shape) >= p
    mask = (keep / (1.0 - p)).astype(x.dtype)
    value = x.value * mask

    def backward(g):
        return (g * mask,)
    return _result("dropout", value, (x,), backward)


def add(a, b):
    """a + b, b may be a 1 x cols row that is broadcast over rows"""
    a, b = as_tensor(a), as_tensor(b)
    broadcast = b.rows == 1 and a.rows != 1 and b.cols == a.cols
    if not broadcast:
        _same_shape("add", a, b)

    def backward(g):
        gb = g.sum(axis=0, keepdims=True) if broadcast else g
        return g, gb
    return _result("add", a.value + b.value, (a, b), backward)


def sub(a, b):
    """Elementwise a - b"""
    a, b = as_tensor(a), as_tensor(b)
    _same_shape("sub", a, b)

    def backward(g):
        return g, -g
    return _result("sub", a.value - b.value, (a, b), backward)


def mul(a, b):
    """Elementwise (Hadamard) product"""
    a, b = as_tensor(a), as_tensor(b)
    _same_shape("mul", a, b)
    av, bv = a.value, b.value

    def backward(g):
        return g * bv, g * av
    return _result("mul", av * bv, (a, b), backward)


def scale(x, factor):
    """Multiply by a constant"""
    x = as_tensor(x)
    factor = x.dtype.type(factor)

    def backward(g):
        return (g * factor,)
    return _result("scale", x.value * factor, (x,), backward)


def square(x):
    x = as_tensor(x)
    xv = x.value

    def backward(g):
        return (2 * xv * g,)
    return _result("square", xv * xv, (x,), backward)


def softplus(x):
    """log(1 + exp(x)), numerically stable"""
    x = as_tensor(x)
    xv = x.value
    value = np.logaddexp(0, xv).astype(x.dtype, copy=False)

    def backward(g):
        sig = np.exp(-np.logaddexp(0, -xv)).astype(g.dtype, copy=False)
        return (g * sig,)
    return _result("softplus", value, (x,), backward)


def sum_all(x):
    """Sum of all elements as a 1x1 tensor"""
    x = as_tensor(x)
    shape = x.shape

    def backward(g):
        return (np.full(shape, g.item(), dtype=g.dtype),)
    return _result("sum", x.value.sum(keepdims=True).reshape(1, 1), (x,),
                   backward)


def weighted_sum(x, weights):
    """sum(weights * x) with constant weights, as a 1x1 tensor"""
    x = as_tensor(x)
    w = np.asarray(weights, dtype=x.dtype).reshape(x.shape)

    def backward(g):
        return (w * g.item(),)
    value = np.asarray((w * x.value).sum(), dtype=x.dtype).reshape(1, 1)
    return _result("weighted_sum", value, (x,), backward)


def concat_columns(tensors):
    """Concatenate horizontally, all inputs need the same row count"""
    tensors = [as_tensor(t) for t in tensors]
    rows = {t.rows for t in tensors}
    if len(rows) != 1:
        raise ShapeError("concat_columns: row counts differ: %s" % rows)
    bounds = np.cumsum([0] + [t.cols for t in tensors])

    def backward(g):
        return tuple(g[:, bounds[i]:bounds[i + 1]]
                     for i in range(len(tensors)))
    return _result("concat_columns",
                   np.concatenate([t.value for t in tensors], axis=1),
                   tuple(tensors), backward)


def concat_rows(tensors):
    """Stack vertically, all inputs need the same column count"""
    tensors = [as_tensor(t) for t in tensors]
    cols = {t.cols for t in tensors}
    if len(cols) != 1:
        raise ShapeError("concat_rows: column counts differ: %s" % cols)
    bounds = np.cumsum([0] + [t.rows for t in tensors])

    def backward(g):
        return tuple(g[bounds[i]:bounds[i + 1]]
                     for i in range(len(tensors)))
    return _result("concat_rows",
                   np.concatenate([t.value for t in tensors], axis=0),
                   tuple(tensors), backward)


def slice_rows(x, start, stop):
    """Rows start..stop-1 of x"""
    x = as_tensor(x)
    if not 0 <= start <= stop <= x.rows:
        raise ShapeError("slice_rows: [%d, %d) out of range for %d rows" % (
            start, stop, x.rows))
    shape = x.shape

    def backward(g):
        full = np.zeros(shape, dtype=g.dtype)
        full[start:stop] = g
        return (full,)
    return _result("slice_rows", x.value[start:stop], (x,), backward)

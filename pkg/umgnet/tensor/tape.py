"""Provides the tensor container and the computation tape

A `Tape` records every primitive applied to tensors while it is active
(used as a context manager).  Replaying the records in reverse yields
the gradient of a scalar loss with respect to every tensor that
requires gradients; tensors not reachable from the loss get zeros.
"""
import logging
import threading

import numpy as np

from umgnet.errors import ShapeError

logger = logging.getLogger(__name__)

_state = threading.local()


class Tensor:
    """A dense 2d matrix of reals, optionally tracked for gradients

    Attributes
    ----------
    value: np.ndarray
        2d array, row-major
    requires_grad: bool
        Parameters and everything computed from them require gradients
    name: str, optional
        Name used for checkpoints and debugging
    """
    __slots__ = ("value", "requires_grad", "name")

    def __init__(self, value, requires_grad=False, name=None):
        value = np.asarray(value)
        if value.ndim == 1:
            value = value.reshape(-1, 1)
        if value.ndim != 2:
            raise ShapeError(
                "tensors are 2d matrices, got shape %s" % (value.shape,))
        self.value = value
        self.requires_grad = requires_grad
        self.name = name

    @property
    def shape(self):
        return self.value.shape

    @property
    def rows(self):
        return self.value.shape[0]

    @property
    def cols(self):
        return self.value.shape[1]

    @property
    def dtype(self):
        return self.value.dtype

    def numpy(self):
        return self.value

    def item(self):
        if self.value.size != 1:
            raise ShapeError("item() needs a 1x1 tensor, got %s" % (
                self.shape,))
        return self.value.item()

    def __repr__(self):
        return "Tensor(name=%s, shape=%s, requires_grad=%s)" % (
            self.name, self.shape, self.requires_grad)


def as_tensor(x, dtype=None):
    """Wrap arrays and scalars as constant tensors, pass tensors through"""
    if isinstance(x, Tensor):
        return x
    x = np.asarray(x, dtype=dtype)
    if x.ndim == 0:
        x = x.reshape(1, 1)
    return Tensor(x)


class Record:
    """One primitive application on the tape

    `backward` maps the gradient of the output to a tuple with one
    gradient (or None) per input.
    """
    __slots__ = ("op", "output", "inputs", "backward", "saved")

    def __init__(self, op, output, inputs, backward, saved=None):
        self.op = op
        self.output = output
        self.inputs = inputs
        self.backward = backward
        self.saved = saved or {}


class Tape:
    """Ordered record of primitive applications

    Use as a context manager; while active, all primitives that receive a
    tensor requiring gradients are recorded here.  Tapes are per thread and
    must not be shared between concurrent trainings.
    """
    def __init__(self):
        self.records = []

    def __enter__(self):
        stack = getattr(_state, "stack", None)
        if stack is None:
            stack = _state.stack = []
        stack.append(self)
        return self

    def __exit__(self, exc_type, exc, tb):
        _state.stack.pop()
        return False

    def __len__(self):
        return len(self.records)

    def record(self, op, output, inputs, backward, **saved):
        self.records.append(Record(op, output, inputs, backward, saved))

    def records_of(self, op):
        return [r for r in self.records if r.op == op]

    def backward(self, loss):
        """Propagate d loss / d loss = 1 backwards through the records

        Returns
        -------
        dict of int: np.ndarray
            Gradients keyed by ``id`` of the leaf tensors that were reached
        """
        if loss.value.size != 1:
            raise ShapeError(
                "loss has to be a scalar, got shape %s" % (loss.shape,))
        grads = {id(loss): np.ones_like(loss.value)}
        for rec in reversed(self.records):
            grad_out = grads.pop(id(rec.output), None)
            if grad_out is None:
                continue
            for inp, grad_in in zip(rec.inputs, rec.backward(grad_out)):
                if grad_in is None or not inp.requires_grad:
                    continue
                key = id(inp)
                if key in grads:
                    grads[key] = grads[key] + grad_in
                else:
                    grads[key] = grad_in
        return grads


def active_tape():
    """The innermost active tape of this thread, or None"""
    stack = getattr(_state, "stack", None)
    if stack:
        return stack[-1]
    return None


def backward(loss, tape, params):
    """Gradients of a scalar loss with respect to params

    Args
    ----
    loss: Tensor
        1x1 tensor produced while `tape` was active
    tape: Tape
        The tape the loss was recorded on
    params: list of Tensor
        Parameters to return gradients for

    Returns
    -------
    list of np.ndarray
        One gradient per parameter, zeros for parameters not on the path
        from the parameters to the loss
    """
    grads = tape.backward(loss)
    result = []
    for p in params:
        g = grads.get(id(p))
        if g is None:
            g = np.zeros_like(p.value)
        result.append(g.astype(p.value.dtype, copy=False))
    return result

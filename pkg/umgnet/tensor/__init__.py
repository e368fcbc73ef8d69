# flake8: noqa
"""Minimal tensor engine

Dense 2d tensors, a computation tape for reverse-mode differentiation,
sparse-dense products over a bipartite adjacency, inverted dropout and an
adaptive moment optimizer with decoupled weight decay.
"""
from .gradcheck import gradient_check
from .init import glorot_uniform
from .ops import (add,
                  concat_columns,
                  concat_rows,
                  dropout,
                  matmul,
                  mul,
                  relu,
                  scale,
                  slice_rows,
                  softplus,
                  spmm,
                  square,
                  sub,
                  sum_all,
                  weighted_sum)
from .optimizer import (OptimizerState,
                        optimizer_step)
from .sparse import SparseAdjacency
from .tape import (Tape,
                   Tensor,
                   active_tape,
                   as_tensor,
                   backward)

"""Linear operators for phi-combine.

This module provides the operator abstraction every algorithm talks to,
plus dense, sparse and low-rank adapters and the Matrix Market codec.
"""

from phi_combine.operators.base import LinearOperator, materialize, shifted_apply
from phi_combine.operators.dense import DenseOperator, dense_operator
from phi_combine.operators.lowrank import LowRankOperator
from phi_combine.operators.matrix_market import read_matrix_market, write_matrix_market
from phi_combine.operators.registry import get_operator, register_operator, resolve_source
from phi_combine.operators.sparse import SparseOperator

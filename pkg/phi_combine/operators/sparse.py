"""Sparse matrix operator used by grid-based problem builders."""

import numpy as np
import scipy.sparse as sp

from phi_combine.core.errors import OperatorError
from phi_combine.operators.base import LinearOperator


class SparseOperator(LinearOperator):
    """Operator backed by a scipy.sparse matrix (stored as CSR)."""

    def __init__(self, matrix, label: str = None):
        matrix = sp.csr_matrix(matrix, dtype=float)

        if matrix.shape[0] != matrix.shape[1]:
            raise OperatorError(f"Sparse operator needs a square matrix, got shape {matrix.shape}")

        super().__init__(matrix.shape[0], label=label or "sparse")
        self.matrix = matrix

    def _apply(self, X: np.ndarray) -> np.ndarray:
        return np.asarray(self.matrix @ X)

    def todense(self) -> np.ndarray:
        return self.matrix.toarray()

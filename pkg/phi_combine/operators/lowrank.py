"""Low-rank operator x -> U (W^T x)."""

import numpy as np

from phi_combine.core.errors import OperatorError
from phi_combine.operators.base import LinearOperator


class LowRankOperator(LinearOperator):
    """Matrix-free product with A = U W^T in O(n r) work."""

    def __init__(self, U: np.ndarray, W: np.ndarray, label: str = None):
        U = np.array(U, dtype=float)
        W = np.array(W, dtype=float)

        if U.ndim != 2 or U.shape != W.shape:
            raise OperatorError(f"U and W must share an n x r shape, got {U.shape} and {W.shape}")

        super().__init__(U.shape[0], label=label or f"lowrank(r={U.shape[1]})")

        U.setflags(write=False)
        W.setflags(write=False)
        self.U = U
        self.W = W

    @property
    def rank(self) -> int:
        return self.U.shape[1]

    def _apply(self, X: np.ndarray) -> np.ndarray:
        return self.U @ (self.W.T @ X)

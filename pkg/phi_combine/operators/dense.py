"""Dense matrix operator."""

import numpy as np

from phi_combine.core.errors import OperatorError
from phi_combine.operators.base import LinearOperator


class DenseOperator(LinearOperator):
    """Operator backed by an explicit n x n array."""

    def __init__(self, entries: np.ndarray, label: str = None):
        entries = np.array(entries, dtype=float)

        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise OperatorError(f"Dense operator needs a square matrix, got shape {entries.shape}")
        if not np.all(np.isfinite(entries)):
            raise OperatorError("Dense operator entries must be finite")

        super().__init__(entries.shape[0], label=label or "dense")

        entries.setflags(write=False)
        self.entries = entries

    def _apply(self, X: np.ndarray) -> np.ndarray:
        return self.entries @ X


def dense_operator(entries: np.ndarray, label: str = None) -> DenseOperator:
    """Wrap a square, finite array as a LinearOperator."""
    return DenseOperator(entries, label=label)

"""Base operator interface for phi-combine."""

from abc import ABC, abstractmethod

import numpy as np

from phi_combine.core.errors import OperatorError


class LinearOperator(ABC):
    """Abstract real n -> n linear map, queried only through products with column blocks.

    Implementations are immutable after construction and their `apply` must be re-entrant.
    """

    def __init__(self, dim: int, label: str = None):
        if dim < 1:
            raise OperatorError(f"Operator dimension must be positive, got {dim}")

        self.dim = int(dim)
        self.label = label or type(self).__name__

    @abstractmethod
    def _apply(self, X: np.ndarray) -> np.ndarray:
        """Return A @ X for an n x k block X."""
        pass

    def apply(self, X: np.ndarray) -> np.ndarray:
        """Apply the operator to a vector or an n x k block, preserving the input's shape."""
        X = np.asarray(X, dtype=float)
        if X.shape[0] != self.dim:
            raise OperatorError(f"{self.label}: expected {self.dim} rows, got block of shape {X.shape}")

        if X.ndim == 1:
            return self._apply(X[:, None])[:, 0]

        return self._apply(X)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(dim={self.dim}, label={self.label!r})"


def shifted_apply(op: LinearOperator, xi: float, X: np.ndarray) -> np.ndarray:
    """Apply A - xi*I to X."""
    if not np.isfinite(xi):
        raise OperatorError(f"Shift must be finite, got {xi}")

    Y = op.apply(X)
    if xi == 0:
        return Y

    return Y - xi * np.asarray(X, dtype=float)


def materialize(op: LinearOperator) -> np.ndarray:
    """Dense n x n matrix of an operator, built column by column from the identity."""
    return op.apply(np.eye(op.dim))

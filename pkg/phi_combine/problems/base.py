"""Semilinear problems u' = A u + g(u) consumed by the integrators."""

from dataclasses import dataclass

import numpy as np

from phi_combine.operators.base import LinearOperator


@dataclass
class SemilinearProblem:
    """Stiff linear part given as an operator plus a pointwise nonlinearity.

    The base class has g = 0; subclasses override `reaction`.
    """

    operator: LinearOperator
    u0: np.ndarray
    t_end: float

    def reaction(self, u: np.ndarray) -> np.ndarray:
        return np.zeros_like(u)

    def rhs(self, u: np.ndarray) -> np.ndarray:
        """f(u) = A u + g(u)."""
        return self.operator.apply(u) + self.reaction(u)

"""Adaptive truncated Taylor series shared by the single and block evaluators.

Both loops stop on the two-term relative test

    ||term_{k-1}|| + ||term_k|| <= tol * ||partial sum||

in the infinity norm, with the first comparison forced by ||term_0|| = inf.
"""

import math
from typing import Callable

import numpy as np

from phi_combine.operators.base import LinearOperator

from .errors import SeriesDivergenceError, SeriesNonConvergenceError

Block = np.ndarray
BlockMap = Callable[[Block], Block]


class CountingOperator(LinearOperator):
    """Wraps an operator and counts calls and column products."""

    def __init__(self, op: LinearOperator):
        super().__init__(op.dim, label=op.label)
        self.inner = op
        self.applies = 0
        self.matvecs = 0

    def _apply(self, X: np.ndarray) -> np.ndarray:
        self.applies += 1
        self.matvecs += X.shape[1]
        return self.inner.apply(X)


def counting(op: LinearOperator) -> CountingOperator:
    """Reuse an existing counter or start a new one."""
    return op if isinstance(op, CountingOperator) else CountingOperator(op)


def inf_norm(X: Block) -> float:
    return float(np.linalg.norm(X, np.inf)) if X.ndim == 2 else float(np.max(np.abs(X), initial=0.0))


def _check_finite(X: Block, stage: str, term: int):
    if not np.all(np.isfinite(X)):
        raise SeriesDivergenceError(stage, term)


def block_series(apply_X: BlockMap, W: Block, Y: np.ndarray, tol: float, cap: int, stage: str = "series") -> tuple[Block, int]:
    """S = sum_{k>=1} D_k/k! with D_1 = W and D_k = X D_{k-1} + W Y^(k-1).

    The factorials are folded into the iterates, D_k/k! = (X D_{k-1}/(k-1)! + W Y^(k-2)/(k-1)! Y)/k,
    so no k! is ever formed.

    Returns:
        The partial sum and the number of terms used
    """
    S = W.copy()
    D = W
    V = W
    k = 1
    c1, c2 = math.inf, inf_norm(D)

    while c1 + c2 > tol * inf_norm(S):
        k += 1
        if k > cap:
            raise SeriesNonConvergenceError(stage, cap)

        c1 = c2
        VY = V @ Y
        D = (apply_X(D) + VY) / k
        V = VY / k
        _check_finite(D, stage, k)

        c2 = inf_norm(D)
        S = S + D

    return S, k


def exp_sweep(apply_X: BlockMap, F: Block, tol: float, cap: int, stage: str = "recovery") -> tuple[Block, int]:
    """E = sum_k X^k F / k!, truncated adaptively.

    Returns:
        The partial sum and the number of terms used
    """
    E = F.copy()
    k = 0
    c1, c2 = math.inf, inf_norm(F)

    while c1 + c2 > tol * inf_norm(E):
        k += 1
        if k > cap:
            raise SeriesNonConvergenceError(stage, cap)

        c1 = c2
        F = apply_X(F) / k
        _check_finite(F, stage, k)

        c2 = inf_norm(F)
        E = E + F

    return E, k

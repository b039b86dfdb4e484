"""Closed-form arithmetic for the coefficient matrix J = [0] + J_p(0)."""

from dataclasses import dataclass

import numpy as np

from .errors import RequestError


@dataclass(frozen=True)
class NilpotentCoeffMatrix:
    """The (p+1) x (p+1) matrix with ones on the superdiagonal of its trailing p x p block."""

    p: int

    def __post_init__(self):
        if self.p < 0:
            raise RequestError(f"Order p must be nonnegative, got {self.p}")

    @property
    def size(self) -> int:
        return self.p + 1

    def array(self) -> np.ndarray:
        J = np.zeros((self.size, self.size))
        for i in range(1, self.p):
            J[i, i + 1] = 1.0
        return J


def _exp_nilpotent(N: np.ndarray, index: int) -> np.ndarray:
    """exp(N) as the finite sum of N^k/k!, k < index, for N with N^index = 0."""
    result = np.eye(N.shape[0])
    term = np.eye(N.shape[0])

    for k in range(1, index):
        term = term @ N / k
        if not term.any():
            break
        result = result + term

    return result


def exp_scaled(J: NilpotentCoeffMatrix, c: float) -> np.ndarray:
    """exp(cJ), exact up to the rounding of the finitely many terms."""
    return _exp_nilpotent(c * J.array(), J.size)


def _check_diagonal(name: str, M: np.ndarray) -> np.ndarray:
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if M.shape[0] != M.shape[1] or np.count_nonzero(M - np.diag(np.diag(M))):
        raise RequestError(f"{name} must be a square diagonal matrix")
    return M


def kron_exp(J: NilpotentCoeffMatrix, Delta: np.ndarray, s: float) -> np.ndarray:
    """exp(J kron Delta / s); J kron Delta inherits nilpotency from J."""
    Delta = _check_diagonal("Delta", Delta)
    if not s > 0:
        raise RequestError(f"Scaling must be positive, got {s}")

    return _exp_nilpotent(np.kron(J.array(), Delta / s), J.size)


def kron_shifted(J: NilpotentCoeffMatrix, Delta: np.ndarray, T: np.ndarray, xi: float) -> np.ndarray:
    """J kron Delta - xi (I_{p+1} kron T); upper triangular with diagonal -xi*t_i."""
    Delta = _check_diagonal("Delta", Delta)
    T = _check_diagonal("T", T)
    if Delta.shape != T.shape:
        raise RequestError(f"Delta and T must have the same size, got {Delta.shape} and {T.shape}")

    return np.kron(J.array(), Delta) - xi * np.kron(np.eye(J.size), T)

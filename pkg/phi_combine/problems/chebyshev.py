"""Chebyshev spectral collocation of the one-dimensional Laplacian."""

import numpy as np

from phi_combine.core.constants import CHEBYSHEV_L, CHEBYSHEV_N
from phi_combine.core.errors import RequestError
from phi_combine.operators.dense import DenseOperator


def chebyshev_nodes(N: int, L: float = CHEBYSHEV_L) -> np.ndarray:
    """x_j = (cos(pi j/N) + 1) L/2 for j = 0..N, running from L down to 0."""
    return (np.cos(np.pi * np.arange(N + 1) / N) + 1.0) * (L / 2.0)


def chebyshev_differentiation(N: int, L: float = CHEBYSHEV_L) -> np.ndarray:
    """First-derivative collocation matrix on the nodes of [0, L].

    Rows sum to zero; the diagonal is fixed by the negative-sum trick.
    """
    x = chebyshev_nodes(N, L)
    c = np.ones(N + 1)
    c[0] = c[-1] = 2.0
    c *= (-1.0) ** np.arange(N + 1)

    dX = x[:, None] - x[None, :]
    D = np.outer(c, 1.0 / c) / (dX + np.eye(N + 1))
    return D - np.diag(D.sum(axis=1))


def chebyshev_laplacian(N: int = CHEBYSHEV_N, L: float = CHEBYSHEV_L) -> np.ndarray:
    """(N-1) x (N-1) Dirichlet Laplacian (2/L)^2 D^2 with boundary rows and columns removed."""
    if N < 4:
        raise RequestError(f"Chebyshev collocation needs N >= 4, got {N}")
    if not L > 0:
        raise RequestError(f"Interval length must be positive, got {L}")

    D = chebyshev_differentiation(N, L)
    D2 = (2.0 / L) ** 2 * (D @ D)
    return D2[1:N, 1:N]


def chebyshev_operator(N: int = CHEBYSHEV_N, L: float = CHEBYSHEV_L) -> DenseOperator:
    return DenseOperator(chebyshev_laplacian(N, L), label=f"chebyshev(N={N})")

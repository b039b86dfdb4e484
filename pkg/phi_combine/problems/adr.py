"""Two-dimensional advection-diffusion-reaction problem on the unit square.

Unknowns sit on the uniform nodes x_i = i/Nx, i = 0..Nx-1 (likewise in y), so the
Neumann edges x = 0 and y = 0 are part of the grid and the Dirichlet edges x = 1 and
y = 1 are eliminated. Grid vectors are ordered with x running fastest, index j*Nx + i.
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from phi_combine.core.constants import ADR_ADVECTION, ADR_EPSILON, ADR_GRID, ADR_REACTION, ADR_T_END
from phi_combine.core.errors import RequestError
from phi_combine.operators.sparse import SparseOperator

from .base import SemilinearProblem

MIN_GRID = 8


def _laplacian_1d(N: int) -> sp.csr_matrix:
    """Second difference with a mirrored ghost at node 0 and u_N = 0."""
    h = 1.0 / N
    L = sp.diags([np.ones(N - 1), -2.0 * np.ones(N), np.ones(N - 1)], [-1, 0, 1], format="lil")
    L[0, 1] = 2.0
    return sp.csr_matrix(L) / h**2


def _central_1d(N: int) -> sp.csr_matrix:
    """Central first difference; the mirrored ghost cancels the derivative at node 0."""
    h = 1.0 / N
    D = sp.diags([-np.ones(N - 1), np.ones(N - 1)], [-1, 1], format="lil")
    D[0, 1] = 0.0
    return sp.csr_matrix(D) / (2.0 * h)


def grid_nodes(N: int) -> np.ndarray:
    return np.arange(N) / N


@dataclass
class ADRProblem(SemilinearProblem):
    """u_t = eps Lap(u) - alpha (u_x + u_y) + gamma u (u - 1/2)(1 - u)."""

    nx: int
    ny: int
    epsilon: float
    alpha_adv: float
    gamma: float

    def reaction(self, u: np.ndarray) -> np.ndarray:
        return self.gamma * u * (u - 0.5) * (1.0 - u)

    def as_grid(self, u: np.ndarray) -> np.ndarray:
        """Reshape a grid vector to (ny, nx)."""
        return np.asarray(u).reshape(self.ny, self.nx)


def adr_matrix(nx: int, ny: int, epsilon: float, alpha_adv: float) -> sp.csr_matrix:
    """eps (I kron Lx + Ly kron I) - alpha (I kron Dx + Dy kron I)."""
    Ix, Iy = sp.identity(nx, format="csr"), sp.identity(ny, format="csr")

    laplacian = sp.kron(Iy, _laplacian_1d(nx)) + sp.kron(_laplacian_1d(ny), Ix)
    advection = sp.kron(Iy, _central_1d(nx)) + sp.kron(_central_1d(ny), Ix)

    return sp.csr_matrix(epsilon * laplacian - alpha_adv * advection)


def initial_condition(nx: int, ny: int) -> np.ndarray:
    """256 x^2 y^2 (1-x)^2 (1-y)^2 on the grid, flattened x-fastest."""
    X, Y = np.meshgrid(grid_nodes(nx), grid_nodes(ny))
    return (256.0 * X**2 * Y**2 * (1.0 - X) ** 2 * (1.0 - Y) ** 2).ravel()


def adr_build(
    nx: int = ADR_GRID,
    ny: int = None,
    epsilon: float = ADR_EPSILON,
    alpha_adv: float = ADR_ADVECTION,
    gamma: float = ADR_REACTION,
    t_end: float = ADR_T_END,
) -> ADRProblem:
    """Semidiscretize the ADR problem with second-order central differences."""
    ny = ny or nx
    if nx < MIN_GRID or ny < MIN_GRID:
        raise RequestError(f"ADR grid must be at least {MIN_GRID} x {MIN_GRID}, got {nx} x {ny}")

    operator = SparseOperator(adr_matrix(nx, ny, epsilon, alpha_adv), label=f"adr({nx}x{ny})")

    return ADRProblem(
        operator=operator,
        u0=initial_condition(nx, ny),
        t_end=t_end,
        nx=nx,
        ny=ny,
        epsilon=epsilon,
        alpha_adv=alpha_adv,
        gamma=gamma,
    )

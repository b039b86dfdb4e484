"""Low-rank test operators A = U M U^T on an orthonormal DCT-II basis."""

from dataclasses import dataclass

import numpy as np

from phi_combine.core.constants import LOWRANK_ORDERS, LOWRANK_SIZES
from phi_combine.core.errors import RequestError
from phi_combine.operators.lowrank import LowRankOperator

# Rate constants of the three-species core
M3_A = 2e10
M3_B = 4e8 / 6
M3_C = 200.0 / 3
M3_D = 3.0
M3_E = 1e-8


def _core_m1() -> np.ndarray:
    return np.array([[0.0, 10.0], [-10.0, 0.0]])


def _core_m2() -> np.ndarray:
    return np.array([[-1.0, 1e5], [0.0, -10.0]])


def _core_m3() -> np.ndarray:
    return np.array(
        [
            [0.0, M3_E, 0.0],
            [-(M3_A + M3_B), -M3_D, M3_A],
            [M3_C, 0.0, -M3_C],
        ]
    )


CORES = {"M1": _core_m1, "M2": _core_m2, "M3": _core_m3}


@dataclass(frozen=True)
class LowRankCore:
    """A named r x r core with the dimension and combination order it is tested at."""

    name: str
    core: np.ndarray
    n: int
    p: int

    @property
    def rank(self) -> int:
        return self.core.shape[0]


def make_core(name: str, n: int = None) -> LowRankCore:
    """Build core M1, M2 or M3 at its default size unless n is given."""
    if name not in CORES:
        raise RequestError(f"Unknown low-rank core: {name}. Supported cores: {', '.join(CORES)}")

    n = n or LOWRANK_SIZES[name]
    core = CORES[name]()
    if n < core.shape[0]:
        raise RequestError(f"Dimension {n} is smaller than the rank of {name}")

    return LowRankCore(name=name, core=core, n=n, p=LOWRANK_ORDERS[name])


def dct_basis(n: int, r: int) -> np.ndarray:
    """First r orthonormal DCT-II vectors: U_ik = sqrt(2/n) a_k cos(pi (i + 1/2) k / n)."""
    if not 1 <= r <= n:
        raise RequestError(f"Need 1 <= r <= n, got r={r}, n={n}")

    i = np.arange(n)[:, None] + 0.5
    k = np.arange(r)[None, :]
    scale = np.where(k == 0, 1.0 / np.sqrt(2.0), 1.0)

    return np.sqrt(2.0 / n) * scale * np.cos(np.pi * i * k / n)


def lowrank_operator(core: LowRankCore) -> tuple[LowRankOperator, np.ndarray, np.ndarray]:
    """Matrix-free A = U W^T with W = U M^T, returned with U and W."""
    U = dct_basis(core.n, core.rank)
    W = U @ core.core.T

    op = LowRankOperator(U, W, label=f"lowrank-{core.name}(n={core.n})")
    return op, U, W

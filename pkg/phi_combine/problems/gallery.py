"""A fixed gallery of small dense test matrices.

Every entry is deterministic: random members draw from a generator seeded with
GALLERY_SEED and their own position in the gallery.
"""

from typing import Callable

import numpy as np
import scipy.linalg

from phi_combine.core.constants import DEFAULT_SEED
from phi_combine.core.errors import RequestError
from phi_combine.operators.dense import DenseOperator

from .chebyshev import chebyshev_laplacian

GALLERY_SEED = DEFAULT_SEED
MAX_GALLERY_DIM = 40

MatrixBuilder = Callable[[np.random.Generator], np.ndarray]


def _jordan(n: int, eigenvalue: float, coupling: float = 1.0) -> np.ndarray:
    return eigenvalue * np.eye(n) + coupling * np.eye(n, k=1)


def _random(n: int, scale: float = 1.0) -> MatrixBuilder:
    return lambda rng: scale * rng.standard_normal((n, n)) / np.sqrt(n)


def _negative_definite(rng: np.random.Generator) -> np.ndarray:
    B = rng.standard_normal((30, 30))
    return -(B.T @ B) / 30 - np.eye(30)


def _skew(rng: np.random.Generator) -> np.ndarray:
    B = rng.standard_normal((20, 20)) / np.sqrt(20)
    return B - B.T


def _triangular(rng: np.random.Generator) -> np.ndarray:
    return np.triu(rng.standard_normal((16, 16))) - 2.0 * np.eye(16)


def _rank_one(rng: np.random.Generator) -> np.ndarray:
    u, v = rng.standard_normal(25), rng.standard_normal(25)
    return np.outer(u, v) / 25


def _grcar(n: int) -> np.ndarray:
    column = np.zeros(n)
    column[:2] = [1.0, -1.0]
    row = np.zeros(n)
    row[:4] = 1.0
    return scipy.linalg.toeplitz(column, row)


def _companion() -> np.ndarray:
    return scipy.linalg.companion(np.poly([-0.5, -1.0, -1.5, -2.0]))


def _rotation_blocks() -> np.ndarray:
    blocks = [np.array([[0.0, w], [-w, 0.0]]) for w in (0.5, 1.0, 2.0, 3.0)]
    return scipy.linalg.block_diag(*blocks)


def _minij(n: int) -> np.ndarray:
    i = np.arange(1, n + 1)
    return -np.minimum.outer(i, i) / n


# Name -> builder; builders that ignore the generator are deterministic by construction
GALLERY: dict[str, MatrixBuilder] = {
    "identity": lambda rng: np.eye(10),
    "zero": lambda rng: np.zeros((8, 8)),
    "jordan-nilpotent": lambda rng: _jordan(6, 0.0),
    "jordan-stable": lambda rng: _jordan(12, -1.0, 2.0),
    "random-20": _random(20),
    "random-40": _random(40),
    "random-scaled": _random(20, scale=4.0),
    "negative-definite": _negative_definite,
    "skew": _skew,
    "triangular": _triangular,
    "rank-one": _rank_one,
    "diagonal-spread": lambda rng: np.diag(np.linspace(-10.0, 1.0, 20)),
    "rotations": lambda rng: _rotation_blocks(),
    "grcar": lambda rng: _grcar(20) / 2.0,
    "companion": lambda rng: _companion(),
    "hilbert": lambda rng: -10.0 * scipy.linalg.hilbert(12),
    "pascal": lambda rng: -scipy.linalg.pascal(6) / 50.0,
    "circulant": lambda rng: scipy.linalg.circulant(np.array([-2.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0])),
    "minij": lambda rng: _minij(24),
    "chebyshev-12": lambda rng: chebyshev_laplacian(12),
}


def gallery_names() -> list[str]:
    return list(GALLERY)


def gallery_matrix(name: str) -> np.ndarray:
    """Entries of one gallery member."""
    if name not in GALLERY:
        raise RequestError(f"Unknown gallery matrix: {name}")

    rng = np.random.default_rng([GALLERY_SEED, list(GALLERY).index(name)])
    return np.asarray(GALLERY[name](rng), dtype=float)


def gallery_operator(name: str) -> DenseOperator:
    return DenseOperator(gallery_matrix(name), label=f"gallery-{name}")

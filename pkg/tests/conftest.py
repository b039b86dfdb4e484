import numpy as np
import pytest

from phi_combine.operators.dense import DenseOperator
from phi_combine.utils import logger

# Gallery members with moderate norms, used where the accuracy bound must stay tight
WELL_CONDITIONED = ["random-20", "random-40", "negative-definite", "skew", "rotations", "jordan-nilpotent", "rank-one", "grcar"]


@pytest.fixture(autouse=True)
def quiet_logger():
    logger.set_quiet(True)
    yield
    logger.set_quiet(False)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_dense(rng: np.random.Generator, n: int, norm: float = None) -> np.ndarray:
    """Gaussian n x n matrix, rescaled to the given 2-norm when requested."""
    A = rng.standard_normal((n, n)) / np.sqrt(n)
    if norm is not None:
        A *= norm / np.linalg.norm(A, 2)
    return A


@pytest.fixture
def dense_op(rng):
    return DenseOperator(random_dense(rng, 8, norm=2.0), label="random-8")

import numpy as np
import pytest
import scipy.sparse as sp

import phi_combine.problems  # noqa: F401
from phi_combine.core.errors import OperatorError
from phi_combine.core.taylor import CountingOperator
from phi_combine.operators import DenseOperator, LowRankOperator, SparseOperator, materialize, resolve_source, shifted_apply
from phi_combine.operators.matrix_market import write_matrix_market
from phi_combine.operators.registry import available_sources, get_operator


def test_dense_operator_rejects_bad_entries():
    with pytest.raises(OperatorError):
        DenseOperator(np.ones((2, 3)))
    with pytest.raises(OperatorError):
        DenseOperator(np.array([[1.0, np.nan], [0.0, 1.0]]))


def test_dense_operator_is_immutable(dense_op):
    with pytest.raises(ValueError):
        dense_op.entries[0, 0] = 1.0


def test_apply_preserves_shape(dense_op, rng):
    x = rng.standard_normal(dense_op.dim)
    X = rng.standard_normal((dense_op.dim, 3))

    assert dense_op.apply(x).shape == (dense_op.dim,)
    assert dense_op.apply(X).shape == (dense_op.dim, 3)
    np.testing.assert_allclose(dense_op.apply(X)[:, 1], dense_op.apply(X[:, 1]), rtol=1e-14)


def test_apply_rejects_wrong_rows(dense_op):
    with pytest.raises(OperatorError):
        dense_op.apply(np.ones(dense_op.dim + 1))


def test_shifted_apply(dense_op, rng):
    X = rng.standard_normal((dense_op.dim, 2))

    assert np.array_equal(shifted_apply(dense_op, 0.0, X), dense_op.apply(X))
    np.testing.assert_allclose(shifted_apply(dense_op, 1.5, X), dense_op.entries @ X - 1.5 * X, rtol=1e-14)

    with pytest.raises(OperatorError):
        shifted_apply(dense_op, np.inf, X)


def test_sparse_and_lowrank_match_dense(rng):
    A = sp.random(30, 30, density=0.2, random_state=7, format="csr")
    op = SparseOperator(A)
    np.testing.assert_allclose(materialize(op), A.toarray(), atol=1e-15)

    U, W = rng.standard_normal((30, 3)), rng.standard_normal((30, 3))
    low = LowRankOperator(U, W)
    assert low.rank == 3
    np.testing.assert_allclose(materialize(low), U @ W.T, rtol=1e-13, atol=1e-13)

    with pytest.raises(OperatorError):
        LowRankOperator(U, W[:, :2])


def test_counting_operator(dense_op):
    counter = CountingOperator(dense_op)
    counter.apply(np.ones(dense_op.dim))
    counter.apply(np.ones((dense_op.dim, 4)))

    assert counter.applies == 2
    assert counter.matvecs == 5


def test_registry_sources(tmp_path):
    sources = available_sources()
    assert {"mtx", "chebyshev", "adr", "lowrank-M1", "gallery-identity"} <= set(sources)

    assert resolve_source("chebyshev", 16).dim == 15
    assert resolve_source("adr", 10).dim == 100
    assert resolve_source("lowrank-M2", 64).dim == 64

    path = write_matrix_market(tmp_path / "small.mtx", np.diag([1.0, 2.0, 3.0]))
    assert resolve_source(path.as_posix()).dim == 3

    with pytest.raises(ValueError):
        get_operator("no-such-source")


def _operator(kind: str, rng):
    if kind == "dense":
        return DenseOperator(rng.standard_normal((12, 12)))
    if kind == "sparse":
        return SparseOperator(sp.random(12, 12, density=0.3, format="csr", random_state=rng))
    U, _ = np.linalg.qr(rng.standard_normal((12, 3)))
    return LowRankOperator(U, rng.standard_normal((12, 3)))


@pytest.mark.parametrize("kind", ["dense", "sparse", "lowrank"])
def test_operators_are_linear_and_deterministic(kind, rng):
    op = _operator(kind, rng)
    x, y = rng.standard_normal(12), rng.standard_normal(12)
    a, b = 1.75, -0.3

    np.testing.assert_allclose(op.apply(a * x + b * y), a * op.apply(x) + b * op.apply(y), rtol=1e-13, atol=1e-13)
    assert np.array_equal(op.apply(x), op.apply(x))
    np.testing.assert_allclose(op.apply(np.stack([x, y], axis=1))[:, 1], op.apply(y), rtol=1e-14, atol=1e-14)

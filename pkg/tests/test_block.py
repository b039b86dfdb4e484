import numpy as np
import pytest
import scipy.linalg

from phi_combine.core.block import block_series_direct, classical_combination, combine_block, fixed_order_actions, phi_coefficients
from phi_combine.core.errors import RequestError
from phi_combine.core.params import select_parameters
from phi_combine.core.schemas import BlockPhiRequest, PhiRequest
from phi_combine.core.single import combine
from phi_combine.operators.dense import DenseOperator
from phi_combine.reference import dense_phi, reference_w

from .conftest import random_dense


def relerr(W, ref):
    return np.linalg.norm(W - ref, 1) / np.linalg.norm(ref, 1)


def test_phi_coefficients():
    np.testing.assert_allclose(phi_coefficients(0, 3), [1.0, 1.0, 0.5, 1.0 / 6.0], rtol=1e-15)
    np.testing.assert_allclose(phi_coefficients(2, 1), [0.5, 1.0 / 6.0], rtol=1e-15)


def test_block_agrees_with_single_evaluations():
    rng = np.random.default_rng(11)

    for _ in range(50):
        n = int(rng.integers(4, 12))
        r = int(rng.integers(1, 5))
        p = int(rng.integers(0, 6))

        op = DenseOperator(random_dense(rng, n, norm=2.0))
        params = select_parameters(op)
        V = rng.standard_normal((n, p + 1))
        ts = rng.uniform(0.1, 1.0, r)
        alphas = rng.uniform(-1.5, 1.5, r)

        W = combine_block(op, BlockPhiRequest(t=ts, alpha=alphas, V=V, params=params)).W
        for i in range(r):
            w = combine(op, PhiRequest(t=ts[i], alpha=alphas[i], V=V, params=params)).w
            assert relerr(W[:, i], w) <= 1e-11


def test_block_matches_reference(rng):
    A = random_dense(rng, 10, norm=4.0)
    V = rng.standard_normal((10, 4))
    ts = np.array([0.1, 0.5, 1.0])
    alphas = np.array([1.0, -0.5, 2.0])

    W = combine_block(DenseOperator(A), BlockPhiRequest(t=ts, alpha=alphas, V=V, params=select_parameters(DenseOperator(A)))).W
    for i in range(3):
        assert relerr(W[:, i], reference_w(A, V, ts[i], alphas[i])) <= 1e-11


def test_single_abscissa_p_zero(rng):
    A = random_dense(rng, 7, norm=3.0)
    v = rng.standard_normal(7)

    W = combine_block(DenseOperator(A), BlockPhiRequest(t=[0.7], alpha=[1.0], V=v, params=select_parameters(DenseOperator(A)))).W
    assert W.shape == (7, 1)
    np.testing.assert_allclose(W[:, 0], scipy.linalg.expm(0.7 * A) @ v, rtol=1e-12, atol=1e-14)


def test_shared_scaling_and_stats(rng):
    op = DenseOperator(random_dense(rng, 8, norm=5.0))
    params = select_parameters(op)
    ts = np.array([0.2, 2.0])

    stats = combine_block(op, BlockPhiRequest(t=ts, alpha=np.ones(2), V=rng.standard_normal((8, 3)), params=params)).stats
    assert stats.evaluator_calls == 1
    assert stats.s_effective == params.effective_scaling_block(ts) == params.effective_scaling(2.0)
    assert len(stats.series_lens_F) == stats.s_effective - 1
    assert stats.matvecs >= 2 * stats.applies - 1


def test_classical_combination_uses_alpha_equal_t(rng):
    A = random_dense(rng, 9, norm=3.0)
    op = DenseOperator(A)
    V = rng.standard_normal((9, 3))
    ts = np.array([0.25, 0.75])

    W = classical_combination(op, ts, V, select_parameters(op))
    for i, t in enumerate(ts):
        assert relerr(W[:, i], reference_w(A, V, t, alpha=t)) <= 1e-11


@pytest.mark.parametrize("k", [0, 1, 3])
@pytest.mark.parametrize("direct", [False, True])
def test_fixed_order_actions(rng, k, direct):
    A = random_dense(rng, 8, norm=1.0)
    op = DenseOperator(A)
    v = rng.standard_normal(8)
    ts = np.array([0.2, 0.6, 1.0])

    W = fixed_order_actions(op, k, ts, v, select_parameters(op), direct=direct)
    for i, t in enumerate(ts):
        expected = dense_phi(A, t, k)[k] @ v
        assert relerr(W[:, i], expected) <= 1e-11


def test_direct_series_matches_scaled_evaluator(rng):
    A = random_dense(rng, 6, norm=0.5)
    op = DenseOperator(A)
    params = select_parameters(op)
    req = BlockPhiRequest(t=np.array([0.3, 1.0]), alpha=np.array([1.0, 0.5]), V=rng.standard_normal((6, 3)), params=params)

    assert relerr(block_series_direct(op, req), combine_block(op, req).W) <= 1e-12


def test_block_request_validation(dense_op):
    params = select_parameters(dense_op)
    V = np.ones((8, 2))

    with pytest.raises(RequestError):
        BlockPhiRequest(t=[], alpha=[], V=V, params=params)
    with pytest.raises(RequestError):
        BlockPhiRequest(t=[0.1, 0.2], alpha=[1.0], V=V, params=params)
    with pytest.raises(RequestError):
        BlockPhiRequest(t=[0.1, np.nan], alpha=[1.0, 1.0], V=V, params=params)

    req = BlockPhiRequest(t=0.5, alpha=2.0, V=V, params=params)
    assert (req.r, req.p) == (1, 1)


def test_permuting_abscissae_permutes_columns(rng):
    op = DenseOperator(random_dense(rng, 8, norm=3.0))
    params = select_parameters(op)
    V = rng.standard_normal((8, 3))
    ts, alphas = np.array([0.2, 0.9, 0.5]), np.array([1.0, -0.3, 2.0])
    order = np.array([2, 0, 1])

    W = combine_block(op, BlockPhiRequest(t=ts, alpha=alphas, V=V, params=params)).W
    W_perm = combine_block(op, BlockPhiRequest(t=ts[order], alpha=alphas[order], V=V, params=params)).W
    np.testing.assert_allclose(W_perm, W[:, order], rtol=1e-13, atol=1e-15)


def test_equal_nodes_give_equal_columns(rng):
    op = DenseOperator(random_dense(rng, 6, norm=2.0))
    W = combine_block(op, BlockPhiRequest(t=np.ones(3), alpha=np.full(3, 0.4), V=rng.standard_normal((6, 3)), params=select_parameters(op))).W

    np.testing.assert_allclose(W[:, 1], W[:, 0], rtol=1e-14)
    np.testing.assert_allclose(W[:, 2], W[:, 0], rtol=1e-14)

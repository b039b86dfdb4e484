import math
from dataclasses import replace

import numpy as np
import pytest
import scipy.linalg
from scipy.special import factorial

from phi_combine.bench.common import conditioning_bound
from phi_combine.core.constants import SERIES_CAP
from phi_combine.core.errors import RequestError, SeriesDivergenceError, SeriesNonConvergenceError, ShiftOverflowError
from phi_combine.core.params import build_power_basis, objective, scaling_from_objective, select_parameters
from phi_combine.core.schemas import PhiRequest
from phi_combine.core.nilpotent import NilpotentCoeffMatrix, exp_scaled
from phi_combine.core.single import combine, exp_action, permute_block, phi_action, recover, series_S, undo_factor
from phi_combine.core.taylor import block_series, exp_sweep
from phi_combine.operators.dense import DenseOperator
from phi_combine.problems.gallery import gallery_operator
from phi_combine.reference import dense_phi, reference_w

from .conftest import WELL_CONDITIONED, random_dense


def relerr(w, ref):
    return np.linalg.norm(w - ref, 1) / np.linalg.norm(ref, 1)


def evaluate(op, t, alpha, V, params=None, tol=2.0**-53):
    params = params or select_parameters(op, tol=tol)
    return combine(op, PhiRequest(t=t, alpha=alpha, V=V, params=params, tol=tol))


def test_permute_block():
    V = np.arange(12.0).reshape(3, 4)
    assert np.array_equal(permute_block(V), V[:, [0, 3, 2, 1]])
    assert np.array_equal(permute_block(V[:, :1]), V[:, :1])


@pytest.mark.parametrize("t, alpha", [(1.0, 1.0), (0.5, 0.5), (2.0, 0.3), (0.25, -1.5)])
def test_matches_augmented_reference(rng, t, alpha):
    A = random_dense(rng, 8, norm=5.0)
    V = rng.standard_normal((8, 4))

    result = evaluate(DenseOperator(A), t, alpha, V)
    assert relerr(result.w, reference_w(A, V, t, alpha)) <= 1e-11


def test_parts_of_the_result(rng):
    A = random_dense(rng, 10, norm=3.0)
    V = rng.standard_normal((10, 3))

    result = evaluate(DenseOperator(A), 0.8, 2.0, V)
    np.testing.assert_allclose(result.exp_v0, scipy.linalg.expm(0.8 * A) @ V[:, 0], rtol=1e-12, atol=1e-14)
    np.testing.assert_allclose(result.w, result.exp_v0 + 2.0 * result.tail, rtol=1e-15)

    # The tail equals the combination with v_0 = 0, divided by alpha
    tail_only = V.copy()
    tail_only[:, 0] = 0.0
    np.testing.assert_allclose(2.0 * result.tail, reference_w(A, tail_only, 0.8, 2.0), rtol=1e-11, atol=1e-14)


def test_zero_time_is_a_weighted_sum(rng):
    A = random_dense(rng, 6, norm=50.0)
    V = rng.standard_normal((6, 5))
    alpha = 0.7

    result = evaluate(DenseOperator(A), 0.0, alpha, V)
    expected = V @ (alpha ** np.arange(5) / factorial(np.arange(5)))

    assert result.stats.s_effective == 1
    assert result.stats.series_lens_F == []
    np.testing.assert_allclose(result.w, expected, rtol=1e-14, atol=1e-15)


def test_nilpotent_is_exact():
    op = DenseOperator(np.array([[0.0, 1.0], [0.0, 0.0]]))
    result = evaluate(op, 1.0, 1.0, np.array([0.0, 1.0]))

    assert np.array_equal(result.w, np.array([1.0, 1.0]))


def test_identity():
    v = np.linspace(-1.0, 1.0, 10)
    result = evaluate(DenseOperator(np.eye(10)), 1.0, 1.0, v)

    np.testing.assert_allclose(result.w, math.e * v, rtol=1e-13)


def test_p_zero_is_the_exponential(rng):
    A = random_dense(rng, 12, norm=4.0)
    v = rng.standard_normal(12)
    params = select_parameters(DenseOperator(A))

    w = exp_action(DenseOperator(A), 1.5, v, params)
    np.testing.assert_allclose(w, scipy.linalg.expm(1.5 * A) @ v, rtol=1e-12, atol=1e-13)


def test_phi_action_matches_dense_phi(rng):
    A = random_dense(rng, 8, norm=2.0)
    op = DenseOperator(A)
    params = select_parameters(op)
    v1, v2 = rng.standard_normal(8), rng.standard_normal(8)

    phis = dense_phi(A, 0.5, 2)
    expected = phis[1] @ v1 + phis[2] @ v2

    assert relerr(phi_action(op, 0.5, np.column_stack([v1, v2]), params), expected) <= 1e-12

    with pytest.raises(RequestError):
        phi_action(op, 0.5, np.zeros((8, 0)), params)


def test_linearity(rng):
    A = random_dense(rng, 10, norm=4.0)
    op = DenseOperator(A)
    params = select_parameters(op)
    V1, V2 = rng.standard_normal((10, 3)), rng.standard_normal((10, 3))

    w = evaluate(op, 1.0, 1.0, V1 + V2, params).w
    w_sum = evaluate(op, 1.0, 1.0, V1, params).w + evaluate(op, 1.0, 1.0, V2, params).w
    assert relerr(w, w_sum) <= 1e-12


def test_doubling_the_scaling(rng):
    A = random_dense(rng, 10, norm=4.0)
    op = DenseOperator(A)
    params = select_parameters(op)
    V = rng.standard_normal((10, 4))

    doubled = replace(params, s=2 * params.s)
    a, b = evaluate(op, 1.0, 1.0, V, params), evaluate(op, 1.0, 1.0, V, doubled)

    assert b.stats.s_effective >= a.stats.s_effective
    assert relerr(a.w, b.w) <= 1e-11


def test_permutation_equivariance(rng):
    A = random_dense(rng, 9, norm=3.0)
    V = rng.standard_normal((9, 3))
    P = np.eye(9)[rng.permutation(9)]

    params = select_parameters(DenseOperator(A))
    w = evaluate(DenseOperator(A), 1.0, 1.0, V, params).w
    w_perm = evaluate(DenseOperator(P @ A @ P.T), 1.0, 1.0, P @ V, params).w
    assert relerr(w_perm, P @ w) <= 1e-12


@pytest.mark.parametrize("name", WELL_CONDITIONED)
def test_perturbed_shift_stays_accurate(name, rng):
    op = gallery_operator(name)
    params = select_parameters(op)
    basis = build_power_basis(op)

    xi = params.xi + 1.0
    s = max(scaling_from_objective(basis.s0, objective(basis, xi), params.m, params.tol), params.s)
    shifted = replace(params, xi=xi, s=s)

    V = rng.standard_normal((op.dim, 4))
    result = evaluate(op, 1.0, 1.0, V, shifted)
    assert relerr(result.w, reference_w(op.entries, V, 1.0)) <= conditioning_bound(op.entries)


def test_run_record(rng):
    op = DenseOperator(random_dense(rng, 8, norm=6.0))
    params = select_parameters(op)
    result = evaluate(op, 3.0, 1.0, rng.standard_normal((8, 3)), params)
    stats = result.stats

    assert stats.evaluator_calls == 1
    assert stats.s_effective == params.effective_scaling(3.0)
    assert len(stats.series_lens_F) == stats.s_effective - 1
    assert stats.series_len_S >= 2
    assert stats.applies == stats.series_len_S + sum(stats.series_lens_F)


def test_request_validation(dense_op):
    params = select_parameters(dense_op)
    with pytest.raises(RequestError):
        PhiRequest(t=1.0, alpha=1.0, V=np.full((8, 2), np.nan), params=params)
    with pytest.raises(RequestError):
        PhiRequest(t=np.inf, alpha=1.0, V=np.ones((8, 2)), params=params)
    with pytest.raises(RequestError):
        PhiRequest(t=1.0, alpha=1.0, V=np.ones((8, 2)), params=params, tol=0.0)


def test_unrepresentable_undo_factor():
    with pytest.raises(ShiftOverflowError):
        undo_factor(1.0, 1e6, 1)

    assert undo_factor(np.array([0.0, 1.0]), 2.0, 2) == pytest.approx([1.0, math.e])


def test_series_caps_and_divergence():
    W = np.ones((3, 2))
    Y = np.zeros((2, 2))

    with pytest.raises(SeriesNonConvergenceError):
        block_series(lambda D: 10.0 * D, W, Y, 2.0**-53, cap=5)

    with pytest.raises(SeriesDivergenceError):
        block_series(lambda D: np.full_like(D, np.inf), W, Y, 2.0**-53, cap=SERIES_CAP)

    with pytest.raises(SeriesNonConvergenceError):
        exp_sweep(lambda X: 10.0 * X, W, 2.0**-53, cap=5)


def test_exp_sweep_sums_the_exponential():
    E, terms = exp_sweep(lambda X: 0.5 * X, np.ones((2, 1)), 2.0**-53, cap=100)

    np.testing.assert_allclose(E, math.exp(0.5), rtol=1e-15)
    assert terms < 30


@pytest.mark.parametrize("p", [1, 3])
def test_tracked_columns_match_the_full_recurrence(rng, p):
    A = random_dense(rng, 10, norm=4.0)
    op = DenseOperator(A)
    params = replace(select_parameters(op), s=3.0)
    V = rng.standard_normal((10, p + 1))
    t, alpha = 2.0, 0.7

    s = params.effective_scaling(t)
    xi = params.xi
    mu = float(undo_factor(t, xi, s))
    S, _ = series_S(op, t, s, xi, alpha, permute_block(V) * (mu / s))
    Jexp = exp_scaled(NilpotentCoeffMatrix(p), alpha / s)
    exp_v0, tail, sweeps = recover(op, t, s, xi, mu, S, Jexp, V[:, 0])

    # Every column advanced, with exp((t/s)(A - xi I)) formed densely
    E = scipy.linalg.expm((t / s) * (A - xi * np.eye(10)))
    F, SJ = S.copy(), S.copy()
    for _ in range(s - 1):
        SJ = SJ @ Jexp
        F = mu * E @ F + SJ

    assert len(sweeps) == s - 1 == 5
    assert relerr(exp_v0, t * A @ F[:, 0] + V[:, 0]) <= 1e-10
    assert relerr(tail, F[:, p]) <= 1e-11


def _replayed_stop(decay: np.ndarray, tol: float, first: int) -> int:
    """First term index k > first where the last two terms fall below tol times the partial sum."""
    terms = [decay ** (k - first) / math.factorial(k) for k in range(first, first + 200)]
    total = terms[0].copy()
    for i in range(1, len(terms)):
        total = total + terms[i]
        if np.max(np.abs(terms[i - 1])) + np.max(np.abs(terms[i])) <= tol * np.max(np.abs(total)):
            return first + i
    raise AssertionError("no stopping index")


@pytest.mark.parametrize("tol", [2.0**-53, 1e-10, 1e-4])
def test_series_stops_at_the_first_two_term_index(tol):
    decay = np.array([0.9, 0.5, 0.25, 0.1])
    W = np.ones((4, 1))

    _, terms = block_series(lambda D: decay[:, None] * D, W, np.zeros((1, 1)), tol, SERIES_CAP)
    assert terms == _replayed_stop(decay, tol, first=1)

    _, terms = exp_sweep(lambda F: decay[:, None] * F, W, tol, SERIES_CAP)
    assert terms == _replayed_stop(decay, tol, first=0)

"""Simultaneous evaluation of w_i = sum_j alpha_i^j phi_j(t_i A) v_j for i = 1..r.

Scalars t and alpha become diagonal matrices T and Delta. Column j*r + i of every
n x (p+1)r block belongs to vector slot j and abscissa i, so right multiplication
by I kron T is a per-column scaling and the coefficient matrix J kron Delta never
couples different abscissae.
"""

import math
from typing import Callable

import numpy as np
from scipy.special import gammaln

from phi_combine.operators.base import LinearOperator, shifted_apply

from .constants import DEFAULT_TOL, RECOVERY_CAP, SERIES_CAP
from .errors import SeriesDivergenceError, SeriesNonConvergenceError
from .nilpotent import NilpotentCoeffMatrix, kron_exp, kron_shifted
from .schemas import BlockPhiRequest, BlockPhiResult, RunRecord, ScalingShift
from .single import permute_block, undo_factor
from .taylor import block_series, counting, exp_sweep, inf_norm

CoefficientFn = Callable[[int, int], np.ndarray]


def combine_block(op: LinearOperator, req: BlockPhiRequest) -> BlockPhiResult:
    """Evaluate all r combinations with one shared scaling max(1, ceil(s max|t_i|))."""
    counter = counting(op)
    params = req.params
    r, p, xi = req.r, req.p, params.xi
    t, alpha = req.t, req.alpha
    v0 = req.V[:, 0]

    s = params.effective_scaling_block(t)
    mu = undo_factor(t, xi, s)

    # Replicate every column r times; copy i carries mu_i/s
    V = np.repeat(permute_block(req.V), r, axis=1) * np.tile(mu / s, p + 1)

    J = NilpotentCoeffMatrix(p)
    Y = kron_shifted(J, np.diag(alpha) / s, np.diag(t) / s, xi)
    column_times = np.tile(t / s, p + 1)

    S, series_len = block_series(lambda D: shifted_apply(counter, xi, D) * column_times, V, Y, req.tol, SERIES_CAP)

    # First and last n x r block columns
    blocks = 2 if p > 0 else 1
    F = np.concatenate([S[:, :r], S[:, p * r :]], axis=1) if p > 0 else S[:, :r].copy()
    F[:, :r] = counter.apply(F[:, :r]) * t + v0[:, None]

    Jexp = kron_exp(J, np.diag(alpha), s)
    sweep_times = np.tile(t / s, blocks)
    sweep_mu = np.tile(mu, blocks)

    sweep_lengths = []
    for _ in range(s - 1):
        E, terms = exp_sweep(lambda X: shifted_apply(counter, xi, X) * sweep_times, F, req.tol, RECOVERY_CAP)
        sweep_lengths.append(terms)

        E = E * sweep_mu
        S = S @ Jexp

        F = E
        if p > 0:
            F[:, r:] = E[:, r:] + S[:, p * r :]

    W = F[:, :r] + F[:, r:] * alpha if p > 0 else F[:, :r]

    stats = RunRecord(
        s_effective=s,
        series_len_S=series_len,
        series_lens_F=sweep_lengths,
        matvecs=counter.matvecs,
        applies=counter.applies,
        evaluator_calls=1,
    )
    return BlockPhiResult(W=W, stats=stats)


def phi_coefficients(j: int, p: int) -> np.ndarray:
    """Power-series coefficients a_{ij} = 1/(i+j)! of phi_0..phi_p at power j."""
    return np.exp(-gammaln(np.arange(p + 1) + j + 1))


def block_series_direct(op: LinearOperator, req: BlockPhiRequest, coeffs: CoefficientFn = phi_coefficients) -> np.ndarray:
    """G = sum_j A^j V D_j Gamma T^j, with D_j = diag(coeffs(j, p)) and Gamma = [alpha_k^i].

    Converges only when every t_k A lies inside the convergence region of every series;
    with large ||t A|| it runs into the term cap.
    """
    p, t = req.p, req.t
    gamma = req.alpha[None, :] ** np.arange(p + 1)[:, None]

    power = req.V.copy()
    G = power @ (coeffs(0, p)[:, None] * gamma)
    j = 0
    c1, c2 = math.inf, inf_norm(G)

    while c1 + c2 > req.tol * inf_norm(G):
        j += 1
        if j > SERIES_CAP:
            raise SeriesNonConvergenceError("direct series", SERIES_CAP)

        c1 = c2
        power = op.apply(power)
        term = (power @ (coeffs(j, p)[:, None] * gamma)) * t**j
        if not np.all(np.isfinite(term)):
            raise SeriesDivergenceError("direct series", j)

        c2 = inf_norm(term)
        G = G + term

    return G


def classical_combination(op: LinearOperator, ts, V: np.ndarray, params: ScalingShift, tol: float = DEFAULT_TOL) -> np.ndarray:
    """sum_j t_i^j phi_j(t_i A) v_j for every abscissa, the usual exponential-integrator stage form."""
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    return combine_block(op, BlockPhiRequest(t=ts, alpha=ts, V=V, params=params, tol=tol)).W


def fixed_order_actions(op: LinearOperator, k: int, ts, v_k: np.ndarray, params: ScalingShift, tol: float = DEFAULT_TOL, direct: bool = False) -> np.ndarray:
    """phi_k(t_i A) v_k for every abscissa, by zeroing every vector except v_k."""
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    V = np.zeros((len(v_k), k + 1))
    V[:, k] = v_k

    req = BlockPhiRequest(t=ts, alpha=np.ones_like(ts), V=V, params=params, tol=tol)
    if direct:
        return block_series_direct(op, req)

    return combine_block(op, req).W

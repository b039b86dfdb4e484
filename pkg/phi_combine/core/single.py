"""Evaluation of w = sum_j alpha^j phi_j(tA) v_j for a single (t, alpha) pair.

The operator is shifted by xi and scaled by the integer s_eff = max(1, ceil(|t| s)).
A block series S is summed once, then s_eff - 1 recovery sweeps advance only the
first and last columns of the scaled solution, each sweep undoing the shift by the
scalar mu = exp(t xi / s_eff).
"""

import math

import numpy as np

from phi_combine.operators.base import LinearOperator, shifted_apply

from .constants import DEFAULT_TOL, RECOVERY_CAP, SERIES_CAP
from .errors import RequestError, ShiftOverflowError
from .nilpotent import NilpotentCoeffMatrix, exp_scaled
from .schemas import PhiRequest, PhiResult, RunRecord, ScalingShift
from .taylor import block_series, counting, exp_sweep


def permute_block(V: np.ndarray) -> np.ndarray:
    """Reorder [v_0, v_1, ..., v_p] into [v_0, v_p, v_{p-1}, ..., v_1]."""
    return np.concatenate([V[:, :1], V[:, :0:-1]], axis=1)


def undo_factor(t, xi: float, s: int):
    """mu = exp(t xi / s), refusing values that are not representable."""
    with np.errstate(over="ignore"):
        mu = np.exp(np.asarray(t, dtype=float) * xi / s)

    if not np.all(np.isfinite(mu)) or not np.all(mu > 0):
        raise ShiftOverflowError(f"exp(t*xi/s) is not representable for xi={xi:.6g}, s={s}")

    return mu


def series_S(op: LinearOperator, t: float, s: int, xi: float, alpha: float, V: np.ndarray, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, int]:
    """Sum the scaled, shifted block series for one abscissa.

    Args:
        op: The operator A
        t: Abscissa
        s: Effective integer scaling
        xi: Spectral shift
        alpha: Polynomial weight
        V: Permuted block [v_0, v_p, ..., v_1], already multiplied by mu/s
        tol: Relative stopping tolerance

    Returns:
        S and the number of series terms
    """
    J = NilpotentCoeffMatrix(V.shape[1] - 1)
    Y = (alpha * J.array() - t * xi * np.eye(J.size)) / s

    return block_series(lambda D: (t / s) * shifted_apply(op, xi, D), V, Y, tol, SERIES_CAP)


def recover(
    op: LinearOperator,
    t: float,
    s: int,
    xi: float,
    mu: float,
    S: np.ndarray,
    Jexp: np.ndarray,
    v0: np.ndarray,
    tol: float = DEFAULT_TOL,
) -> tuple[np.ndarray, np.ndarray, list[int]]:
    """Run the s - 1 recovery sweeps on the first and last columns of S.

    Returns:
        exp(tA) v_0, the tail sum_{j>=1} alpha^(j-1) phi_j(tA) v_j, and the length of every sweep
    """
    p = S.shape[1] - 1
    tracked = [0, p] if p > 0 else [0]

    F = S[:, tracked].copy()
    F[:, 0] = t * op.apply(F[:, 0]) + v0

    sweep_lengths = []
    for _ in range(s - 1):
        E, terms = exp_sweep(lambda X: (t / s) * shifted_apply(op, xi, X), F, tol, RECOVERY_CAP)
        sweep_lengths.append(terms)

        # Undo spectral shift
        E = mu * E

        # Advance block series side
        S = S @ Jexp

        F = E
        if p > 0:
            F[:, 1] = E[:, 1] + S[:, p]

    tail = F[:, 1] if p > 0 else np.zeros_like(v0)
    return F[:, 0], tail, sweep_lengths


def combine(op: LinearOperator, req: PhiRequest) -> PhiResult:
    """Evaluate w = sum_{j=0}^p alpha^j phi_j(tA) v_j.

    The parameters in `req.params` are selected once per operator and may be reused
    for any t; the scaling grows to ceil(|t| s).
    """
    counter = counting(op)
    params = req.params
    t, alpha, xi = float(req.t), float(req.alpha), params.xi

    s = params.effective_scaling(t)
    mu = float(undo_factor(t, xi, s))

    V = permute_block(req.V) * (mu / s)
    S, series_len = series_S(counter, t, s, xi, alpha, V, req.tol)

    Jexp = exp_scaled(NilpotentCoeffMatrix(req.p), alpha / s)
    exp_v0, tail, sweep_lengths = recover(counter, t, s, xi, mu, S, Jexp, req.V[:, 0], req.tol)

    stats = RunRecord(
        s_effective=s,
        series_len_S=series_len,
        series_lens_F=sweep_lengths,
        matvecs=counter.matvecs,
        applies=counter.applies,
        evaluator_calls=1,
    )
    return PhiResult(w=exp_v0 + alpha * tail, exp_v0=exp_v0, tail=tail, stats=stats)


def exp_action(op: LinearOperator, t: float, v: np.ndarray, params: ScalingShift, tol: float = DEFAULT_TOL) -> np.ndarray:
    """exp(tA) v."""
    return combine(op, PhiRequest(t=t, alpha=1.0, V=np.asarray(v, dtype=float)[:, None], params=params, tol=tol)).w


def phi_action(op: LinearOperator, t: float, V_tail: np.ndarray, params: ScalingShift, tol: float = DEFAULT_TOL, alpha: float = 1.0) -> np.ndarray:
    """sum_{j=1}^p alpha^j phi_j(tA) v_j for V_tail = [v_1, ..., v_p], i.e. v_0 = 0."""
    V_tail = np.asarray(V_tail, dtype=float)
    if V_tail.ndim == 1:
        V_tail = V_tail[:, None]
    if V_tail.shape[1] < 1:
        raise RequestError("At least one vector v_1 is required")

    V = np.concatenate([np.zeros((V_tail.shape[0], 1)), V_tail], axis=1)
    return combine(op, PhiRequest(t=t, alpha=alpha, V=V, params=params, tol=tol)).w

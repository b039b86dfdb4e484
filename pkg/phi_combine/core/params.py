"""A-priori selection of the scaling parameter s and the spectral shift xi."""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import gammaln

from phi_combine.operators.base import LinearOperator, shifted_apply
from phi_combine.utils import logger

from .constants import (
    BRENT_MAXITER,
    BRENT_XTOL,
    DEFAULT_DEGREE,
    DEFAULT_DELTA,
    DEFAULT_TOL,
    MIN_ACCEPTED_POWERS,
    REFINE_MAXITER,
    REFINE_WIDTH,
    S_FLOOR,
    START_VECTOR_SEED,
)
from .errors import IllPosedOperatorError, RequestError
from .schemas import ScalingShift

G_MAX = math.log(np.finfo(float).max)
G_MIN = math.log(np.finfo(float).tiny)


@dataclass
class PowerBasis:
    """Guarded power basis v, Av/s0, ..., A^m v/s0^m.

    `logs[k-1]` holds L_k = log||A^k v||_2 for every accepted k = 1..r.
    """

    columns: np.ndarray
    logs: list[float]
    r: int
    s0: float
    m: int

    @property
    def log_binomials(self) -> np.ndarray:
        return log_binomials(self.m)


def log_binomials(m: int) -> np.ndarray:
    """log C(m, j) for j = 0..m."""
    j = np.arange(m + 1)
    return gammaln(m + 1) - gammaln(j + 1) - gammaln(m - j + 1)


def _log_norm(x: np.ndarray) -> float:
    nrm = np.linalg.norm(x)
    return math.log(nrm) if nrm > 0 else -math.inf


def starting_vector(op: LinearOperator) -> tuple[np.ndarray, np.ndarray]:
    """Fixed-seed random unit starting vector v and its image Av.

    Structured vectors such as the uniform one are often invariant under the operator
    (difference stencils, cosine bases) and would hide the rest of its action.
    """
    rng = np.random.default_rng(START_VECTOR_SEED)
    v = rng.standard_normal(op.dim)
    v /= np.linalg.norm(v)
    Av = op.apply(v)

    if not np.all(np.isfinite(Av)):
        raise IllPosedOperatorError(f"{op.label}: A v is not finite on the starting vector")

    if not Av.any():
        logger.warning(f"{op.label}: the starting vector is annihilated")

    return v, Av


def build_power_basis(op: LinearOperator, m: int = DEFAULT_DEGREE, delta: float = DEFAULT_DELTA) -> PowerBasis:
    """Build the guarded power basis, the preliminary scale s0, and extend it to degree m."""
    if m < 1:
        raise RequestError(f"Degree m must be at least 1, got {m}")
    if not 0 < delta <= 1:
        raise RequestError(f"Guard fraction delta must lie in (0, 1], got {delta}")

    g_max = delta * G_MAX
    g_min = delta * G_MIN
    ell_max = float(np.max(log_binomials(m)))

    v, Av = starting_vector(op)
    powers = [v]
    logs = []

    # Build safe powers
    W = Av
    for k in range(1, m + 1):
        if k > 1:
            W = op.apply(powers[-1])

        L = _log_norm(W) if np.all(np.isfinite(W)) else math.inf
        if L + 0.5 * math.log(k + 1) + ell_max > g_max or L < g_min:
            break

        powers.append(W)
        logs.append(L)

    r = len(logs)

    # Geometric mean of the last few growth factors
    if r < MIN_ACCEPTED_POWERS:
        s0 = max(float(np.linalg.norm(Av)), 1.0)
        logger.warning(f"{op.label}: only {r} safe powers, falling back to s0 = {s0:.6g}")
    else:
        j_r = max(2, r - 5)
        ratios = [logs[j] - logs[j - 1] for j in range(j_r, r)]
        s0 = math.exp(sum(ratios) / len(ratios))

    # Normalize accepted columns by s0^j through their logs, then extend to degree m
    log_s0 = math.log(s0)
    columns = np.empty((op.dim, m + 1))
    columns[:, 0] = v
    for j in range(1, r + 1):
        columns[:, j] = powers[j] / math.exp(logs[j - 1]) * math.exp(logs[j - 1] - j * log_s0)

    for k in range(r + 1, m + 1):
        columns[:, k] = op.apply(columns[:, k - 1]) / s0

    return PowerBasis(columns=columns, logs=logs, r=r, s0=s0, m=m)


def objective(basis: PowerBasis, xi: float) -> float:
    """f(xi) = ||(A - xi I)^m v||_2^(1/m) / s0, evaluated in log space."""
    if not math.isfinite(xi):
        raise RequestError(f"Shift must be finite, got {xi}")

    m = basis.m
    z = -xi / basis.s0

    if z == 0:
        nrm = np.linalg.norm(basis.columns[:, m])
        return float(nrm ** (1.0 / m))

    # Column k carries C(m, k) z^(m-k)
    k = np.arange(m + 1)
    log_coeffs = basis.log_binomials + (m - k) * math.log(abs(z))
    signs = np.where((m - k) % 2 == 1, math.copysign(1.0, z), 1.0)

    scale = float(np.max(log_coeffs))
    combination = basis.columns @ (signs * np.exp(log_coeffs - scale))
    nrm = np.linalg.norm(combination)

    if nrm == 0:
        return 0.0
    return math.exp((scale + math.log(nrm)) / m)


def minimize_shift(basis: PowerBasis, n: int) -> tuple[float, float]:
    """Bounded Brent search for the shift over [-sqrt(n) s0, sqrt(n) s0].

    The returned value never exceeds f(0) or f at either endpoint.
    """
    bound = math.sqrt(n) * basis.s0

    result = minimize_scalar(
        lambda xi: objective(basis, xi),
        bounds=(-bound, bound),
        method="bounded",
        options={"xatol": BRENT_XTOL * (1.0 + basis.s0), "maxiter": BRENT_MAXITER},
    )

    # Zero wins ties so symmetric objectives keep the unshifted operator
    candidates = [0.0, float(result.x), -bound, bound]
    xi_star, f_min = 0.0, objective(basis, 0.0)
    for xi in candidates[1:]:
        if (f := objective(basis, xi)) < f_min:
            xi_star, f_min = xi, f

    return xi_star, f_min


def shifted_power_objective(op: LinearOperator, v: np.ndarray, xi: float, m: int, s0: float) -> float:
    """f(xi) from m shifted applications of the operator, renormalized at every step.

    Unlike `objective`, the value carries no cancellation from the binomial expansion,
    so it stays accurate when xi sits close to the spectrum.
    """
    x = v / np.linalg.norm(v)
    log_norm = 0.0

    for _ in range(m):
        x = shifted_apply(op, xi, x)
        nrm = float(np.linalg.norm(x))
        if nrm == 0:
            return 0.0
        if not math.isfinite(nrm):
            return math.inf
        log_norm += math.log(nrm)
        x = x / nrm

    return math.exp(log_norm / m) / s0


def rayleigh_shift(basis: PowerBasis) -> float:
    """Rayleigh quotient v^T A v of the starting vector, read off the power basis."""
    v = basis.columns[:, 0]
    return float(basis.s0 * (v @ basis.columns[:, 1]) / (v @ v))


def refine_shift(op: LinearOperator, basis: PowerBasis, candidates: list[float]) -> tuple[float, float]:
    """Score candidate shifts with `shifted_power_objective` and polish the best one.

    Zero is always a candidate and wins ties. The polish is a bounded Brent search of
    half-width REFINE_WIDTH * s0 around the winner, kept inside [-sqrt(n) s0, sqrt(n) s0].
    """
    m, s0 = basis.m, basis.s0
    v = basis.columns[:, 0]
    bound = math.sqrt(op.dim) * s0

    def score(xi: float) -> float:
        return shifted_power_objective(op, v, xi, m, s0)

    xi_star, f_min = 0.0, score(0.0)
    for xi in candidates:
        xi = min(max(float(xi), -bound), bound)
        if xi != xi_star and (f := score(xi)) < f_min:
            xi_star, f_min = xi, f

    if f_min == 0:
        return xi_star, f_min

    lo, hi = max(-bound, xi_star - REFINE_WIDTH * s0), min(bound, xi_star + REFINE_WIDTH * s0)
    result = minimize_scalar(score, bounds=(lo, hi), method="bounded", options={"xatol": BRENT_XTOL * (1.0 + s0), "maxiter": REFINE_MAXITER})
    if result.fun < f_min:
        xi_star, f_min = float(result.x), float(result.fun)

    return xi_star, f_min


def scaling_from_objective(s0: float, f_min: float, m: int, tol: float) -> float:
    """s = s0 f_min / (tol m!)^(1/m) with the factorial kept in log space."""
    if f_min <= 0:
        return 0.0
    return s0 * f_min * math.exp(-(math.log(tol) + gammaln(m + 1)) / m)


def select_parameters(op: LinearOperator, m: int = DEFAULT_DEGREE, tol: float = DEFAULT_TOL, delta: float = DEFAULT_DELTA) -> ScalingShift:
    """Choose (s, xi) for an operator so that s^-m nu(xi)/m! <= tol."""
    if not tol > 0:
        raise RequestError(f"Tolerance must be positive, got {tol}")

    basis = build_power_basis(op, m=m, delta=delta)
    xi_search, _ = minimize_shift(basis, op.dim)

    # The expanded objective has a rounding floor near (1 + |xi|/s0) u^(1/m); rescore directly
    xi_star, f_min = refine_shift(op, basis, [xi_search, rayleigh_shift(basis)])

    s = scaling_from_objective(basis.s0, f_min, m, tol)
    if s < S_FLOOR:
        logger.info(f"{op.label}: scaling parameter {s:.3g} raised to the floor {S_FLOOR:.3g}")
        s = S_FLOOR

    return ScalingShift(s=s, xi=xi_star, s0=basis.s0, f_min=f_min, m=m, r=basis.r, tol=tol)


def predict_cost(params: ScalingShift, t: float) -> int:
    """Number of recovery sweeps an evaluation at t will run."""
    return params.effective_scaling(t) - 1

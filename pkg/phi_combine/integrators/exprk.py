"""Fourth-order, six-stage exponential Runge-Kutta scheme for u' = A u + g(u).

Every step makes four block evaluations: {U2}, {U3, U4}, {U5, U6} and {u_{n+1}}.
Stage pairs share one V block; the powers of c_i ride on alpha_i = c_i so that
sum_j alpha_i^j phi_j(c_i h A) v_j reproduces each stage's c_i^j weights.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from phi_combine.core.block import combine_block
from phi_combine.core.constants import DEFAULT_TOL
from phi_combine.core.errors import IntegrationError, PhiCombineError, RequestError
from phi_combine.core.params import select_parameters
from phi_combine.core.schemas import BlockPhiRequest, RunRecord, ScalingShift
from phi_combine.problems.base import SemilinearProblem
from phi_combine.utils import logger

MAX_STEPS = 10**6


@dataclass(frozen=True)
class ExpRK4s6Coefficients:
    c2: Fraction = Fraction(1, 2)
    c3: Fraction = Fraction(1, 2)
    c4: Fraction = Fraction(1, 3)
    c5: Fraction = Fraction(5, 6)
    c6: Fraction = Fraction(1, 3)


COEFFICIENTS = ExpRK4s6Coefficients()


@dataclass
class StepState:
    """Solution at t_n together with the increments D_ni = g(U_ni) - g(u_n) of the last step."""

    t: float
    u: np.ndarray
    h: float
    increments: dict[int, np.ndarray] = field(default_factory=dict)


def _stage_block(state: StepState, hf: np.ndarray, second: np.ndarray = None, third: np.ndarray = None) -> np.ndarray:
    """V = [0, h f_n, second, third] with trailing columns omitted when absent."""
    columns = [np.zeros_like(state.u), hf]
    columns += [c for c in (second, third) if c is not None]
    return np.column_stack(columns)


def _pair_weights(h: float, ca: float, cb: float, Da: np.ndarray, Db: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """phi_2 and phi_3 vectors built from two earlier increments at nodes ca and cb."""
    second = h * (-(cb / ca) * Da + (ca / cb) * Db) / (ca - cb)
    third = 2.0 * h * (Da / ca - Db / cb) / (ca - cb)
    return second, third


def exprk4s6_step(problem: SemilinearProblem, state: StepState, params: ScalingShift, tol: float = DEFAULT_TOL) -> tuple[StepState, RunRecord]:
    """Advance one step of size state.h.

    Returns:
        The state at t + h (carrying this step's increments) and the step's merged RunRecord
    """
    c = {i: float(getattr(COEFFICIENTS, f"c{i}")) for i in range(2, 7)}
    op, h, u = problem.operator, state.h, state.u

    g_n = problem.reaction(u)
    hf = h * (op.apply(u) + g_n)
    record = RunRecord()

    def evaluate(nodes: list[float], V: np.ndarray) -> np.ndarray:
        nonlocal record
        alphas = np.array(nodes)

        result = combine_block(op, BlockPhiRequest(t=h * alphas, alpha=alphas, V=V, params=params, tol=tol))
        record = record.merge(result.stats)
        return u[:, None] + result.W

    D = {}

    # U2
    U = evaluate([c[2]], _stage_block(state, hf))
    D[2] = problem.reaction(U[:, 0]) - g_n

    # U3, U4
    U = evaluate([c[3], c[4]], _stage_block(state, hf, h * D[2] / c[2]))
    D[3] = problem.reaction(U[:, 0]) - g_n
    D[4] = problem.reaction(U[:, 1]) - g_n

    # U5, U6
    U = evaluate([c[5], c[6]], _stage_block(state, hf, *_pair_weights(h, c[3], c[4], D[3], D[4])))
    D[5] = problem.reaction(U[:, 0]) - g_n
    D[6] = problem.reaction(U[:, 1]) - g_n

    # u_{n+1}
    U = evaluate([1.0], _stage_block(state, hf, *_pair_weights(h, c[5], c[6], D[5], D[6])))

    return StepState(t=state.t + h, u=U[:, 0], h=h, increments=D), record


def integrate(
    problem: SemilinearProblem,
    h: float,
    t_end: float = None,
    tol: float = DEFAULT_TOL,
    params: ScalingShift = None,
) -> tuple[np.ndarray, list[RunRecord]]:
    """Integrate from t = 0 to t_end with a fixed step h.

    Parameters are selected once for the operator unless given.

    Raises:
        RequestError: t_end is not a whole number of steps, or needs too many
        IntegrationError: the state became non-finite or an evaluation failed
    """
    t_end = problem.t_end if t_end is None else t_end
    if not h > 0:
        raise RequestError(f"Step size must be positive, got {h}")

    n_steps = round(t_end / h)
    if n_steps > MAX_STEPS:
        raise RequestError(f"{n_steps} steps exceed the limit of {MAX_STEPS}")
    if not math.isclose(n_steps * h, t_end, rel_tol=1e-10, abs_tol=1e-15):
        raise RequestError(f"t_end = {t_end} is not a whole number of steps of size {h}")

    if params is None:
        params = select_parameters(problem.operator, tol=tol)

    state = StepState(t=0.0, u=np.asarray(problem.u0, dtype=float).copy(), h=h)
    records = []

    for step in range(n_steps):
        try:
            next_state, record = exprk4s6_step(problem, state, params, tol)
        except PhiCombineError as e:
            logger.error(f"Integration stopped at step {step}: {e}")
            raise IntegrationError(f"Stage evaluation failed: {e}", state.t, step) from e

        if not np.all(np.isfinite(next_state.u)):
            logger.error(f"Integration stopped at step {step}: non-finite state")
            raise IntegrationError("Non-finite state", state.t, step)

        state = next_state
        records.append(record)

    return state.u, records


def observed_orders(errors: list[float], hs: list[float]) -> list[float]:
    """log(e_k/e_{k+1}) / log(h_k/h_{k+1}) for consecutive runs."""
    orders = []
    for k in range(len(errors) - 1):
        if errors[k] > 0 and errors[k + 1] > 0:
            orders.append(math.log(errors[k] / errors[k + 1]) / math.log(hs[k] / hs[k + 1]))
        else:
            orders.append(math.nan)
    return orders

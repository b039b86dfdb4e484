"""Order-of-accuracy study of the exponential integrator on the ADR problem."""

import numpy as np
import scipy.linalg

from phi_combine.core.constants import (
    ADR_CONTROL_BOUND,
    ADR_CONTROL_GRID,
    ADR_CONTROL_STEPS,
    ADR_CONTROL_T_END,
    ADR_GRID,
    ADR_HALVINGS,
    ADR_MIN_ORDER,
    ADR_REFERENCE_REFINEMENT,
    ADR_TOL,
    DEFAULT_TOL,
)
from phi_combine.core.params import select_parameters
from phi_combine.core.schemas import BenchConfig, ResultRow, RunRecord
from phi_combine.integrators.exprk import integrate, observed_orders
from phi_combine.problems.adr import adr_build
from phi_combine.utils import logger

from .common import relative_error, stopwatch


def step_sizes(t_end: float, halvings: int = ADR_HALVINGS) -> list[float]:
    """h_0 = 2^-8 t_end / 2 followed by `halvings` successive halvings."""
    h0 = 2.0**-8 * t_end / 2
    return [h0 / 2**k for k in range(halvings + 1)]


def _merge(records: list[RunRecord]) -> RunRecord:
    total = RunRecord()
    for record in records:
        total = total.merge(record)
    return total


def run_adr_control(cfg: BenchConfig) -> ResultRow:
    """Linear control run (gamma = 0) against the dense exponential on a small grid."""
    problem = adr_build(ADR_CONTROL_GRID, gamma=0.0, t_end=ADR_CONTROL_T_END)
    h = ADR_CONTROL_T_END / ADR_CONTROL_STEPS

    with stopwatch() as clock:
        u, records = integrate(problem, h, tol=DEFAULT_TOL)

    exact = scipy.linalg.expm(ADR_CONTROL_T_END * problem.operator.todense()) @ problem.u0
    error = relative_error(u, exact, np.inf)
    return ResultRow("adr", f"linear control {ADR_CONTROL_GRID}x{ADR_CONTROL_GRID}", h, error, clock.seconds, _merge(records), bound=ADR_CONTROL_BOUND)


def run_adr(cfg: BenchConfig) -> list[ResultRow]:
    """Infinity-norm errors at t_end against a run with the finest step divided by 16.

    One row per step size carries the local order; a summary row carries the order
    over all halvings and is held to the minimum order.
    """
    problem = adr_build(cfg.size or ADR_GRID)
    tol = cfg.tol or ADR_TOL
    hs = step_sizes(problem.t_end)

    # Fine-step reference at full precision
    h_ref = hs[-1] / ADR_REFERENCE_REFINEMENT
    logger.info(f"{problem.operator.label}: computing reference with h = {h_ref:.3e}")
    reference_params = select_parameters(problem.operator, m=cfg.m, tol=DEFAULT_TOL, delta=cfg.delta)
    reference, _ = integrate(problem, h_ref, tol=DEFAULT_TOL, params=reference_params)

    params = select_parameters(problem.operator, m=cfg.m, tol=tol, delta=cfg.delta)

    errors, timings, stats = [], [], []
    for h in hs:
        with stopwatch() as clock:
            u, records = integrate(problem, h, tol=tol, params=params)

        errors.append(relative_error(u, reference, np.inf))
        timings.append(clock.seconds)
        stats.append(_merge(records))
        logger.info(f"h = {h:.4e}: error {errors[-1]:.3e} in {clock.seconds:.2f}s")

    orders = [None] + observed_orders(errors, hs)
    rows = [ResultRow("adr", f"{problem.nx}x{problem.ny}", h, e, s, rec, order=o) for h, e, s, o, rec in zip(hs, errors, timings, orders, stats)]

    overall = observed_orders([errors[0], errors[-1]], [hs[0], hs[-1]])[0]
    rows.append(ResultRow("adr", "order over halvings", hs[-1], errors[-1], sum(timings), _merge(stats), order=overall, min_order=ADR_MIN_ORDER))

    rows.append(run_adr_control(cfg))
    return rows

"""Chebyshev Laplacian runs with alpha = t over a range of abscissae."""

from phi_combine.core.constants import (
    CHEBYSHEV_BOUNDS,
    CHEBYSHEV_FULL_TIMES,
    CHEBYSHEV_L,
    CHEBYSHEV_N,
    CHEBYSHEV_P,
    CHEBYSHEV_TIMES,
    DEFAULT_TOL,
    SMOKE_BOUND,
)
from phi_combine.core.params import select_parameters
from phi_combine.core.schemas import BenchConfig, PhiRequest, ResultRow
from phi_combine.core.single import combine
from phi_combine.problems.chebyshev import chebyshev_operator
from phi_combine.reference import reference_w
from phi_combine.utils import logger

from .common import random_block, relative_error, stopwatch


def run_chebyshev(cfg: BenchConfig) -> list[ResultRow]:
    """Relative 1-norm errors against the augmented-matrix reference, plus a t = 0 smoke row."""
    N = cfg.size or CHEBYSHEV_N
    tol = cfg.tol or DEFAULT_TOL
    op = chebyshev_operator(N, CHEBYSHEV_L)
    A = op.entries

    with stopwatch() as clock:
        params = select_parameters(op, m=cfg.m, tol=tol, delta=cfg.delta)
    logger.info(f"{op.label}: s = {params.s:.4e}, xi = {params.xi:.4e} ({clock.seconds:.3f}s)")

    V = random_block(cfg.seed, op.dim, CHEBYSHEV_P + 1)
    times = CHEBYSHEV_FULL_TIMES if cfg.full else CHEBYSHEV_TIMES

    rows = []
    for t in (0.0, *times):
        with stopwatch() as clock:
            result = combine(op, PhiRequest(t=t, alpha=t, V=V, params=params, tol=tol))

        result.stats.seed = cfg.seed
        error = relative_error(result.w, reference_w(A, V, t, t))
        case = "smoke" if t == 0 else f"N={N}"
        rows.append(ResultRow("chebyshev", case, t, error, clock.seconds, result.stats, bound=CHEBYSHEV_BOUNDS.get(t, SMOKE_BOUND)))

    return rows

"""Low-rank DCT family with cores M1, M2 and M3.

Runs use alpha = 1 with every v_j divided by t^j, so each row is the classical
sum of phi_j(tA) v_j / t^j.
"""

import numpy as np

from phi_combine.core.constants import DEFAULT_TOL, LOWRANK_BOUNDS, LOWRANK_FULL_SIZES, LOWRANK_TIMES
from phi_combine.core.params import select_parameters
from phi_combine.core.schemas import BenchConfig, PhiRequest, ResultRow
from phi_combine.core.single import combine
from phi_combine.problems.lowrank import lowrank_operator, make_core
from phi_combine.reference import lowrank_reference
from phi_combine.utils import logger

from .common import random_block, relative_error, stopwatch


def run_lowrank(cfg: BenchConfig, cores: tuple[str, ...] = ("M1", "M2", "M3")) -> list[ResultRow]:
    """Relative 1-norm errors against the closed-form low-rank reference."""
    tol = cfg.tol or DEFAULT_TOL

    rows = []
    for name in cores:
        n = cfg.size or (LOWRANK_FULL_SIZES[name] if cfg.full else None)
        core = make_core(name, n)
        op, U, _ = lowrank_operator(core)

        params = select_parameters(op, m=cfg.m, tol=tol, delta=cfg.delta)
        logger.info(f"{op.label}: s = {params.s:.4e}, xi = {params.xi:.4e}")

        V = random_block(cfg.seed, core.n, core.p + 1)
        for t in LOWRANK_TIMES[name]:
            V_t = V / t ** np.arange(core.p + 1)
            with stopwatch() as clock:
                result = combine(op, PhiRequest(t=t, alpha=1.0, V=V_t, params=params, tol=tol))

            result.stats.seed = cfg.seed
            error = relative_error(result.w, lowrank_reference(U, core.core, V_t, t))
            rows.append(ResultRow("lowrank", f"{name} n={core.n}", t, error, clock.seconds, result.stats, bound=LOWRANK_BOUNDS[name][t]))

    return rows

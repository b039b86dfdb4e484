"""Dense gallery sweep with t = alpha = 1 at full precision."""

from concurrent.futures import ThreadPoolExecutor

from phi_combine.core.constants import DEFAULT_TOL, GALLERY_BOUND_FACTOR, GALLERY_ORDER
from phi_combine.core.params import select_parameters
from phi_combine.core.schemas import BenchConfig, PhiRequest, ResultRow
from phi_combine.core.single import combine
from phi_combine.problems.gallery import gallery_names, gallery_operator
from phi_combine.reference import reference_w

from .common import conditioning_bound, random_block, relative_error, stopwatch


def run_gallery_case(name: str, cfg: BenchConfig) -> ResultRow:
    tol = cfg.tol or DEFAULT_TOL
    op = gallery_operator(name)

    with stopwatch() as clock:
        params = select_parameters(op, m=cfg.m, tol=tol, delta=cfg.delta)
        V = random_block(cfg.seed, op.dim, GALLERY_ORDER + 1)
        result = combine(op, PhiRequest(t=1.0, alpha=1.0, V=V, params=params, tol=tol))

    result.stats.seed = cfg.seed
    error = relative_error(result.w, reference_w(op.entries, V, 1.0, 1.0))
    return ResultRow("gallery", name, 1.0, error, clock.seconds, result.stats, bound=conditioning_bound(op.entries, GALLERY_BOUND_FACTOR))


def run_gallery(cfg: BenchConfig) -> list[ResultRow]:
    """One row per gallery matrix; `cfg.workers > 1` evaluates matrices concurrently."""
    names = gallery_names()
    if cfg.workers <= 1:
        return [run_gallery_case(name, cfg) for name in names]

    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        return list(pool.map(lambda name: run_gallery_case(name, cfg), names))

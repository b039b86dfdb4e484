"""Command line interface for phi-combine."""

import json
from pathlib import Path

import numpy as np
import typer

import phi_combine.problems  # noqa: F401  registers the problem sources
from phi_combine.bench import ResultStore, get_experiment, list_experiments
from phi_combine.bench.results import write_combination
from phi_combine.core.block import combine_block
from phi_combine.core.constants import DEFAULT_DEGREE, DEFAULT_DELTA, DEFAULT_SEED, DEFAULT_TOL
from phi_combine.core.errors import PhiCombineError
from phi_combine.core.params import predict_cost, select_parameters
from phi_combine.core.schemas import BenchConfig, BlockPhiRequest, Experiment, OutputFormat, PhiRequest
from phi_combine.core.single import combine
from phi_combine.operators.matrix_market import write_matrix_market
from phi_combine.operators.registry import available_sources, resolve_source
from phi_combine.problems.gallery import gallery_matrix, gallery_names
from phi_combine.utils import logger
from phi_combine.wizards.bench import configure_bench, select_experiment

app = typer.Typer(name="phicomb", help="Matrix-free linear combinations of phi-functions")
params_app = typer.Typer(name="Params", help="Inspect the scaling and shift selected for an operator")
gallery_app = typer.Typer(name="Gallery", help="Work with the dense test gallery")
app.add_typer(params_app, name="params")
app.add_typer(gallery_app, name="gallery")

SOURCE_HELP = "A .mtx file or a registered source (chebyshev, adr, lowrank-M1, gallery-<name>, ...)"


@app.callback()
def callback(quiet: bool = typer.Option(False, "--quiet", "-q", help="Only print results and errors")):
    """Matrix-free linear combinations of phi-functions"""
    logger.set_quiet(quiet)


def _load_config(experiment: Experiment, config_path: Path = None) -> BenchConfig:
    """Start from a JSON config file when given, else from the defaults."""
    if config_path is None:
        return BenchConfig(experiment=experiment)

    if not config_path.exists():
        raise FileNotFoundError(f"Config file not found: {config_path}")

    with config_path.open() as f:
        data = json.load(f)
    data["experiment"] = experiment.value
    return BenchConfig.deserialize(data)


@app.command()
def bench(
    experiment: str = typer.Argument(None, help="chebyshev, lowrank, adr, gallery, or 'list'"),
    size: int = typer.Option(None, "--size", help="Override the problem size"),
    tol: float = typer.Option(None, "--tol", help="Evaluator tolerance"),
    m: int = typer.Option(None, "--m", help="Degree used by parameter selection"),
    delta: float = typer.Option(None, "--delta", help="Overflow guard fraction"),
    seed: int = typer.Option(None, "--seed", help="Seed of the random V blocks"),
    out: Path = typer.Option(None, "--out", help="Results file (default ~/.phi_combine/results/<experiment>.<format>)"),
    fmt: OutputFormat = typer.Option(None, "--format", help="csv or json"),
    workers: int = typer.Option(None, "--workers", help="Concurrent gallery evaluations"),
    full: bool = typer.Option(None, "--full/--desk", help="Run the full-size variant"),
    config: Path = typer.Option(None, "--config", help="JSON file with BenchConfig fields"),
):
    """Run an experiment and persist its table

    NOTE:
    - Without an experiment name the experiment is selected interactively
    - Exits with code 1 if any row exceeds its acceptance bound
    """

    if experiment == "list":
        logger.display_experiments(list_experiments())
        return 0

    try:
        # Use wizard to select experiment if not provided
        if experiment:
            selected = Experiment(experiment)
            cfg = _load_config(selected, config)
        else:
            if not (selected := select_experiment(list_experiments())):
                logger.error("No experiment selected")
                raise typer.Exit(code=1)
            cfg = configure_bench(selected, _load_config(selected, config))

        # Command-line flags override the config file
        overrides = {"size": size, "tol": tol, "m": m, "delta": delta, "seed": seed, "out": out, "format": fmt, "workers": workers, "full": full}
        for key, value in overrides.items():
            if value is not None:
                setattr(cfg, key, value)

        rows = get_experiment(cfg.experiment)(cfg)
        logger.display_results(rows, title=cfg.experiment.value)

        store = ResultStore()
        path = store.write(rows, cfg.out or store.default_path(cfg.experiment, cfg.format), cfg.format)
        logger.success(f"Wrote {len(rows)} rows to {path}")

    except typer.Exit:
        raise
    except PhiCombineError as e:
        logger.error(f"Experiment failed: {e}")
        raise typer.Exit(code=1)
    except Exception as e:
        logger.exception(f"Experiment failed: {e}")
        raise typer.Exit(code=1)

    if failed := [row for row in rows if not row.passed]:
        logger.error(f"{len(failed)} of {len(rows)} rows exceeded their acceptance bound")
        raise typer.Exit(code=1)

    return 0


@params_app.command("inspect")
def inspect_parameters(
    source: str = typer.Argument(..., help=SOURCE_HELP),
    t: list[float] = typer.Option([1.0], "--t", help="Abscissae to predict the cost for"),
    m: int = typer.Option(DEFAULT_DEGREE, "--m"),
    tol: float = typer.Option(DEFAULT_TOL, "--tol"),
    delta: float = typer.Option(DEFAULT_DELTA, "--delta"),
    size: int = typer.Option(None, "--size", help="Size of a registered source"),
):
    """Print the scaling and shift selected for an operator"""

    try:
        op = resolve_source(source, size)
        params = select_parameters(op, m=m, tol=tol, delta=delta)
        logger.display_parameters(params, label=op.label, costs={ti: predict_cost(params, ti) for ti in t})

    except PhiCombineError as e:
        logger.error(f"Failed to select parameters: {e}")
        raise typer.Exit(code=1)
    except Exception as e:
        logger.exception(f"Failed to select parameters: {e}")
        raise typer.Exit(code=1)

    return 0


@app.command("eval")
def evaluate(
    source: str = typer.Argument(..., help=SOURCE_HELP),
    t: list[float] = typer.Option([1.0], "--t", help="Abscissa; repeat for a block evaluation"),
    alpha: list[float] = typer.Option(None, "--alpha", help="Polynomial weight per abscissa (default 1)"),
    p: int = typer.Option(1, "--p", help="Highest phi-function index"),
    tol: float = typer.Option(DEFAULT_TOL, "--tol"),
    m: int = typer.Option(DEFAULT_DEGREE, "--m"),
    delta: float = typer.Option(DEFAULT_DELTA, "--delta"),
    seed: int = typer.Option(DEFAULT_SEED, "--seed", help="Seed of the random V block"),
    size: int = typer.Option(None, "--size", help="Size of a registered source"),
    out: Path = typer.Option(None, "--out", help="Write the result vectors to this file"),
    fmt: OutputFormat = typer.Option(OutputFormat.CSV, "--format", help="csv or json"),
):
    """Evaluate sum_j alpha^j phi_j(tA) v_j for a seeded random V"""

    try:
        alphas = alpha or [1.0] * len(t)
        if len(alphas) == 1 and len(t) > 1:
            alphas = alphas * len(t)
        if len(alphas) != len(t):
            logger.error(f"Got {len(t)} abscissae but {len(alphas)} weights")
            raise typer.Exit(code=1)

        op = resolve_source(source, size)
        params = select_parameters(op, m=m, tol=tol, delta=delta)
        V = np.random.default_rng(seed).standard_normal((op.dim, p + 1))

        # A single abscissa uses the single evaluator
        if len(t) == 1:
            result = combine(op, PhiRequest(t=t[0], alpha=alphas[0], V=V, params=params, tol=tol))
            W, stats = result.w[:, None], result.stats
        else:
            result = combine_block(op, BlockPhiRequest(t=np.array(t), alpha=np.array(alphas), V=V, params=params, tol=tol))
            W, stats = result.W, result.stats

        stats.seed = seed
        logger.display_run_record(stats)
        for i, ti in enumerate(t):
            logger.display_vector(W[:, i], title=f"w at t={ti:g}, alpha={alphas[i]:g}")

        if out:
            path = write_combination(out, t, alphas, W, stats, fmt)
            logger.success(f"Wrote {W.shape[1]} result vectors to {path}")

    except typer.Exit:
        raise
    except PhiCombineError as e:
        logger.error(f"Evaluation failed: {e}")
        raise typer.Exit(code=1)
    except Exception as e:
        logger.exception(f"Evaluation failed: {e}")
        raise typer.Exit(code=1)

    return 0


@gallery_app.command("export")
def export_gallery(directory: Path = typer.Argument(..., help="Directory for the .mtx files")):
    """Write every gallery matrix as a Matrix Market file"""

    try:
        for name in gallery_names():
            write_matrix_market(directory / f"{name}.mtx", gallery_matrix(name), comment=f"phi-combine gallery: {name}")

        logger.success(f"Exported {len(gallery_names())} matrices to {directory}")

    except Exception as e:
        logger.exception(f"Failed to export gallery: {e}")
        raise typer.Exit(code=1)

    return 0


@app.command("sources")
def list_sources():
    """List the registered operator sources"""
    logger.display_sources(available_sources())


def main():
    """Entry point for the CLI."""
    try:
        app()
    except Exception as e:
        logger.error(f"An unexpected error occurred: {str(e)}")


if __name__ == "__main__":
    app()

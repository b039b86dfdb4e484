"""Experiment registry for phi-combine.

This module provides a registry of benchmark experiments and functions
to register and retrieve them.
"""

from dataclasses import dataclass
from typing import Callable

from phi_combine.core.schemas import BenchConfig, Experiment, ResultRow

from .adr import run_adr
from .chebyshev import run_chebyshev
from .gallery import run_gallery
from .lowrank import run_lowrank

# Type for experiment runner functions
ExperimentRunner = Callable[[BenchConfig], list[ResultRow]]


@dataclass
class ExperimentEntry:
    runner: ExperimentRunner
    description: str


# Registry of available experiments
EXPERIMENTS: dict[Experiment, ExperimentEntry] = {}


def register_experiment(experiment: Experiment, runner: ExperimentRunner, description: str):
    """Register an experiment.

    Args:
        experiment: The experiment identifier
        runner: Function that runs the experiment for a configuration
        description: One-line description shown by `bench list`
    """
    EXPERIMENTS[experiment] = ExperimentEntry(runner=runner, description=description)


def get_experiment(experiment: Experiment) -> ExperimentRunner:
    """Get the runner of a registered experiment."""
    if not (entry := EXPERIMENTS.get(experiment)):
        supported = ", ".join(e.value for e in EXPERIMENTS)
        raise ValueError(f"Unknown experiment: {experiment}. Supported experiments: {supported}")

    return entry.runner


def list_experiments() -> dict[str, str]:
    return {experiment.value: entry.description for experiment, entry in EXPERIMENTS.items()}


register_experiment(Experiment.CHEBYSHEV, run_chebyshev, "Chebyshev Laplacian, p = 6, alpha = t, t from 1e-4 to 1e-1")
register_experiment(Experiment.LOWRANK, run_lowrank, "Low-rank DCT operators with cores M1, M2, M3, alpha = 1")
register_experiment(Experiment.ADR, run_adr, "Order of accuracy of expRK4s6 on the 2D advection-diffusion-reaction problem")
register_experiment(Experiment.GALLERY, run_gallery, "Dense gallery, p = 5, t = alpha = 1, full precision")

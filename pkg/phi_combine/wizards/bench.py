"""Interactive wizards for benchmark runs."""

import questionary

from phi_combine.core.schemas import BenchConfig, Experiment, OutputFormat


def select_experiment(descriptions: dict[str, str] = None) -> Experiment:
    """Interactive wizard to select an experiment.

    Args:
        descriptions: Optional description per experiment name, shown next to each choice

    Returns:
        Selected Experiment, or None if the prompt was cancelled
    """
    descriptions = descriptions or {}
    choices = [questionary.Choice(title=f"{e.value} - {descriptions[e.value]}" if e.value in descriptions else e.value, value=e.value) for e in Experiment]

    selection = questionary.select(message="Select experiment:", choices=choices).ask()
    return Experiment(selection) if selection else None


def configure_bench(experiment: Experiment, config: BenchConfig = None) -> BenchConfig:
    """Interactive wizard to fill in the output format and size of a benchmark run."""
    config = config or BenchConfig(experiment=experiment)
    config.experiment = experiment

    fmt = questionary.select(message="Output format:", choices=[f.value for f in OutputFormat], default=config.format.value).ask()
    if fmt:
        config.format = OutputFormat(fmt)

    # Full sizes only make sense for the runs with a desk-scale reduction
    if experiment in (Experiment.CHEBYSHEV, Experiment.LOWRANK):
        config.full = bool(questionary.confirm("Run the full-size variant?", default=config.full).ask())

    return config

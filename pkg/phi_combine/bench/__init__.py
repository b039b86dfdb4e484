"""Benchmark experiments for phi-combine.

This module provides the experiment runners, their registry and the
results writer used by the `bench` command.
"""

from phi_combine.bench.registry import get_experiment, list_experiments, register_experiment
from phi_combine.bench.results import ResultStore

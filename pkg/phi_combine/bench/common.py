"""Helpers shared by the experiment runners."""

import math
import time
from contextlib import contextmanager

import numpy as np

UNIT_ROUNDOFF = 2.0**-53


def relative_error(w: np.ndarray, reference: np.ndarray, ord: float = 1) -> float:
    """||w - reference|| / ||reference||, or the absolute error when the reference vanishes."""
    diff = float(np.linalg.norm(np.asarray(w) - np.asarray(reference), ord))
    scale = float(np.linalg.norm(reference, ord))
    return diff / scale if scale > 0 else diff


def random_block(seed: int, n: int, columns: int) -> np.ndarray:
    """Standard normal n x columns block from a fresh seeded generator."""
    return np.random.default_rng(seed).standard_normal((n, columns))


def conditioning_bound(entries: np.ndarray, factor: float = 1e3) -> float:
    """factor * u * (1 + ||A||_1 e^||A||_1), infinite when the exponential overflows."""
    norm = float(np.linalg.norm(entries, 1))
    try:
        growth = norm * math.exp(norm)
    except OverflowError:
        return math.inf
    return factor * UNIT_ROUNDOFF * (1.0 + growth)


class Stopwatch:
    seconds: float = 0.0


@contextmanager
def stopwatch():
    """Measure the wall time of a block: `with stopwatch() as clock: ...; clock.seconds`."""
    clock = Stopwatch()
    start = time.perf_counter()
    try:
        yield clock
    finally:
        clock.seconds = time.perf_counter() - start

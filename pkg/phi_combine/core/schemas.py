import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from .constants import DEFAULT_DEGREE, DEFAULT_DELTA, DEFAULT_SEED, DEFAULT_TOL
from .errors import RequestError


class Experiment(str, Enum):
    CHEBYSHEV = "chebyshev"
    LOWRANK = "lowrank"
    ADR = "adr"
    GALLERY = "gallery"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


@dataclass(frozen=True)
class ScalingShift:
    """Scaling parameter and spectral shift chosen for one operator."""

    s: float
    xi: float
    s0: float
    f_min: float
    m: int
    r: int
    tol: float = DEFAULT_TOL

    def effective_scaling(self, t: float) -> int:
        """Number of scaled steps used for a single abscissa t."""
        return max(1, math.ceil(abs(t) * self.s))

    def effective_scaling_block(self, ts) -> int:
        """Number of scaled steps shared by a block of abscissae."""
        return max(1, math.ceil(self.s * float(np.max(np.abs(ts)))))

    def serialize(self) -> dict:
        return asdict(self)

    @classmethod
    def deserialize(cls, data: dict):
        return cls(**data)


@dataclass
class RunRecord:
    """Telemetry of one (or an aggregate of several) evaluator calls."""

    s_effective: int = 0
    series_len_S: int = 0
    series_lens_F: list[int] = field(default_factory=list)
    matvecs: int = 0
    applies: int = 0
    evaluator_calls: int = 0
    seed: int = None

    def merge(self, other: "RunRecord") -> "RunRecord":
        """Accumulate another record into a new one (counts add, s_effective keeps the maximum)."""
        return RunRecord(
            s_effective=max(self.s_effective, other.s_effective),
            series_len_S=self.series_len_S + other.series_len_S,
            series_lens_F=self.series_lens_F + other.series_lens_F,
            matvecs=self.matvecs + other.matvecs,
            applies=self.applies + other.applies,
            evaluator_calls=self.evaluator_calls + other.evaluator_calls,
            seed=self.seed if self.seed is not None else other.seed,
        )

    def serialize(self) -> dict:
        return asdict(self)

    @classmethod
    def deserialize(cls, data: dict):
        return cls(**data)


def _check_block(V: np.ndarray, tol: float) -> np.ndarray:
    V = np.asarray(V, dtype=float)
    if V.ndim == 1:
        V = V[:, None]

    if V.ndim != 2 or V.shape[1] < 1:
        raise RequestError(f"V must be an n x (p+1) block, got shape {V.shape}")
    if not np.all(np.isfinite(V)):
        raise RequestError("V contains non-finite entries")
    if not (tol > 0):
        raise RequestError(f"Tolerance must be positive, got {tol}")

    return V


@dataclass
class PhiRequest:
    """Request for w = sum_j alpha^j phi_j(tA) v_j."""

    t: float
    alpha: float
    V: np.ndarray
    params: ScalingShift
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        self.V = _check_block(self.V, self.tol)

        if not (math.isfinite(self.t) and math.isfinite(self.alpha)):
            raise RequestError(f"t and alpha must be finite, got t={self.t}, alpha={self.alpha}")

    @property
    def p(self) -> int:
        return self.V.shape[1] - 1


@dataclass
class BlockPhiRequest:
    """Request for w_i = sum_j alpha_i^j phi_j(t_i A) v_j, i = 1..r."""

    t: np.ndarray
    alpha: np.ndarray
    V: np.ndarray
    params: ScalingShift
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        self.V = _check_block(self.V, self.tol)
        self.t = np.atleast_1d(np.asarray(self.t, dtype=float))
        self.alpha = np.atleast_1d(np.asarray(self.alpha, dtype=float))

        if self.t.size == 0:
            raise RequestError("At least one abscissa is required")
        if self.t.shape != self.alpha.shape or self.t.ndim != 1:
            raise RequestError(f"t and alpha must be vectors of equal length, got {self.t.shape} and {self.alpha.shape}")
        if not (np.all(np.isfinite(self.t)) and np.all(np.isfinite(self.alpha))):
            raise RequestError("t and alpha must be finite")

    @property
    def p(self) -> int:
        return self.V.shape[1] - 1

    @property
    def r(self) -> int:
        return self.t.size


@dataclass
class PhiResult:
    w: np.ndarray
    exp_v0: np.ndarray
    tail: np.ndarray
    stats: RunRecord


@dataclass
class BlockPhiResult:
    W: np.ndarray
    stats: RunRecord


@dataclass
class BenchConfig:
    """Settings of one benchmark run; the defaults reproduce the desk-scale acceptance runs."""

    experiment: Experiment
    size: int = None
    tol: float = None
    m: int = DEFAULT_DEGREE
    delta: float = DEFAULT_DELTA
    seed: int = DEFAULT_SEED
    out: Path = None
    format: OutputFormat = OutputFormat.CSV
    workers: int = 1
    full: bool = False

    def serialize(self) -> dict:
        return {
            "experiment": self.experiment.value,
            "size": self.size,
            "tol": self.tol,
            "m": self.m,
            "delta": self.delta,
            "seed": self.seed,
            "out": self.out.as_posix() if self.out else None,
            "format": self.format.value,
            "workers": self.workers,
            "full": self.full,
        }

    @classmethod
    def deserialize(cls, data: dict):
        data = dict(data)
        experiment = Experiment(data.pop("experiment"))
        out = data.pop("out", None)
        output_format = OutputFormat(data.pop("format", OutputFormat.CSV.value))
        return cls(experiment=experiment, out=Path(out) if out else None, format=output_format, **data)


@dataclass
class ResultRow:
    """One line of an experiment table."""

    experiment: str
    case: str
    t: float
    error: float
    seconds: float
    stats: RunRecord
    bound: float = None
    order: float = None
    min_order: float = None

    @property
    def passed(self) -> bool:
        """Rows without a bound or a minimum order are informational and always pass."""
        if self.bound is not None and not (math.isfinite(self.error) and self.error <= self.bound):
            return False
        if self.min_order is not None and not (self.order is not None and self.order >= self.min_order):
            return False
        return True

    def serialize(self) -> dict:
        return {
            "experiment": self.experiment,
            "case": self.case,
            "t": self.t,
            "error": self.error,
            "bound": self.bound,
            "passed": self.passed,
            "order": self.order,
            "min_order": self.min_order,
            "seconds": self.seconds,
            "s_effective": self.stats.s_effective,
            "series_len_S": self.stats.series_len_S,
            "series_lens_F": list(self.stats.series_lens_F),
            "matvecs": self.stats.matvecs,
            "applies": self.stats.applies,
            "evaluator_calls": self.stats.evaluator_calls,
            "seed": self.stats.seed,
        }

    @classmethod
    def deserialize(cls, data: dict):
        stats = RunRecord(
            s_effective=data["s_effective"],
            series_len_S=data["series_len_S"],
            series_lens_F=list(data.get("series_lens_F") or []),
            matvecs=data["matvecs"],
            applies=data["applies"],
            evaluator_calls=data["evaluator_calls"],
            seed=data.get("seed"),
        )
        return cls(
            experiment=data["experiment"],
            case=data["case"],
            t=data["t"],
            error=data["error"],
            seconds=data["seconds"],
            stats=stats,
            bound=data.get("bound"),
            order=data.get("order"),
            min_order=data.get("min_order"),
        )

from .schemas import (
    BenchConfig,
    BlockPhiRequest,
    BlockPhiResult,
    Experiment,
    OutputFormat,
    PhiRequest,
    PhiResult,
    ResultRow,
    RunRecord,
    ScalingShift,
)

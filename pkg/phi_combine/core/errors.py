"""Exceptions raised by phi-combine."""


class PhiCombineError(Exception):
    """Base class for every error raised by the library."""


class OperatorError(PhiCombineError, ValueError):
    """An operator (or its input block) is malformed."""


class IllPosedOperatorError(OperatorError):
    """The operator produced non-finite output on the starting vector."""


class MatrixMarketError(OperatorError):
    """A Matrix Market file could not be turned into a dense matrix."""


class MatrixMarketParseError(MatrixMarketError):
    """The file is not valid Matrix Market."""


class MatrixMarketFieldError(MatrixMarketError):
    """The file stores a field other than real (or integer)."""


class MatrixMarketShapeError(MatrixMarketError):
    """The stored matrix is not square."""


class RequestError(PhiCombineError, ValueError):
    """An evaluation request violates its preconditions."""


class SeriesDivergenceError(PhiCombineError, ArithmeticError):
    """A Taylor term became non-finite."""

    def __init__(self, stage: str, term: int):
        self.stage = stage
        self.term = term
        super().__init__(f"Non-finite value in {stage} at term {term}")


class SeriesNonConvergenceError(PhiCombineError, RuntimeError):
    """A Taylor series did not meet the stopping test within its cap."""

    def __init__(self, stage: str, cap: int):
        self.stage = stage
        self.cap = cap
        super().__init__(f"The {stage} series did not converge within {cap} terms")


class ShiftOverflowError(PhiCombineError, OverflowError):
    """The undo factor exp(t*xi/s) is not representable."""


class OracleError(PhiCombineError, ArithmeticError):
    """A reference evaluation could not be carried out reliably."""


class IntegrationError(PhiCombineError, RuntimeError):
    """Time stepping stopped before reaching the final time."""

    def __init__(self, message: str, last_time: float, step: int):
        self.last_time = last_time
        self.step = step
        super().__init__(f"{message} (step {step}, last valid time {last_time:.6g})")

"""Matrix Market (.mtx) reader and writer for dense test matrices."""

from pathlib import Path

import numpy as np
import scipy.io
import scipy.sparse as sp

from phi_combine.core.errors import MatrixMarketFieldError, MatrixMarketParseError, MatrixMarketShapeError
from phi_combine.operators.dense import DenseOperator

REAL_FIELDS = ("real", "integer")


def read_matrix_market(path: Path) -> DenseOperator:
    """Read an array or coordinate Matrix Market file into a dense operator.

    Symmetric files are expanded to the full matrix.

    Raises:
        FileNotFoundError: the path does not exist
        MatrixMarketParseError: the header or body cannot be parsed
        MatrixMarketFieldError: the field is not real or integer
        MatrixMarketShapeError: the matrix is not square
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Matrix Market file not found: {path}")

    # Inspect the header before touching the body
    try:
        rows, cols, _, _, field, _ = scipy.io.mminfo(path.as_posix())
    except (ValueError, IndexError, TypeError) as e:
        raise MatrixMarketParseError(f"Invalid Matrix Market header in {path}: {e}") from e

    if field not in REAL_FIELDS:
        raise MatrixMarketFieldError(f"Unsupported Matrix Market field '{field}' in {path}; only real matrices are accepted")

    if rows != cols:
        raise MatrixMarketShapeError(f"Matrix in {path} is {rows} x {cols}; a square matrix is required")

    try:
        data = scipy.io.mmread(path.as_posix())
    except (ValueError, IndexError, TypeError) as e:
        raise MatrixMarketParseError(f"Invalid Matrix Market body in {path}: {e}") from e

    entries = data.toarray() if sp.issparse(data) else np.asarray(data)
    return DenseOperator(entries.astype(float), label=path.stem)


def write_matrix_market(path: Path, entries: np.ndarray, comment: str = "") -> Path:
    """Write a dense real matrix in array format with full round-trip precision."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    scipy.io.mmwrite(path.as_posix(), np.asarray(entries, dtype=float), comment=comment, field="real", precision=17, symmetry="general")
    return path

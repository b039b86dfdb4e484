"""Persistence of experiment tables as CSV or JSON."""

import csv
import json
from pathlib import Path

from phi_combine.core.constants import DEFAULT_BASE_DIR, RESULTS_DIR
from phi_combine.core.schemas import Experiment, OutputFormat, ResultRow

# Recovery sweep lengths share one CSV cell
SWEEP_SEPARATOR = ";"

# Column order of ResultRow.serialize
CSV_FIELDS = [
    "experiment",
    "case",
    "t",
    "error",
    "bound",
    "passed",
    "order",
    "min_order",
    "seconds",
    "s_effective",
    "series_len_S",
    "series_lens_F",
    "matvecs",
    "applies",
    "evaluator_calls",
    "seed",
]


class ResultStore:
    """Reads and writes result tables, one experiment per file."""

    def __init__(self, base_dir: Path = None):
        base_dir = base_dir or Path(DEFAULT_BASE_DIR)
        self.results_dir = base_dir.expanduser() / RESULTS_DIR

    def default_path(self, experiment: Experiment, fmt: OutputFormat) -> Path:
        return self.results_dir / f"{experiment.value}.{fmt.value}"

    def write(self, rows: list[ResultRow], path: Path, fmt: OutputFormat) -> Path:
        """Write rows with a header (CSV) or as an array of objects (JSON)."""
        path = Path(path).expanduser()
        path.parent.mkdir(parents=True, exist_ok=True)

        records = [row.serialize() for row in rows]

        if fmt == OutputFormat.JSON:
            with path.open("w") as f:
                json.dump(records, f, indent=4)
            return path

        for record in records:
            record["series_lens_F"] = SWEEP_SEPARATOR.join(str(n) for n in record["series_lens_F"])

        with path.open("w", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=CSV_FIELDS)
            writer.writeheader()
            writer.writerows(records)

        return path

    def read(self, path: Path) -> list[ResultRow]:
        """Load a table written by `write`; the format follows the file suffix."""
        path = Path(path).expanduser()
        if not path.exists():
            raise FileNotFoundError(f"Results file not found: {path}")

        if path.suffix == f".{OutputFormat.JSON.value}":
            with path.open() as f:
                return [ResultRow.deserialize(record) for record in json.load(f)]

        with path.open(newline="") as f:
            return [ResultRow.deserialize(_parse_csv_record(record)) for record in csv.DictReader(f)]


def _parse_csv_record(record: dict[str, str]) -> dict:
    """Undo the stringification of csv for the fields ResultRow.deserialize reads."""
    text = {"experiment", "case"}
    integers = {"s_effective", "series_len_S", "matvecs", "applies", "evaluator_calls", "seed"}

    parsed = {}
    for key, value in record.items():
        if key == "series_lens_F":
            parsed[key] = [int(n) for n in value.split(SWEEP_SEPARATOR) if n]
        elif key in text:
            parsed[key] = value
        elif value == "":
            parsed[key] = None
        elif key in integers:
            parsed[key] = int(value)
        elif key == "passed":
            parsed[key] = value == "True"
        else:
            parsed[key] = float(value)

    return parsed


def write_combination(path: Path, ts, alphas, W, stats, fmt: OutputFormat) -> Path:
    """Write evaluated combinations, one column (CSV) or one object (JSON) per abscissa."""
    path = Path(path).expanduser()
    path.parent.mkdir(parents=True, exist_ok=True)

    if fmt == OutputFormat.JSON:
        records = [{"t": float(t), "alpha": float(a), "w": W[:, i].tolist()} for i, (t, a) in enumerate(zip(ts, alphas))]
        with path.open("w") as f:
            json.dump({"results": records, "stats": stats.serialize()}, f, indent=4)
        return path

    with path.open("w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow([f"w(t={t:.17g},alpha={a:.17g})" for t, a in zip(ts, alphas)])
        writer.writerows(W.tolist())

    return path

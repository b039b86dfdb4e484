"""Logging and console output utilities."""

from typing import TYPE_CHECKING

import numpy as np
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

if TYPE_CHECKING:
    from phi_combine.core.schemas import ResultRow, RunRecord, ScalingShift

# Initialize console
console = Console()

_quiet = False


def set_quiet(quiet: bool = True) -> None:
    """Silence info and warning messages."""
    global _quiet
    _quiet = quiet


def success(message: str) -> None:
    """Log a success message."""
    console.print(f"[bold green]✓ SUCCESS:[/bold green] {message}")


def error(message: str) -> None:
    """Log an error message."""
    console.print(f"[bold red]✗ ERROR:[/bold red] {message}")


def exception(message: str) -> None:
    """Log an error message with its traceback."""
    error(message)
    console.print_exception()


def warning(message: str) -> None:
    """Log a warning message."""
    if not _quiet:
        console.print(f"[bold yellow]! WARNING:[/bold yellow] {message}")


def info(message: str) -> None:
    """Log an information message."""
    if not _quiet:
        console.print(f"[bold blue]ℹ INFO:[/bold blue] {message}")


def display_parameters(params: "ScalingShift", label: str = None, costs: dict[float, int] = None):
    """Display the selected scaling and shift, with the predicted number of recovery sweeps per abscissa."""
    table = Table(show_header=True, header_style="bold cyan")
    table.add_column("Field", style="cyan")
    table.add_column("Value", style="green")

    table.add_row("s", f"{params.s:.6e}")
    table.add_row("xi*", f"{params.xi:.6e}")
    table.add_row("s0", f"{params.s0:.6e}")
    table.add_row("f(xi*)", f"{params.f_min:.6e}")
    table.add_row("m", str(params.m))
    table.add_row("r", str(params.r))
    table.add_row("tol", f"{params.tol:.3e}")

    for t, sweeps in (costs or {}).items():
        table.add_row(f"Recovery sweeps at t={t:g}", str(sweeps))

    title = f"[bold]Scaling and shift[/bold]: {label}" if label else "[bold]Scaling and shift[/bold]"
    console.print(Panel(table, title=title, border_style="cyan", padding=(1, 2)))


def display_run_record(stats: "RunRecord"):
    """Display evaluator telemetry."""
    table = Table(title="Run record")
    table.add_column("Property", style="cyan")
    table.add_column("Value", style="green")

    table.add_row("Effective s", str(stats.s_effective))
    table.add_row("Series length (S)", str(stats.series_len_S))
    table.add_row("Recovery sweeps", str(len(stats.series_lens_F)))
    table.add_row("Longest sweep", str(max(stats.series_lens_F, default=0)))
    table.add_row("Operator applications", str(stats.applies))
    table.add_row("Column products", str(stats.matvecs))

    console.print(table)
    console.print()


def display_vector(values: np.ndarray, title: str, limit: int = 10):
    """Display the leading entries of a result vector."""
    table = Table(show_header=True, header_style="bold cyan", title=title)
    table.add_column("Index", style="cyan", justify="right")
    table.add_column("Value", style="green", justify="right")

    for i, value in enumerate(values[:limit]):
        table.add_row(str(i), f"{value: .16e}")

    if len(values) > limit:
        table.add_row("…", f"({len(values) - limit} more)")

    console.print(table)


def display_results(rows: list["ResultRow"], title: str = None):
    """Display an experiment table."""
    table = Table(show_header=True, header_style="bold cyan")
    table.add_column("Case", style="cyan")
    table.add_column("t / h", style="magenta", justify="right")
    table.add_column("Rel. error", justify="right")
    table.add_column("Bound", style="dim", justify="right")
    table.add_column("Order", justify="right")
    table.add_column("s_eff", justify="right")
    table.add_column("Applies", justify="right")
    table.add_column("Time (s)", style="yellow", justify="right")

    for row in rows:
        error_style = "green" if row.passed else "bold red"
        table.add_row(
            row.case,
            f"{row.t:.3e}",
            f"[{error_style}]{row.error:.2e}[/{error_style}]",
            f"{row.bound:.0e}" if row.bound is not None else "",
            f"{row.order:.2f}" if row.order is not None else "",
            str(row.stats.s_effective),
            str(row.stats.applies),
            f"{row.seconds:.3f}",
        )

    if rows:
        console.print(Panel(table, title=f"[bold]{title or 'Results'}[/bold]", border_style="cyan", padding=(1, 2)))
    else:
        info("No rows were produced")


def display_experiments(experiments: dict[str, str]):
    """Display the registered experiments and their descriptions."""
    table = Table(show_header=True, header_style="bold cyan")
    table.add_column("Experiment", style="cyan")
    table.add_column("Description", style="green")

    for name, description in experiments.items():
        table.add_row(f"[bold]{name}[/bold]", description)

    console.print(Panel(table, title="[bold]Registered experiments[/bold]", border_style="cyan", padding=(1, 2)))


def display_sources(sources: list[str]):
    """Display the operator sources accepted in place of a .mtx path."""
    table = Table(show_header=True, header_style="bold cyan")
    table.add_column("Source", style="cyan")

    for source in sources:
        table.add_row(source)

    console.print(Panel(table, title="[bold]Operator sources[/bold]", border_style="cyan", padding=(1, 2)))

"""Rich formatting helpers."""

from __future__ import annotations

from pydantic import TypeAdapter
from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from ..count import CountScheme
from ..models import HodgeRow, Report, ResolutionReport

console = Console()


def format_verdict(ok: bool | None) -> str:
    """Format a check result with color."""
    if ok is None:
        return "[dim]-[/dim]"
    return "[green]✓[/green]" if ok else "[red]✗[/red]"


def format_resolution_table(report: Report) -> Table:
    """Create a Rich table with one row per resolution."""
    table = Table(title=f"Stringy E-functions: {report.scenario}")
    table.add_column("Resolution", style="bold")
    table.add_column("E_st")
    table.add_column("Polynomial", style="cyan")
    table.add_column("e_st", justify="right")
    table.add_column("h ≥ 0", justify="center")

    for res in report.resolutions:
        table.add_row(
            res.name,
            res.e_st,
            res.polynomiality,
            res.euler,
            format_verdict(res.hodge_nonnegative),
        )

    return table


def format_points_table(report: Report) -> Table:
    """Create a Rich table of stringy point counts and p-adic cross-checks."""
    table = Table(title="Stringy point counts")
    table.add_column("Resolution", style="bold")
    table.add_column("q", justify="right")
    table.add_column("s", justify="right", style="dim")
    table.add_column("N_st", justify="right")
    table.add_column("N_st / q^n", justify="right")
    table.add_column("p-adic", justify="right")
    table.add_column("", justify="center")

    for res in report.resolutions:
        for row in res.points:
            table.add_row(
                res.name,
                str(row.q),
                row.root or "",
                row.n_st,
                row.integral,
                row.padic or "-",
                format_verdict(row.padic_agrees),
            )

    return table


def format_agreement_table(report: Report) -> Table:
    """Create a Rich table for pairwise agreement verdicts."""
    table = Table(title="Resolution independence")
    table.add_column("First", style="bold")
    table.add_column("Second", style="bold")
    table.add_column("Agree", justify="center")
    table.add_column("Certificate", style="dim")

    for row in report.agreements:
        table.add_row(row.first, row.second, format_verdict(row.agree), row.certificate)
        for cleared in row.cleared:
            table.add_row(
                "",
                "",
                format_verdict(cleared.lhs == cleared.rhs),
                f"q = {cleared.q}: {cleared.lhs} = {cleared.rhs}",
            )

    return table


def format_hodge_diamond(rows: list[HodgeRow], dimension: int) -> Table:
    """Lay out h^{p,q} as a diamond, h^{0,0} on top."""
    h = {(row.i, row.j): row.h for row in rows}
    n = max([dimension, *(max(row.i, row.j) for row in rows)])
    table = Table(show_header=False, box=None, padding=(0, 1))
    for _ in range(2 * n + 1):
        table.add_column(justify="center")

    for total in range(2 * n + 1):
        cells = [""] * (2 * n + 1)
        for p in range(max(0, total - n), min(total, n) + 1):
            value = h.get((p, total - p), 0)
            cells[n - total + 2 * p] = f"[red]{value}[/red]" if value < 0 else str(value)
        table.add_row(*cells)

    return table


def format_hodge_panel(res: ResolutionReport, dimension: int) -> Panel:
    """Create a Rich panel holding a stringy Hodge diamond."""
    if res.hodge is None:
        body = f"[yellow]No Hodge numbers: E_st is {res.polynomiality}[/yellow]"
        return Panel(body, title=res.name, expand=False)
    return Panel(format_hodge_diamond(res.hodge, dimension), title=res.name, expand=False)


def format_scheme_table(schemes: dict[str, CountScheme], q: int | None = None) -> Table:
    """Create a Rich table for catalog schemes."""
    table = Table(title="Catalog schemes", box=box.SIMPLE)
    table.add_column("Name", style="bold")
    table.add_column("Expression", style="cyan")
    table.add_column("N(q)")
    table.add_column("Gauge", justify="center")
    if q is not None:
        table.add_column(f"N({q})", justify="right")

    for name, scheme in schemes.items():
        row = [name, str(scheme), scheme.count_string, format_verdict(scheme.has_gauge_form)]
        if q is not None:
            row.append(str(scheme.count.eval(q)))
        table.add_row(*row)

    return table


def print_report(report: Report) -> None:
    """Print every table of a report to the console."""
    console.print(format_resolution_table(report))
    if any(res.points for res in report.resolutions):
        console.print(format_points_table(report))
    if report.agreements:
        console.print(format_agreement_table(report))
    for note in report.notes:
        console.print(f"[yellow]⚠️  {note}[/yellow]")
    verdict = "all checks agree" if report.all_agree else "disagreement found"
    console.print(
        f"[dim]{report.mode} {report.scenario}: {verdict} "
        f"(input {report.input_hash[:12]})[/dim]"
    )


def render_json(reports: list[Report]) -> str:
    """One report as an object, several as an array."""
    if len(reports) == 1:
        return reports[0].model_dump_json(indent=2)
    return TypeAdapter(list[Report]).dump_json(reports, indent=2).decode("utf-8")


def print_success(message: str) -> None:
    """Print success message."""
    console.print(f"[green]✓[/green] {message}")


def print_error(message: str) -> None:
    """Print error message."""
    console.print(f"[red]✗[/red] {message}", style="red")


def print_info(message: str) -> None:
    """Print info message."""
    console.print(f"[blue]ℹ[/blue] {message}")

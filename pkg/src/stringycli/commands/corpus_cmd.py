"""Bundled scenario listing."""

import json

import click
from rich.table import Table

from ..config import Config
from ..exceptions import StringyError
from ..scenario import load_scenario
from ..utils.formatting import console, print_error, print_info


@click.command(name="corpus")
@click.option("--json", "output_json", is_flag=True, help="Output as JSON")
def corpus(output_json: bool) -> None:
    """List the bundled scenarios.

    \b
    Examples:
        stringy corpus
        STRINGY_CORPUS=./scenarios stringy corpus --json
    """
    rows = []
    for path in Config.corpus_files():
        try:
            s = load_scenario(path)
        except StringyError as e:
            print_error(f"{path.name}: {e}")
            continue
        rows.append(
            {
                "file": path.name,
                "name": s.name,
                "dimension": s.dimension,
                "den": s.den,
                "resolutions": [r.name for r in s.resolutions],
                "description": s.description or "",
            }
        )

    if output_json:
        click.echo(json.dumps(rows, indent=2, ensure_ascii=False))
        return
    if not rows:
        print_info(f"No scenarios in {Config.settings().corpus_dir}")
        return

    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("File", style="dim")
    table.add_column("Name", style="bold")
    table.add_column("n", justify="right")
    table.add_column("d", justify="right")
    table.add_column("Resolutions", style="cyan")
    table.add_column("Description")
    for row in rows:
        table.add_row(
            row["file"],
            row["name"],
            str(row["dimension"]),
            str(row["den"]),
            ", ".join(row["resolutions"]),
            row["description"],
        )
    console.print(table)

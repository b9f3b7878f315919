"""Stringy Hodge number commands."""

import json
import sys

import click

from ..config import Config
from ..exceptions import EXIT_INPUT_ERROR, StringyError
from ..harness import run_compute
from ..scenario import load_scenario
from ..utils.formatting import console, format_hodge_panel, print_error


@click.command(name="hodge")
@click.option("--scenario", "-s", required=True, help="Scenario file or bundled scenario name")
@click.option("--json", "output_json", is_flag=True, help="Output as JSON")
@click.option("--debug", is_flag=True, help="Enable debug output")
def hodge(scenario: str, output_json: bool, debug: bool) -> None:
    """Show stringy Hodge diamonds, one per resolution.

    \b
    Examples:
        stringy hodge --scenario a1_cone
        stringy hodge -s minimal_pair --json
    """
    try:
        report = run_compute(load_scenario(Config.resolve_scenario(scenario)), debug=debug)

        if output_json:
            data = {
                res.name: None
                if res.hodge is None
                else [row.model_dump() for row in res.hodge]
                for res in report.resolutions
            }
            click.echo(json.dumps(data, indent=2))
            return

        for res in report.resolutions:
            console.print(format_hodge_panel(res, report.dimension))
            if res.hodge_nonnegative is False:
                console.print("[yellow]⚠️  negative stringy Hodge numbers[/yellow]")

    except StringyError as e:
        print_error(str(e))
        sys.exit(EXIT_INPUT_ERROR)
    except Exception as e:
        print_error(f"Failed to compute Hodge numbers: {e}")
        if debug:
            raise
        sys.exit(EXIT_INPUT_ERROR)

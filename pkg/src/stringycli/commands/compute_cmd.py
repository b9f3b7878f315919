"""Stringy E-function computation commands."""

import sys
from pathlib import Path

import click

from ..config import Config
from ..exceptions import EXIT_DISAGREEMENT, EXIT_INPUT_ERROR, StringyError
from ..harness import run_compute
from ..scenario import load_scenario
from ..utils.formatting import print_error, print_report, print_success, render_json


@click.command(name="compute")
@click.option(
    "--scenario", "-s", "scenarios", multiple=True, required=True,
    help="Scenario file or bundled scenario name (repeatable)",
)
@click.option(
    "--format", "fmt", type=click.Choice(["table", "json"]), default="table",
    help="Output format",
)
@click.option(
    "--output", "-o", type=click.Path(dir_okay=False, path_type=Path),
    help="Also write the JSON report to this file",
)
@click.option("--debug", is_flag=True, help="Enable debug output")
def compute(scenarios: tuple[str, ...], fmt: str, output: Path | None, debug: bool) -> None:
    """Compute E_st, polynomiality and stringy Hodge numbers.

    \b
    Examples:
        stringy compute --scenario blowup_a2
        stringy compute -s third_quotient --format json
    """
    try:
        reports = [
            run_compute(load_scenario(Config.resolve_scenario(name)), debug=debug)
            for name in scenarios
        ]

        if fmt == "json":
            click.echo(render_json(reports))
        else:
            for report in reports:
                print_report(report)
        if output:
            output.write_text(render_json(reports) + "\n", encoding="utf-8")
            if fmt != "json":
                print_success(f"Report written to {output}")

        if not all(report.all_agree for report in reports):
            sys.exit(EXIT_DISAGREEMENT)

    except StringyError as e:
        print_error(str(e))
        sys.exit(EXIT_INPUT_ERROR)
    except Exception as e:
        print_error(f"Computation failed: {e}")
        if debug:
            raise
        sys.exit(EXIT_INPUT_ERROR)

"""Resolution-independence verification commands."""

import sys
from fractions import Fraction
from pathlib import Path

import click

from ..config import Config
from ..exceptions import EXIT_DISAGREEMENT, EXIT_INPUT_ERROR, StringyError
from ..harness import run_verify
from ..scenario import load_scenario
from ..utils.formatting import (
    print_error,
    print_info,
    print_report,
    print_success,
    render_json,
)
from ..utils.options import int_list, pair_roots, rational_list


@click.command(name="verify")
@click.option(
    "--scenario", "-s", "scenarios", multiple=True,
    help="Scenario file or bundled scenario name (repeatable)",
)
@click.option("--corpus", is_flag=True, help="Verify every bundled scenario")
@click.option("--q", "qs", callback=int_list, help="Comma-separated q values, e.g. 2,3,5,7")
@click.option(
    "--root", "roots", callback=rational_list,
    help="Exact d-th roots of the --q values, in the same order",
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
def verify(
    scenarios: tuple[str, ...],
    corpus: bool,
    qs: list[int] | None,
    roots: list[Fraction] | None,
    fmt: str,
    output: Path | None,
    debug: bool,
) -> None:
    """Check that all resolutions of a scenario give the same stringy invariants.

    Without --q the scenario's own check points are used, else STRINGY_QS.

    \b
    Examples:
        stringy verify --scenario blowup_a2 --q 2,3,5,7
        stringy verify -s third_quotient --q 8,27 --root 2,3
        stringy verify --corpus --format json --output corpus.json
    """
    paths = [Config.resolve_scenario(name) for name in scenarios]
    if corpus:
        paths += Config.corpus_files()
    if not paths:
        raise click.UsageError("give --scenario or --corpus")
    root_map = pair_roots(qs, roots)

    try:
        reports = []
        for path in paths:
            if debug:
                print_info(f"Verifying {path}")
            reports.append(run_verify(load_scenario(path), qs, root_map, debug=debug))

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
        print_error(f"Verification failed: {e}")
        if debug:
            raise
        sys.exit(EXIT_INPUT_ERROR)

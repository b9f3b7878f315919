"""Point counting commands."""

import json
import sys

import click

from ..count import CATALOG, brute_force_count, build_scheme, catalog, count_points, e_polynomial_of
from ..exceptions import EXIT_DISAGREEMENT, EXIT_INPUT_ERROR, StringyError
from ..utils.formatting import console, format_scheme_table, print_error, print_success
from ..utils.options import int_list


@click.command(name="count")
@click.option("--scheme", help="Scheme expression or catalog name, e.g. 'blowup_origin_affine(2)'")
@click.option("--q", "qs", callback=int_list, help="Comma-separated field sizes")
@click.option("--brute", is_flag=True, help="Cross-check by exhaustive enumeration (prime q <= 13)")
@click.option("--catalog", "show_catalog", is_flag=True, help="List the scheme catalog")
@click.option("--json", "output_json", is_flag=True, help="Output as JSON")
@click.option("--debug", is_flag=True, help="Enable debug output")
def count(
    scheme: str | None,
    qs: list[int] | None,
    brute: bool,
    show_catalog: bool,
    output_json: bool,
    debug: bool,
) -> None:
    """Count F_q-points of catalog schemes.

    \b
    Examples:
        stringy count --scheme 'blowup_origin_affine(2)' --q 3 --brute
        stringy count --scheme p1_times_p1 --q 2,3,5
        stringy count --catalog --q 4
    """
    try:
        if show_catalog:
            q = qs[0] if qs else None
            if output_json:
                data = {name: str(s.count.as_expr()) for name, s in catalog().items()}
                click.echo(json.dumps(data, indent=2))
            else:
                console.print(format_scheme_table(catalog(), q))
            return
        if scheme is None:
            raise click.UsageError("give --scheme or --catalog")

        s = build_scheme(CATALOG.get(scheme, scheme))
        rows = []
        mismatch = False
        for q in qs or []:
            row = {"q": q, "count": count_points(s, q)}
            if brute:
                row["brute"] = brute_force_count(s, q)
                mismatch |= row["brute"] != row["count"]
                if debug:
                    console.print(f"[dim]← enumerated {row['brute']} points over F_{q}[/dim]")
            rows.append(row)

        if output_json:
            data = {
                "scheme": str(s),
                "N": s.count_string,
                "E": str(e_polynomial_of(s)),
                "dimension": s.dimension,
                "gauge_form": s.has_gauge_form,
                "counts": rows,
            }
            click.echo(json.dumps(data, indent=2))
        else:
            console.print(f"[bold]{s}[/bold]")
            console.print(f"  N(q) = {s.count_string}")
            console.print(f"  E(u, v) = {e_polynomial_of(s)}")
            for row in rows:
                line = f"  N({row['q']}) = {row['count']}"
                if "brute" in row:
                    mark = "[green]✓[/green]" if row["brute"] == row["count"] else "[red]✗[/red]"
                    line += f"  brute force {row['brute']} {mark}"
                console.print(line)
            if brute and rows and not mismatch:
                print_success("brute force matches N(q)")

        if mismatch:
            sys.exit(EXIT_DISAGREEMENT)

    except StringyError as e:
        print_error(str(e))
        sys.exit(EXIT_INPUT_ERROR)
    except click.ClickException:
        raise
    except Exception as e:
        print_error(f"Count failed: {e}")
        if debug:
            raise
        sys.exit(EXIT_INPUT_ERROR)

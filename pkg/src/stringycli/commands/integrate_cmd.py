"""p-adic monomial integration commands."""

import json
import sys
from fractions import Fraction
from math import lcm

import click
import sympy
from pydantic import ValidationError

from ..config import Config
from ..exceptions import EXIT_DISAGREEMENT, EXIT_INPUT_ERROR, StringyError
from ..padic import (
    LocalField,
    MonomialForm,
    convergence_check,
    enumeration_oracle,
    monomial_integral_cell,
)
from ..utils.formatting import console, print_error, print_info, print_success
from ..utils.options import rational_list


def _field(q: int, den: int, root: Fraction | None) -> LocalField:
    """LocalField over q, falling back to an integral d-th root."""
    if den == 1:
        return LocalField(q=q)
    if root is None:
        s, exact = sympy.integer_nthroot(q, den)
        if exact:
            root = Fraction(int(s))
    return LocalField(q=q, den=den, root=root)


@click.command(name="integrate")
@click.option(
    "--exp", "exponents", callback=rational_list, required=True,
    help="Exponents k_i of the form, e.g. -1/2,1",
)
@click.option("--r", "r", type=click.IntRange(min=1), default=1, help="Pluricanonical degree r")
@click.option("--q", "q", type=click.IntRange(min=2), required=True, help="Residue field size")
@click.option("--root", type=str, help="Exact root s with s^d = q for fractional exponents")
@click.option(
    "--domain", default="m",
    help="m or R, or one flag per coordinate such as m,R",
)
@click.option("--n", "n", type=click.IntRange(min=0), help="Dimension (default: number of exponents)")
@click.option("--oracle", is_flag=True, help="Bracket the result by valuation enumeration")
@click.option("--cutoff", type=click.IntRange(min=1), help="Oracle cutoff (default STRINGY_CUTOFF)")
@click.option("--json", "output_json", is_flag=True, help="Output as JSON")
@click.option("--debug", is_flag=True, help="Enable debug output")
def integrate(
    exponents: list[Fraction],
    r: int,
    q: int,
    root: str | None,
    domain: str,
    n: int | None,
    oracle: bool,
    cutoff: int | None,
    output_json: bool,
    debug: bool,
) -> None:
    """Integrate |prod x_i^k_i (dx)^r|^(1/r) over a polydisc.

    \b
    Examples:
        stringy integrate --exp -1/2,1 --r 1 --q 9 --root 3 --domain m
        stringy integrate --exp 1 --q 5 --domain R
        stringy integrate --exp 7/3 --q 27 --oracle
    """
    try:
        form = MonomialForm(
            r=r, exponents=tuple(exponents), dimension=len(exponents) if n is None else n
        )
        check = convergence_check(form)
        if not check.converges:
            print_error(f"Integral diverges: exponent {check.index} has k/r <= -1")
            sys.exit(EXIT_DISAGREEMENT)

        den = lcm(*(k.denominator for k in form.normalized))
        field = _field(q, den, None if root is None else Fraction(root))
        flags = domain.split(",") if "," in domain else domain
        value = monomial_integral_cell(form, field, flags)
        if debug:
            console.print(f"[dim]← closed form {value.symbolic} at {field.symbol} = {field.generator}[/dim]")

        bracket = None
        if oracle:
            if flags != "m":
                raise click.BadParameter("the oracle integrates over m^n only", param_hint="--domain")
            bracket = enumeration_oracle(form, field, cutoff or Config.settings().oracle_cutoff)

        if output_json:
            data = {
                "value": str(value),
                "symbolic": str(value.symbolic),
                "den": den,
                "root": None if field.root is None else str(field.root),
            }
            if bracket is not None:
                data["oracle"] = {
                    "partial_sum": str(bracket.partial_sum),
                    "tail_bound": str(bracket.tail_bound),
                    "cutoff": bracket.cutoff,
                    "brackets": bracket.brackets(value.value),
                }
            click.echo(json.dumps(data, indent=2))
        else:
            console.print(f"[bold]{value}[/bold]  =  {value.symbolic}")
            if bracket is not None:
                if bracket.brackets(value.value):
                    print_success(
                        f"oracle brackets the closed form (cutoff {bracket.cutoff}, "
                        f"tail {float(bracket.tail_bound):.3g})"
                    )
                else:
                    print_error("oracle does not bracket the closed form")
            elif den > 1:
                print_info(f"evaluated with s = {field.root}, s^{den} = {q}")

        if bracket is not None and not bracket.brackets(value.value):
            sys.exit(EXIT_DISAGREEMENT)

    except (StringyError, ValidationError) as e:
        print_error(str(e))
        sys.exit(EXIT_INPUT_ERROR)
    except click.ClickException:
        raise
    except Exception as e:
        print_error(f"Integration failed: {e}")
        if debug:
            raise
        sys.exit(EXIT_INPUT_ERROR)

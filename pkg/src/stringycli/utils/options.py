"""Click callbacks for comma-separated exact values."""

from __future__ import annotations

from fractions import Fraction

import click


def int_list(ctx: click.Context, param: click.Parameter, value: str | None) -> list[int] | None:
    """Parse "2,3,5,7"."""
    if value is None:
        return None
    try:
        return [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise click.BadParameter(f"{value!r} is not a comma-separated list of integers")


def rational_list(
    ctx: click.Context, param: click.Parameter, value: str | None
) -> list[Fraction] | None:
    """Parse "-1/2,1,7/3" into exact rationals."""
    if value is None:
        return None
    try:
        return [Fraction(part.strip()) for part in value.split(",") if part.strip()]
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"{value!r} is not a comma-separated list of rationals p/q")


def pair_roots(qs: list[int] | None, roots: list[Fraction] | None) -> dict[int, Fraction]:
    """Match --root values to --q values position by position."""
    if not roots:
        return {}
    if not qs or len(qs) != len(roots):
        raise click.BadParameter("give one --root per --q value", param_hint="--root")
    return dict(zip(qs, roots))

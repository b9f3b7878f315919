"""Main CLI entry point."""

import click

from . import __version__
from .commands.compute_cmd import compute
from .commands.corpus_cmd import corpus
from .commands.count_cmd import count
from .commands.hodge_cmd import hodge
from .commands.integrate_cmd import integrate
from .commands.verify_cmd import verify


@click.group()
@click.version_option(version=__version__, prog_name="stringy")
@click.help_option("-h", "--help")
def cli() -> None:
    """stringy - exact stringy E-functions, p-adic integrals and point counts.

    \b
    Examples:
        # E_st and stringy Hodge numbers of a bundled scenario
        stringy compute --scenario blowup_a2

        # Resolution independence at several q
        stringy verify --scenario blowup_a2 --q 2,3,5,7

        # Fractional discrepancies need exact roots
        stringy verify --scenario third_quotient --q 8,27 --root 2,3

        # Monomial p-adic integral with an oracle bracket
        stringy integrate --exp -1/2,1 --q 9 --root 3 --oracle

        # Point counts, checked by enumeration
        stringy count --scheme 'blowup_origin_affine(2)' --q 3 --brute

    \b
    Exit codes:
        0  every check agrees
        1  a disagreement (or divergence) was found
        2  invalid input
    """
    pass


cli.add_command(compute)
cli.add_command(verify)
cli.add_command(hodge)
cli.add_command(integrate)
cli.add_command(count)
cli.add_command(corpus)


if __name__ == "__main__":
    cli()

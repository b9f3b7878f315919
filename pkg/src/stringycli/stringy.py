"""Stringy E-functions, stringy Hodge numbers and stringy point counts."""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction
from math import lcm

from pydantic import BaseModel, ConfigDict, Field

from .arith import EPoly, RatFunc, Verdict, is_polynomial, resolve_root
from .exceptions import DimensionMismatchError, MissingCountError, NotPolynomialError
from .strata import ResolutionData, bits, validate_resolution


class StringyE(BaseModel):
    """E_st(X; u, v) as an uncancelled rational function."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: RatFunc
    dimension: int
    den: int = 1

    def __str__(self) -> str:
        return str(self.value)


class StringyHodgeTable(BaseModel):
    """h^{i,j}_st read off a polynomial E_st."""

    model_config = ConfigDict(frozen=True)

    entries: dict[tuple[int, int], int] = Field(default_factory=dict)

    def get(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    @property
    def negative(self) -> list[tuple[int, int]]:
        return sorted(key for key, h in self.entries.items() if h < 0)

    @property
    def is_nonnegative(self) -> bool:
        return not self.negative

    @property
    def degree(self) -> int:
        return max((max(key) for key in self.entries), default=0)


class Agreement(BaseModel):
    """Equality verdict for two stringy E-functions, with its certificate."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    agree: bool
    certificate: str
    difference: EPoly


def stringy_E(r: ResolutionData) -> StringyE:
    """Sum over strata of E(D_J°) * prod_{j in J} (uv - 1) / ((uv)^(a_j+1) - 1)."""
    validate_resolution(r)
    table = r.open_strata()
    # crepant divisors contribute the factor 1 and never enter the denominator
    live = [(i, a) for i, a in enumerate(r.discrepancies) if a != 0]
    on_divisor = EPoly.w_power(1) - 1
    off_divisor = {i: EPoly.w_power(a + 1) - 1 for i, a in live}

    numer = EPoly()
    for mask, poly in table.entries.items():
        term = poly
        for i, _ in live:
            term = term * (on_divisor if mask >> i & 1 else off_divisor[i])
        numer = numer + term
    value = RatFunc(numer, [a + 1 for _, a in live])
    return StringyE(value=value, dimension=r.dimension, den=r.den)


def stringy_hodge_numbers(e: StringyE) -> StringyHodgeTable:
    """h^{i,j}_st = (-1)^(i+j) * coeff of u^i v^j; negative values are kept."""
    result = is_polynomial(e.value, 1)
    if result.verdict is not Verdict.POLYNOMIAL:
        raise NotPolynomialError(result.label)
    entries = {(i, j): (-1) ** (i + j) * c for (i, j), c in result.poly.terms.items()}
    return StringyHodgeTable(entries=entries)


def _q_power(s: Fraction, x: Fraction, den: int) -> Fraction:
    """q^x where s^den = q and x is in (1/den)Z."""
    k = x * den
    return s ** int(k)


def stringy_point_count(
    r: ResolutionData,
    counts: Mapping[int, int | Fraction],
    q: int | Fraction,
    root: int | Fraction | None = None,
    *,
    den: int | None = None,
) -> Fraction:
    """N_st(q) = sum_J |D_J°(F_q)| prod_{j in J} (q - 1) / (q^(a_j+1) - 1)."""
    validate_resolution(r)
    ctx = den or r.den
    if ctx % r.den:
        raise ValueError(f"context denominator {ctx} is not a multiple of {r.den}")
    for mask in r.open_strata().entries:
        if mask not in counts:
            raise MissingCountError(mask)
    s = resolve_root(q, ctx, root)
    q = Fraction(q)
    factors = [
        Fraction(1) if a == 0 else (q - 1) / (_q_power(s, a + 1, ctx) - 1)
        for a in r.discrepancies
    ]
    total = Fraction(0)
    for mask, count in counts.items():
        term = Fraction(count)
        for i in bits(mask):
            term *= factors[i]
        total += term
    return total


def stringy_euler_number(r: ResolutionData) -> Fraction:
    """The u = v = 1 limit: sum_J e(D_J°) prod_{j in J} 1 / (a_j + 1)."""
    validate_resolution(r)
    total = Fraction(0)
    for mask, poly in r.open_strata().entries.items():
        term = Fraction(poly.evaluate_at_one())
        for i in bits(mask):
            term /= r.discrepancies[i] + 1
        total += term
    return total


def _first_monomial(diff: EPoly) -> str:
    (i, j), coeff = min(diff.terms.items(), key=lambda kv: (sum(kv[0]), kv[0][0]))
    return f"{coeff} * u^{Fraction(i, diff.den)} v^{Fraction(j, diff.den)}"


def resolutions_agree(r1: ResolutionData, r2: ResolutionData) -> Agreement:
    """Compare E_st from two resolutions by exact cross-multiplication."""
    if r1.dimension != r2.dimension:
        raise DimensionMismatchError(
            f"{r1.name!r} has dimension {r1.dimension}, {r2.name!r} has {r2.dimension}"
        )
    e1, e2 = stringy_E(r1), stringy_E(r2)
    diff = e1.value.cross_difference(e2.value)
    if not diff:
        return Agreement(
            agree=True, certificate="cross-multiplied difference vanishes", difference=diff
        )
    return Agreement(
        agree=False,
        certificate=f"first differing monomial {_first_monomial(diff)}",
        difference=diff,
    )


def cleared_identity(
    r1: ResolutionData,
    counts1: Mapping[int, int | Fraction],
    r2: ResolutionData,
    counts2: Mapping[int, int | Fraction],
    q: int | Fraction,
    root: int | Fraction | None = None,
    *,
    den: int | None = None,
) -> tuple[Fraction, Fraction]:
    """Both sides of the point-count identity with every denominator multiplied out.

    Side one is prod_{j'} (q^(b_j'+1) - 1) * sum_J |D_J°| prod_{j in J} (q - 1)
    prod_{j not in J} (q^(a_j+1) - 1), side two the same with the roles swapped.
    """
    ctx = den or lcm(r1.den, r2.den)
    if ctx % lcm(r1.den, r2.den):
        raise ValueError(f"context denominator {ctx} does not cover both resolutions")
    s = resolve_root(q, ctx, root)
    q = Fraction(q)

    def side(r: ResolutionData, counts: Mapping[int, int | Fraction]) -> tuple[Fraction, Fraction]:
        powers = [_q_power(s, a + 1, ctx) - 1 for a in r.discrepancies]
        total = Fraction(0)
        for mask, count in counts.items():
            term = Fraction(count)
            for i, power in enumerate(powers):
                term *= (q - 1) if mask >> i & 1 else power
            total += term
        product = Fraction(1)
        for power in powers:
            product *= power
        return total, product

    sum1, prod1 = side(r1, counts1)
    sum2, prod2 = side(r2, counts2)
    return prod2 * sum1, prod1 * sum2

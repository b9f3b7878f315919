"""Exact p-adic integration of monomial pluricanonical forms.

Only q-dependent formulas are evaluated; the local field itself is never built.
The Haar measure on R is normalized to 1, so the maximal ideal m has measure
1/q and the shell m^v minus m^(v+1) has measure q^-v - q^-(v+1).
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from enum import StrEnum
from fractions import Fraction

import sympy
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .exceptions import DivergentIntegralError, MissingCountError, MissingRootError
from .strata import Rational, bits


def _rational(x: Fraction) -> sympy.Rational:
    return sympy.Rational(x.numerator, x.denominator)


class Domain(StrEnum):
    """Integration domain of one coordinate."""

    M = "m"
    R = "R"


class LocalField(BaseModel):
    """Residue cardinality q, context denominator d and an exact root s = q^(1/d)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    q: int = Field(ge=2)
    den: int = Field(default=1, ge=1)
    root: Rational | None = None

    @field_validator("q")
    @classmethod
    def prime_power(cls, q: int) -> int:
        if len(sympy.factorint(q)) != 1:
            raise ValueError(f"q = {q} is not a prime power")
        return q

    @model_validator(mode="after")
    def check_root(self) -> LocalField:
        if self.root is not None and self.root ** self.den != self.q:
            raise MissingRootError(f"{self.root} is not an exact {self.den}-th root of {self.q}")
        return self

    @property
    def symbol(self) -> sympy.Symbol:
        return sympy.Symbol("q" if self.den == 1 else "s", positive=True)

    @property
    def generator(self) -> Fraction:
        """The value substituted for :attr:`symbol`."""
        if self.den == 1:
            return Fraction(self.q)
        if self.root is None:
            raise MissingRootError(f"q = {self.q} needs an exact {self.den}-th root")
        return self.root

    def _steps(self, x: Fraction) -> int:
        k = Fraction(x) * self.den
        if k.denominator != 1:
            raise MissingRootError(f"q^{x} needs a {k.denominator * self.den}-th root of {self.q}")
        return int(k)

    def power(self, x: Fraction | int) -> Fraction:
        """Exact q^x."""
        x = Fraction(x)
        if x.denominator == 1:
            return Fraction(self.q) ** x.numerator
        return self.generator ** self._steps(x)

    def symbolic_power(self, x: Fraction | int) -> sympy.Expr:
        x = Fraction(x)
        if x.denominator == 1 and self.den == 1:
            return self.symbol ** x.numerator
        return self.symbol ** self._steps(x)


class MonomialForm(BaseModel):
    """prod x_i^(k_i) (dx_1 ^ ... ^ dx_n)^(tensor r) on n coordinates."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    r: int = Field(default=1, ge=1)
    exponents: tuple[Rational, ...] = ()
    dimension: int = Field(ge=0)

    @model_validator(mode="after")
    def fits(self) -> MonomialForm:
        if len(self.exponents) > self.dimension:
            raise ValueError(
                f"{len(self.exponents)} exponents do not fit in dimension {self.dimension}"
            )
        return self

    @property
    def normalized(self) -> list[Fraction]:
        """k_i / r, the exponents of |x_i| in |omega|^(1/r)."""
        return [Fraction(k) / self.r for k in self.exponents]

    def tensor_power(self, s: int) -> MonomialForm:
        """omega^(tensor s), an rs-pluricanonical form."""
        return MonomialForm(
            r=self.r * s, exponents=tuple(s * k for k in self.exponents), dimension=self.dimension
        )

    def restricted(self, indices: Iterable[int]) -> MonomialForm:
        return MonomialForm(
            r=self.r, exponents=tuple(self.exponents[i] for i in indices), dimension=self.dimension
        )


class Convergence(BaseModel):
    model_config = ConfigDict(frozen=True)

    converges: bool
    index: int | None = None


class PAdicValue(BaseModel):
    """An exact integral together with its closed form in q (or s = q^(1/d))."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: Rational
    symbolic: sympy.Expr
    formal: bool = False

    def __str__(self) -> str:
        return f"{self.value.numerator}/{self.value.denominator}"


class OracleResult(BaseModel):
    """Partial sum over valuation profiles and the exact remainder beyond the cutoff."""

    model_config = ConfigDict(frozen=True)

    partial_sum: Rational
    tail_bound: Rational
    cutoff: int

    def brackets(self, value: Fraction) -> bool:
        return self.partial_sum <= value <= self.partial_sum + self.tail_bound


def convergence_check(f: MonomialForm) -> Convergence:
    """Converges iff k_i / r > -1 for every i."""
    for i, kappa in enumerate(f.normalized):
        if kappa <= -1:
            return Convergence(converges=False, index=i)
    return Convergence(converges=True)


def _require_convergence(f: MonomialForm) -> None:
    result = convergence_check(f)
    if not result.converges:
        raise DivergentIntegralError(result.index)


def _domains(domain: Domain | str | Sequence[Domain | str], n: int) -> list[Domain]:
    if isinstance(domain, str):
        return [Domain(domain)] * n
    domains = [Domain(d) for d in domain]
    if len(domains) != n:
        raise ValueError(f"{len(domains)} domain flags for {n} coordinates")
    return domains


def _coordinate_factor(
    field: LocalField, kappa: Fraction | None, domain: Domain
) -> tuple[Fraction, sympy.Expr]:
    """Integral of |x|^kappa over m or R (kappa None means no pole or zero)."""
    q = Fraction(field.q)
    qs = field.symbolic_power(1)
    if kappa is None:
        if domain is Domain.M:
            return 1 / q, 1 / qs
        return Fraction(1), sympy.Integer(1)
    tail = field.power(kappa + 1) - 1
    tail_s = field.symbolic_power(kappa + 1) - 1
    if domain is Domain.M:
        return (q - 1) / (q * tail), (qs - 1) / (qs * tail_s)
    return (q - 1) * field.power(kappa) / tail, (qs - 1) * field.symbolic_power(kappa) / tail_s


def monomial_integral_cell(
    f: MonomialForm, field: LocalField, domain: Domain | str | Sequence[Domain | str] = Domain.M
) -> PAdicValue:
    """Integral of |omega|^(1/r) over the polydisc (m^n by default)."""
    _require_convergence(f)
    kappas: list[Fraction | None] = list(f.normalized)
    kappas += [None] * (f.dimension - len(kappas))
    value, expr = Fraction(1), sympy.Integer(1)
    for kappa, flag in zip(kappas, _domains(domain, f.dimension)):
        factor, factor_s = _coordinate_factor(field, kappa, flag)
        value *= factor
        expr *= factor_s
    return PAdicValue(value=value, symbolic=expr)


def local_fiber_integral(
    f: MonomialForm, field: LocalField, incident: Iterable[int]
) -> PAdicValue:
    """Integral over the residue disc of a point lying on exactly the divisors in ``incident``."""
    incident = sorted(set(incident))
    kappas = f.normalized
    for i in incident:
        if kappas[i] <= -1:
            raise DivergentIntegralError(i)
    return monomial_integral_cell(f.restricted(incident), field)


def global_integral(
    f: MonomialForm,
    field: LocalField,
    counts: Mapping[int, int | Fraction],
    required: Iterable[int] = (0,),
) -> PAdicValue:
    """q^-n sum_J |D_J°(F_q)| prod_{j in J} (q - 1) / (q^(a_j/r + 1) - 1)."""
    _require_convergence(f)
    for mask in required:
        if mask not in counts:
            raise MissingCountError(mask)
    limit = 1 << len(f.exponents)
    q = Fraction(field.q)
    qs = field.symbolic_power(1)
    factors = []
    for kappa in f.normalized:
        tail = field.power(kappa + 1) - 1
        tail_s = field.symbolic_power(kappa + 1) - 1
        factors.append(((q - 1) / tail, (qs - 1) / tail_s))

    value, expr = Fraction(0), sympy.Integer(0)
    for mask, count in sorted(counts.items()):
        if not 0 <= mask < limit:
            raise ValueError(f"stratum mask {mask:#b} names an unknown divisor")
        term = Fraction(count)
        term_s = _rational(term)
        for i in bits(mask):
            term *= factors[i][0]
            term_s *= factors[i][1]
        value += term
        expr += term_s
    scale = field.power(-f.dimension)
    return PAdicValue(value=value * scale, symbolic=expr * qs ** (-f.dimension))


def gauge_integral(
    field: LocalField, count_N: int, n: int, formal: bool = False
) -> PAdicValue:
    """|X(F_q)| / q^n, the integral of a gauge form."""
    qs = field.symbolic_power(1)
    return PAdicValue(
        value=Fraction(count_N) * field.power(-n),
        symbolic=sympy.Integer(count_N) * qs ** (-n),
        formal=formal,
    )


def enumeration_oracle(
    f: MonomialForm, field: LocalField, cutoff: int = 64
) -> OracleResult:
    """Sum the integrand over valuation profiles with every valuation <= cutoff.

    |x|^kappa is constant on the shell of valuation v, so each coordinate contributes
    sum_v q^(-v kappa) vol(shell_v); the profile sum is the product over coordinates.
    """
    _require_convergence(f)
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    kappas = list(f.normalized)
    kappas += [Fraction(0)] * (f.dimension - len(kappas))

    one_minus = 1 - Fraction(1, field.q)
    partials, totals = [], []
    for kappa in kappas:
        partial = Fraction(0)
        for v in range(1, cutoff + 1):
            shell = field.power(-v) - field.power(-v - 1)
            partial += field.power(-v * kappa) * shell
        ratio = field.power(-(kappa + 1))
        tail = one_minus * ratio ** (cutoff + 1) / (1 - ratio)
        partials.append(partial)
        totals.append(partial + tail)

    partial_sum, total = Fraction(1), Fraction(1)
    for p, t in zip(partials, totals):
        partial_sum *= p
        total *= t
    return OracleResult(partial_sum=partial_sum, tail_bound=total - partial_sum, cutoff=cutoff)


def symbolic_value(value: PAdicValue, field: LocalField) -> Fraction:
    """Evaluate the symbolic form at the field's generator."""
    result = sympy.Rational(value.symbolic.subs(field.symbol, _rational(field.generator)))
    return Fraction(int(result.p), int(result.q))

"""Exact arithmetic for E-polynomials and the rational functions stringy E-functions live in.

An ``EPoly`` is a sparse polynomial in ``u^(1/d)`` and ``v^(1/d)``. Exponents are
stored as integer numerators over the single context denominator ``d``, so all
arithmetic stays integral. A ``RatFunc`` keeps its denominator as an explicit,
never-expanded list of factors ``(uv)^e - 1``.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping
from enum import StrEnum
from fractions import Fraction
from math import gcd, isqrt, lcm
from types import MappingProxyType

from pydantic import BaseModel, ConfigDict
from sympy import ZZ, Poly, Symbol

from .exceptions import (
    ExponentOverflowError,
    MissingRootError,
    NotDivisibleError,
    PoleAtPointError,
)

Exponent = tuple[int, int]

# t = (uv)^(1/d), the variable of one charge sector
_T = Symbol("t")


def _format_exponent(value: Fraction) -> str:
    if value == 1:
        return ""
    if value.denominator == 1:
        return f"^{value.numerator}"
    return f"^({value})"


class EPoly:
    """Sparse polynomial in u^(1/d), v^(1/d) with integer coefficients."""

    __slots__ = ("den", "_terms")

    def __init__(
        self,
        terms: Mapping[Exponent, int] | Iterable[tuple[Exponent, int]] = (),
        den: int = 1,
    ):
        if den < 1:
            raise ValueError(f"Context denominator must be positive, got {den}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        collected: dict[Exponent, int] = {}
        for (i, j), coeff in items:
            i, j = int(i), int(j)
            if i < 0 or j < 0:
                raise ValueError(f"Negative exponent numerator in term ({i}, {j})")
            collected[(i, j)] = collected.get((i, j), 0) + int(coeff)
        self.den = den
        self._terms = MappingProxyType({k: c for k, c in collected.items() if c})

    # Builders

    @classmethod
    def constant(cls, value: int, den: int = 1) -> EPoly:
        return cls({(0, 0): value}, den)

    @classmethod
    def monomial(cls, i: int, j: int, coeff: int = 1, den: int = 1) -> EPoly:
        """``coeff * u^(i/den) * v^(j/den)``."""
        return cls({(i, j): coeff}, den)

    @classmethod
    def w_power(cls, e: Fraction | int, den: int | None = None) -> EPoly:
        """``(uv)^e`` for a nonnegative rational e."""
        e = Fraction(e)
        den = den or e.denominator
        k = e * den
        if k.denominator != 1:
            raise ValueError(f"Exponent {e} is not in (1/{den})Z")
        return cls({(int(k), int(k)): 1}, den)

    @classmethod
    def from_w(cls, coeffs: Iterable[int], den: int = 1) -> EPoly:
        """``sum_k coeffs[k] * (uv)^(k/den)``."""
        return cls({(k, k): c for k, c in enumerate(coeffs)}, den)

    @classmethod
    def from_triples(cls, triples: Iterable[Iterable[int]], den: int = 1) -> EPoly:
        """Inverse of :meth:`to_triples`."""
        terms: list[tuple[Exponent, int]] = []
        for triple in triples:
            i, j, coeff = triple
            terms.append(((i, j), coeff))
        return cls(terms, den)

    # Accessors

    @property
    def terms(self) -> Mapping[Exponent, int]:
        return self._terms

    def to_triples(self) -> list[list[int]]:
        return [[i, j, c] for (i, j), c in sorted(self._terms.items())]

    def coefficient(self, i: Fraction | int, j: Fraction | int) -> int:
        """Coefficient of ``u^i v^j`` (rational exponents)."""
        ii, jj = Fraction(i) * self.den, Fraction(j) * self.den
        if ii.denominator != 1 or jj.denominator != 1:
            return 0
        return self._terms.get((int(ii), int(jj)), 0)

    def is_balanced(self) -> bool:
        return all(i == j for i, j in self._terms)

    def max_exponent(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        return Fraction(max(max(i, j) for i, j in self._terms), self.den)

    def evaluate_at_one(self) -> int:
        """E(X; 1, 1), the Euler characteristic."""
        return sum(self._terms.values())

    def sectors(self) -> dict[int, dict[int, int]]:
        """Split by charge c = i - j; each sector is u^c (or v^-c) times P_c(t)."""
        out: dict[int, dict[int, int]] = {}
        for (i, j), coeff in self._terms.items():
            out.setdefault(i - j, {})[min(i, j)] = coeff
        return out

    # Denominator handling

    def with_den(self, den: int) -> EPoly:
        """Re-express over a multiple of the current denominator."""
        if den % self.den:
            raise ValueError(f"{den} is not a multiple of {self.den}")
        k = den // self.den
        return EPoly({(i * k, j * k): c for (i, j), c in self._terms.items()}, den)

    def reduced(self) -> EPoly:
        """Same polynomial over the smallest possible denominator."""
        g = self.den
        for i, j in self._terms:
            g = gcd(g, i, j)
        if g <= 1:
            return self
        return EPoly({(i // g, j // g): c for (i, j), c in self._terms.items()}, self.den // g)

    @staticmethod
    def align(a: EPoly, b: EPoly) -> tuple[EPoly, EPoly]:
        d = lcm(a.den, b.den)
        return a.with_den(d), b.with_den(d)

    # Ring operations

    @classmethod
    def _coerce(cls, other: object) -> EPoly | None:
        if isinstance(other, EPoly):
            return other
        if isinstance(other, int):
            return cls.constant(other)
        return None

    def __add__(self, other: object) -> EPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = EPoly.align(self, o)
        terms = dict(a._terms)
        for key, coeff in b._terms.items():
            terms[key] = terms.get(key, 0) + coeff
        return EPoly(terms, a.den)

    __radd__ = __add__

    def __neg__(self) -> EPoly:
        return EPoly({k: -c for k, c in self._terms.items()}, self.den)

    def __sub__(self, other: object) -> EPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> EPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> EPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = EPoly.align(self, o)
        terms: dict[Exponent, int] = {}
        for (i1, j1), c1 in a._terms.items():
            for (i2, j2), c2 in b._terms.items():
                key = (i1 + i2, j1 + j2)
                terms[key] = terms.get(key, 0) + c1 * c2
        return EPoly(terms, a.den)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> EPoly:
        if exponent < 0:
            raise ValueError("EPoly powers must be nonnegative")
        result = EPoly.constant(1, self.den)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = EPoly.align(self, o)
        return a._terms == b._terms

    def __hash__(self) -> int:
        r = self.reduced()
        return hash((r.den, frozenset(r._terms.items())))

    # Display

    def _monomial_str(self, i: int, j: int) -> str:
        if i == j:
            if i == 0:
                return ""
            return f"(uv){_format_exponent(Fraction(i, self.den))}"
        parts = []
        if i:
            parts.append(f"u{_format_exponent(Fraction(i, self.den))}")
        if j:
            parts.append(f"v{_format_exponent(Fraction(j, self.den))}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = ""
        for (i, j), coeff in sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0][0])):
            mono = self._monomial_str(i, j)
            magnitude = abs(coeff)
            body = mono if (magnitude == 1 and mono) else (
                f"{magnitude}*{mono}" if mono else str(magnitude)
            )
            if not out:
                out = f"-{body}" if coeff < 0 else body
            else:
                out += f" - {body}" if coeff < 0 else f" + {body}"
        return out

    def __repr__(self) -> str:
        return f"EPoly({dict(self._terms)!r}, den={self.den})"


class BalancedPoly(EPoly):
    """An EPoly that is a polynomial in w = uv."""

    __slots__ = ()

    def __init__(
        self,
        terms: Mapping[Exponent, int] | Iterable[tuple[Exponent, int]] = (),
        den: int = 1,
    ):
        super().__init__(terms, den)
        if not self.is_balanced():
            raise ValueError("BalancedPoly terms must have equal u- and v-exponents")

    @classmethod
    def of(cls, poly: EPoly) -> BalancedPoly:
        return cls(poly.terms, poly.den)

    @classmethod
    def w_minus_one(cls, e: Fraction | int, den: int | None = None) -> BalancedPoly:
        """``(uv)^e - 1``."""
        return cls.of(EPoly.w_power(e, den) - 1)


def sector_divide(numer: EPoly, denom: EPoly) -> EPoly:
    """Exact division of ``numer`` by a polynomial in uv, one charge sector at a time."""
    if not denom:
        raise ZeroDivisionError("division by the zero polynomial")
    if not denom.is_balanced():
        raise ValueError("divisor must be a polynomial in uv")
    d = lcm(numer.den, denom.den)
    n, b = numer.with_den(d), denom.with_den(d)
    divisor = Poly.from_dict({(i,): c for (i, _), c in b.terms.items()}, _T, domain=ZZ)
    quotient: dict[Exponent, int] = {}
    for charge, sector in sorted(n.sectors().items()):
        dividend = Poly.from_dict({(k,): c for k, c in sector.items()}, _T, domain=ZZ)
        q, r = dividend.div(divisor, auto=False)
        if not r.is_zero:
            raise NotDivisibleError(
                charge, {k: int(c) for (k,), c in r.as_dict().items()}
            )
        for (k,), coeff in q.as_dict().items():
            key = (k + charge, k) if charge >= 0 else (k, k - charge)
            quotient[key] = int(coeff)
    return EPoly(quotient, d)


def _w_minus_one_product(exponents: Iterable[Fraction], den: int = 1) -> EPoly:
    out = EPoly.constant(1, den)
    for e in exponents:
        out = out * (EPoly.w_power(e) - 1)
    return out


class RatFunc:
    """``numer / prod((uv)^e - 1)`` with the denominator kept as a factor list."""

    __slots__ = ("numer", "denom")

    def __init__(self, numer: EPoly | int, denom: Iterable[Fraction | int] = ()):
        if isinstance(numer, int):
            numer = EPoly.constant(numer)
        exps = tuple(sorted(Fraction(e) for e in denom))
        if any(e <= 0 for e in exps):
            raise ValueError(f"Denominator exponents must be positive: {exps}")
        self.numer = numer
        self.denom = exps

    @classmethod
    def discrepancy_factor(cls, a: Fraction | int) -> RatFunc:
        """``(uv - 1) / ((uv)^(a+1) - 1)``; the crepant case a = 0 is the constant 1."""
        a = Fraction(a)
        if a == 0:
            return cls(1)
        return cls(EPoly.w_power(1) - 1, (a + 1,))

    @property
    def den(self) -> int:
        """Smallest d with every exponent in (1/d)Z."""
        return lcm(self.numer.reduced().den, *(e.denominator for e in self.denom))

    def denominator_poly(self) -> EPoly:
        return _w_minus_one_product(self.denom)

    def cleared(self) -> tuple[EPoly, EPoly]:
        """Numerator and the expanded denominator product."""
        return self.numer, self.denominator_poly()

    def factors(self) -> list[BalancedPoly]:
        return [BalancedPoly.w_minus_one(e) for e in self.denom]

    # Arithmetic

    @staticmethod
    def _coerce(other: object) -> RatFunc | None:
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (EPoly, int)):
            return RatFunc(other)
        return None

    def _over(self, target: Counter[Fraction]) -> EPoly:
        """Numerator re-expressed over the factor multiset ``target``."""
        missing = target - Counter(self.denom)
        return self.numer * _w_minus_one_product(missing.elements())

    def __add__(self, other: object) -> RatFunc:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        common = Counter(self.denom) | Counter(o.denom)
        return RatFunc(self._over(common) + o._over(common), common.elements())

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.numer, self.denom)

    def __sub__(self, other: object) -> RatFunc:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> RatFunc:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> RatFunc:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.numer * o.numer, self.denom + o.denom)

    __rmul__ = __mul__

    def cross_difference(self, other: RatFunc) -> EPoly:
        """``numer_a * denom_b - numer_b * denom_a``; zero iff the values are equal."""
        return self.numer * other.denominator_poly() - other.numer * self.denominator_poly()

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return not self.cross_difference(o)

    __hash__ = None  # type: ignore[assignment]

    def cancel(self) -> RatFunc:
        """Drop every denominator factor that divides the numerator exactly."""
        numer = self.numer
        kept: list[Fraction] = []
        for e in self.denom:
            try:
                numer = sector_divide(numer, BalancedPoly.w_minus_one(e))
            except NotDivisibleError:
                kept.append(e)
        return RatFunc(numer, kept)

    def __str__(self) -> str:
        if not self.denom:
            return str(self.numer)
        factors = "".join(f"((uv){_format_exponent(e)} - 1)" for e in self.denom)
        return f"({self.numer}) / {factors}"

    def __repr__(self) -> str:
        return f"RatFunc({self.numer!r}, {self.denom!r})"


class Verdict(StrEnum):
    """Three-way polynomiality result."""

    POLYNOMIAL = "polynomial"
    FINER_ONLY = "finer granularity only"
    NOT_POLYNOMIAL = "not polynomial"


class Polynomiality(BaseModel):
    """Outcome of :func:`is_polynomial`."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    verdict: Verdict
    requested: int
    granularity: int | None = None
    poly: EPoly | None = None

    @property
    def label(self) -> str:
        if self.verdict is Verdict.FINER_ONLY:
            return f"granularity {self.granularity} only"
        return self.verdict.value


def is_polynomial(f: RatFunc | EPoly, granularity: int = 1) -> Polynomiality:
    """Decide membership of ``f`` in Z[u^(1/g), v^(1/g)]."""
    if isinstance(f, EPoly):
        f = RatFunc(f)
    numer = f.numer
    for factor in f.factors():
        try:
            numer = sector_divide(numer, factor)
        except NotDivisibleError:
            return Polynomiality(verdict=Verdict.NOT_POLYNOMIAL, requested=granularity)
    poly = numer.reduced()
    if granularity % poly.den == 0:
        verdict = Verdict.POLYNOMIAL
    else:
        verdict = Verdict.FINER_ONLY
    return Polynomiality(
        verdict=verdict, requested=granularity, granularity=poly.den, poly=poly
    )


def _exact_sqrt(value: Fraction) -> Fraction | None:
    if value < 0:
        return None
    num, den = isqrt(value.numerator), isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None


def resolve_root(
    q: Fraction | int, den: int, root: Fraction | int | None
) -> Fraction:
    """Validate and return s with s^den = q (s = q when den = 1)."""
    q = Fraction(q)
    if den == 1:
        return q
    if root is None:
        raise MissingRootError(f"q = {q} needs an exact {den}-th root")
    s = Fraction(root)
    if s <= 0 or s**den != q:
        raise MissingRootError(f"{s} is not an exact {den}-th root of {q}")
    return s


def specialize(
    f: RatFunc | EPoly,
    q: Fraction | int,
    root: Fraction | int | None = None,
    *,
    den: int | None = None,
) -> Fraction:
    """Evaluate exactly at (uv)^(1/d) = s, s^d = q.

    ``den`` is the context denominator the root belongs to; it defaults to the
    smallest denominator of ``f``. A term u^(i/d) v^(j/d) evaluates to s^((i+j)/2).
    """
    if isinstance(f, EPoly):
        f = RatFunc(f)
    ctx = den if den is not None else f.den
    if ctx % f.den:
        raise ValueError(f"context denominator {ctx} is not a multiple of {f.den}")
    s = resolve_root(q, ctx, root)
    half: Fraction | None = None
    total = Fraction(0)
    for (i, j), coeff in f.numer.reduced().with_den(ctx).terms.items():
        weight = i + j
        if weight % 2 == 0:
            total += coeff * s ** (weight // 2)
        else:
            if half is None:
                half = _exact_sqrt(s)
                if half is None:
                    raise MissingRootError(f"unbalanced term needs an exact square root of {s}")
            total += coeff * half**weight
    for e in f.denom:
        value = s ** int(e * ctx) - 1
        if value == 0:
            raise PoleAtPointError(f"factor (uv)^{e} - 1 vanishes at q = {q}")
        total /= value
    return total


def poincare_dual(f: EPoly, n: int) -> EPoly:
    """``(uv)^n * f(1/u, 1/v)`` for f supported in the degree-n box."""
    top = n * f.den
    for i, j in f.terms:
        if i > top or j > top:
            raise ExponentOverflowError(
                f"term u^{Fraction(i, f.den)} v^{Fraction(j, f.den)} exceeds degree {n}"
            )
    return EPoly({(top - i, top - j): c for (i, j), c in f.terms.items()}, f.den)

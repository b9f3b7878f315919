"""Catalog schemes with exact point-count polynomials and brute-force oracles.

Every catalog constructor is Tate-type: its E-polynomial is its count polynomial
N(q) with q replaced by uv.
"""

from __future__ import annotations

import ast
from collections.abc import Mapping
from enum import StrEnum
from itertools import product as cartesian

import sympy
from pydantic import BaseModel, ConfigDict

from .arith import EPoly
from .config import Config
from .exceptions import (
    FieldTooLargeError,
    NegativeCountError,
    NotTateError,
    ScenarioParseError,
    UnenumerableError,
)
from .strata import Divisor, Flavor, ResolutionData, StratumTable

Q = sympy.Symbol("q")

BRUTE_FORCE_MAX_Q = 13


class SchemeKind(StrEnum):
    AFFINE = "affine"
    PROJECTIVE = "projective"
    TORUS = "torus"
    POINT = "point"
    PRODUCT = "product"
    DISJOINT_UNION = "disjoint_union"
    COMPLEMENT = "complement"
    BLOWUP = "blowup_origin_affine"


_SIZED = {SchemeKind.AFFINE, SchemeKind.PROJECTIVE, SchemeKind.TORUS, SchemeKind.BLOWUP}
_GAUGE = {SchemeKind.AFFINE, SchemeKind.TORUS, SchemeKind.POINT}


class CountScheme(BaseModel):
    """A catalog scheme expression with its count polynomial N(q)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: SchemeKind
    n: int = 0
    parts: tuple[CountScheme, ...] = ()
    count: sympy.Poly
    tate_E: EPoly | None = None

    def __str__(self) -> str:
        if self.kind in _SIZED:
            return f"{self.kind.value}({self.n})"
        if self.kind is SchemeKind.POINT:
            return "point"
        return f"{self.kind.value}({', '.join(str(p) for p in self.parts)})"

    @property
    def dimension(self) -> int:
        if self.kind in _SIZED:
            return self.n
        if self.kind is SchemeKind.POINT:
            return 0
        if self.kind is SchemeKind.PRODUCT:
            return sum(p.dimension for p in self.parts)
        if self.kind is SchemeKind.COMPLEMENT:
            return self.parts[0].dimension
        return max((p.dimension for p in self.parts), default=0)

    @property
    def has_gauge_form(self) -> bool:
        """True for affine spaces, tori and products of them."""
        if self.kind is SchemeKind.PRODUCT:
            return all(p.has_gauge_form for p in self.parts)
        return self.kind in _GAUGE

    @property
    def count_string(self) -> str:
        return str(self.count.as_expr())


def _poly(expr: sympy.Expr) -> sympy.Poly:
    return sympy.Poly(expr, Q, domain=sympy.ZZ)


def _tate(count: sympy.Poly) -> EPoly:
    return EPoly({(k, k): int(c) for (k,), c in count.as_dict().items()})


def _make(kind: SchemeKind, count: sympy.Poly, n: int = 0, parts: tuple[CountScheme, ...] = ()) -> CountScheme:
    return CountScheme(kind=kind, n=n, parts=parts, count=count, tate_E=_tate(count))


def _check_size(kind: SchemeKind, n: int) -> None:
    if n < 0:
        raise ValueError(f"{kind.value} needs a nonnegative dimension, got {n}")


def affine(n: int) -> CountScheme:
    _check_size(SchemeKind.AFFINE, n)
    return _make(SchemeKind.AFFINE, _poly(Q**n), n)


def projective(n: int) -> CountScheme:
    _check_size(SchemeKind.PROJECTIVE, n)
    return _make(SchemeKind.PROJECTIVE, _poly(sum(Q**i for i in range(n + 1))), n)


def torus(n: int) -> CountScheme:
    _check_size(SchemeKind.TORUS, n)
    return _make(SchemeKind.TORUS, _poly((Q - 1) ** n), n)


def point() -> CountScheme:
    return _make(SchemeKind.POINT, _poly(sympy.Integer(1)))


def product(*parts: CountScheme) -> CountScheme:
    count = _poly(sympy.Integer(1))
    for part in parts:
        count = count * part.count
    return _make(SchemeKind.PRODUCT, count, parts=parts)


def disjoint_union(*parts: CountScheme) -> CountScheme:
    count = _poly(sympy.Integer(0))
    for part in parts:
        count = count + part.count
    return _make(SchemeKind.DISJOINT_UNION, count, parts=parts)


def complement(ambient: CountScheme, closed_sub: CountScheme) -> CountScheme:
    """Ambient minus a closed piece; the embedding is asserted by the caller."""
    count = ambient.count - closed_sub.count
    if count.eval(2) < 0:
        raise NegativeCountError(
            f"complement({ambient}, {closed_sub}) has {count.eval(2)} points over F_2"
        )
    return _make(SchemeKind.COMPLEMENT, count, parts=(ambient, closed_sub))


def blowup_origin_affine(n: int) -> CountScheme:
    """Bl_0(A^n): A^n minus the origin plus an exceptional P^(n-1)."""
    if n < 1:
        raise ValueError(f"blowup_origin_affine needs n >= 1, got {n}")
    count = _poly(Q**n - 1 + sum(Q**i for i in range(n)))
    return _make(SchemeKind.BLOWUP, count, n)


_CONSTRUCTORS = {
    SchemeKind.AFFINE: affine,
    SchemeKind.PROJECTIVE: projective,
    SchemeKind.TORUS: torus,
    SchemeKind.BLOWUP: blowup_origin_affine,
}


def _build(node: ast.expr) -> CountScheme:
    if isinstance(node, ast.Name) and node.id == SchemeKind.POINT.value:
        return point()
    if not (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)):
        raise ScenarioParseError(getattr(node, "lineno", 1), "expected a scheme constructor call")
    try:
        kind = SchemeKind(node.func.id)
    except ValueError:
        raise ScenarioParseError(node.lineno, f"unknown scheme constructor {node.func.id!r}")
    if kind in _SIZED:
        if len(node.args) != 1 or not isinstance(node.args[0], ast.Constant) or not isinstance(node.args[0].value, int):
            raise ScenarioParseError(node.lineno, f"{kind.value} takes one integer argument")
        return _CONSTRUCTORS[kind](node.args[0].value)
    parts = [_build(arg) for arg in node.args]
    if kind is SchemeKind.POINT:
        if parts:
            raise ScenarioParseError(node.lineno, "point takes no arguments")
        return point()
    if kind is SchemeKind.COMPLEMENT:
        if len(parts) != 2:
            raise ScenarioParseError(node.lineno, "complement takes (ambient, closed_sub)")
        return complement(*parts)
    if kind is SchemeKind.PRODUCT:
        return product(*parts)
    return disjoint_union(*parts)


def build_scheme(expr: str | CountScheme) -> CountScheme:
    """Parse a constructor term such as ``product(affine(1), torus(1))``."""
    if isinstance(expr, CountScheme):
        return expr
    try:
        tree = ast.parse(expr.strip(), mode="eval")
    except SyntaxError as e:
        raise ScenarioParseError(e.lineno or 1, f"bad scheme expression {expr!r}: {e.msg}")
    return _build(tree.body)


def count_points(s: CountScheme, q: int) -> int:
    """N(q)."""
    if q < 2:
        raise ValueError(f"q must be at least 2, got {q}")
    return int(s.count.eval(q))


def e_polynomial_of(s: CountScheme) -> EPoly:
    """N(q) with q -> uv."""
    if s.tate_E is None:
        raise NotTateError(f"{s} has no Tate-type E-polynomial")
    return s.tate_E


# Brute force


def _ambient_size(s: CountScheme, q: int) -> int:
    """Points visited by the enumerator."""
    if s.kind is SchemeKind.AFFINE or s.kind is SchemeKind.TORUS:
        return q**s.n
    if s.kind is SchemeKind.PROJECTIVE:
        return q ** (s.n + 1)
    if s.kind is SchemeKind.BLOWUP:
        return q ** (2 * s.n)
    if s.kind is SchemeKind.POINT:
        return 1
    sizes = [_ambient_size(p, q) for p in s.parts]
    if s.kind is SchemeKind.PRODUCT:
        total = 1
        for size in sizes:
            total *= size
        return total
    return sum(sizes)


def _normalize(vector: tuple[int, ...], q: int) -> tuple[int, ...]:
    """Scale so the first nonzero coordinate is 1."""
    lead = next(x for x in vector if x)
    inverse = pow(lead, -1, q)
    return tuple(x * inverse % q for x in vector)


def _projective_points(n: int, q: int) -> set[tuple[int, ...]]:
    return {_normalize(v, q) for v in cartesian(range(q), repeat=n + 1) if any(v)}


def _on_line(x: tuple[int, ...], direction: tuple[int, ...], q: int) -> bool:
    return any(all(xi == t * di % q for xi, di in zip(x, direction)) for t in range(q))


def _points(s: CountScheme, q: int) -> set[tuple[int, ...]]:
    kind = s.kind
    if kind is SchemeKind.POINT:
        return {()}
    if kind is SchemeKind.AFFINE:
        return set(cartesian(range(q), repeat=s.n))
    if kind is SchemeKind.TORUS:
        return {x for x in cartesian(range(q), repeat=s.n) if all(x)}
    if kind is SchemeKind.PROJECTIVE:
        return _projective_points(s.n, q)
    if kind is SchemeKind.BLOWUP:
        # incidence pairs (x, L) with x on the line L through the origin
        lines = _projective_points(s.n - 1, q)
        return {
            x + line
            for line in lines
            for x in cartesian(range(q), repeat=s.n)
            if _on_line(x, line, q)
        }
    if kind is SchemeKind.PRODUCT:
        out: set[tuple[int, ...]] = {()}
        for part in s.parts:
            out = {a + b for a in out for b in _points(part, q)}
        return out
    if kind is SchemeKind.DISJOINT_UNION:
        return {(tag,) + p for tag, part in enumerate(s.parts) for p in _points(part, q)}
    if kind is SchemeKind.COMPLEMENT:
        ambient, sub = s.parts
        ambient_points = _points(ambient, q)
        width = len(next(iter(ambient_points), ()))
        removed = set()
        for p in _points(sub, q):
            if len(p) > width:
                raise UnenumerableError(f"{sub} does not embed in {ambient} by coordinates")
            padded = p + (0,) * (width - len(p))
            if padded not in ambient_points:
                raise UnenumerableError(f"{sub} does not embed in {ambient} by coordinates")
            removed.add(padded)
        return ambient_points - removed
    raise UnenumerableError(f"cannot enumerate {s}")


def brute_force_count(s: CountScheme, q: int) -> int:
    """Exhaustive enumeration over the prime field F_q."""
    if not sympy.isprime(q):
        raise UnenumerableError(f"brute force only enumerates prime fields, got q = {q}")
    if q > BRUTE_FORCE_MAX_Q:
        raise FieldTooLargeError(f"q = {q} exceeds {BRUTE_FORCE_MAX_Q}")
    budget = Config.settings().brute_budget
    if _ambient_size(s, q) > budget:
        raise FieldTooLargeError(f"enumerating {s} over F_{q} exceeds {budget} points")
    return len(_points(s, q))


# Catalog

CATALOG: dict[str, str] = {
    "point": "point",
    "affine_line": "affine(1)",
    "affine_plane": "affine(2)",
    "affine_3": "affine(3)",
    "projective_line": "projective(1)",
    "projective_plane": "projective(2)",
    "projective_3": "projective(3)",
    "torus_1": "torus(1)",
    "torus_2": "torus(2)",
    "line_times_torus": "product(affine(1), torus(1))",
    "p1_times_p1": "product(projective(1), projective(1))",
    "plane_minus_line": "complement(projective(2), projective(1))",
    "punctured_plane": "complement(affine(2), point)",
    "point_and_line": "disjoint_union(point, affine(1))",
    "blowup_a2": "blowup_origin_affine(2)",
    "blowup_a3": "blowup_origin_affine(3)",
}


def catalog() -> dict[str, CountScheme]:
    return {name: build_scheme(expr) for name, expr in CATALOG.items()}


def counts_at(counts: Mapping[int, sympy.Poly], q: int) -> dict[int, int]:
    """Evaluate a stratum-indexed family of count polynomials."""
    return {mask: int(poly.eval(q)) for mask, poly in counts.items()}


def affine_identity(n: int) -> tuple[ResolutionData, dict[int, sympy.Poly]]:
    """The identity resolution of A^n."""
    data = ResolutionData(
        name=f"id(A^{n})",
        dimension=n,
        strata=StratumTable(flavor=Flavor.OPEN, width=0, entries={0: EPoly.w_power(n)}),
    )
    return data, {0: affine(n).count}


def blowup_strata(n: int) -> tuple[ResolutionData, dict[int, sympy.Poly]]:
    """Bl_0(A^n) -> A^n: one exceptional P^(n-1) with discrepancy n - 1."""
    if n < 2:
        raise ValueError(f"blowup_strata needs n >= 2, got {n}")
    exceptional = EPoly.from_w([1] * n)
    data = ResolutionData(
        name=f"Bl0(A^{n})",
        dimension=n,
        divisors=(Divisor(label="E", discrepancy=n - 1),),
        strata=StratumTable(
            flavor=Flavor.OPEN,
            width=1,
            entries={0: EPoly.w_power(n) - 1, 1: exceptional},
        ),
    )
    counts = {
        0: complement(affine(n), point()).count,
        1: projective(n - 1).count,
    }
    return data, counts

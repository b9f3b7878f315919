"""Scenario files: loading, normalization, saving and input hashing."""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from math import lcm
from pathlib import Path

import sympy
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .arith import EPoly
from .count import Q, CountScheme, build_scheme
from .exceptions import InvalidResolutionError, ScenarioParseError
from .models import (
    CheckDTO,
    CountEntryDTO,
    DivisorDTO,
    ResolutionDTO,
    ScenarioFile,
    StrataDTO,
    StratumEntryDTO,
)
from .strata import (
    Divisor,
    Rational,
    ResolutionData,
    StratumTable,
    validate_resolution,
)


class StratumCount(BaseModel):
    """|D_J°(F_q)| as a polynomial in q, a catalog scheme, or a table of values."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    poly: sympy.Poly | None = None
    scheme: CountScheme | None = None
    values: dict[int, int] | None = None

    def at(self, q: int) -> int | None:
        if self.scheme is not None:
            return int(self.scheme.count.eval(q))
        if self.poly is not None:
            return int(self.poly.eval(q))
        return (self.values or {}).get(q)


class Check(BaseModel):
    """A default evaluation point q with an exact root s, s^d = q."""

    model_config = ConfigDict(frozen=True)

    q: int = Field(ge=2)
    root: Rational | None = None


class Scenario(BaseModel):
    """Validated scenario: resolutions of one variety, normalized to open strata."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    description: str | None = None
    dimension: int = Field(ge=0)
    den: int = Field(default=1, ge=1)
    resolutions: tuple[ResolutionData, ...]
    counts: tuple[dict[int, StratumCount] | None, ...] = ()
    checks: tuple[Check, ...] = ()

    def counts_of(self, index: int) -> dict[int, StratumCount] | None:
        if index < len(self.counts):
            return self.counts[index]
        return None

    def root_for(self, q: int) -> Fraction | None:
        for check in self.checks:
            if check.q == q:
                return check.root
        return None


def _parse_error(e: ValidationError) -> ScenarioParseError:
    first = e.errors()[0]
    where = ".".join(str(part) for part in first["loc"]) or "document"
    return ScenarioParseError(None, f"{where}: {first['msg']}")


def _strata(dto: StrataDTO, r: ResolutionData) -> StratumTable:
    entries: dict[int, EPoly] = {}
    for entry in dto.entries:
        mask = r.mask_of(entry.subset)
        if mask in entries:
            raise InvalidResolutionError(
                f"Stratum {sorted(entry.subset) or '∅'} listed twice in {r.name!r}"
            )
        try:
            entries[mask] = EPoly.from_triples(entry.e, dto.den)
        except ValueError as e:
            raise ScenarioParseError(
                None, f"{r.name}: stratum {sorted(entry.subset) or '∅'}: {e}"
            )
    return StratumTable(flavor=dto.flavor, width=len(r.divisors), entries=entries)


def _count(dto: CountEntryDTO) -> StratumCount:
    if dto.scheme is not None:
        return StratumCount(scheme=build_scheme(dto.scheme))
    if dto.poly is not None:
        # ascending coefficients of N(q)
        return StratumCount(poly=sympy.Poly(list(reversed(dto.poly)) or [0], Q, domain=sympy.ZZ))
    return StratumCount(values=dict(dto.values or {}))


def _resolution(
    dto: ResolutionDTO, dimension: int
) -> tuple[ResolutionData, dict[int, StratumCount] | None]:
    divisors = tuple(
        Divisor(label=d.label, discrepancy=Fraction(d.discrepancy)) for d in dto.divisors
    )
    shell = ResolutionData(
        name=dto.name,
        dimension=dimension,
        divisors=divisors,
        strata=StratumTable(flavor=dto.strata.flavor, width=len(divisors)),
    )
    r = shell.with_strata(_strata(dto.strata, shell))
    validate_resolution(r)
    r = r.with_strata(r.open_strata())

    if dto.counts is None:
        return r, None
    counts: dict[int, StratumCount] = {}
    for entry in dto.counts:
        mask = r.mask_of(entry.subset)
        if mask in counts:
            raise InvalidResolutionError(
                f"Counts for {sorted(entry.subset) or '∅'} listed twice in {r.name!r}"
            )
        counts[mask] = _count(entry)
    return r, counts


def from_file(doc: ScenarioFile) -> Scenario:
    """Build the domain scenario from a parsed document."""
    built = [_resolution(dto, doc.dimension) for dto in doc.resolutions]
    derived = lcm(*(r.den for r, _ in built))
    den = doc.den or derived
    if den % derived:
        raise InvalidResolutionError(
            f"Scenario denominator {den} is not a multiple of the discrepancy denominators ({derived})"
        )
    return Scenario(
        name=doc.name,
        description=doc.description,
        dimension=doc.dimension,
        den=den,
        resolutions=tuple(r for r, _ in built),
        counts=tuple(c for _, c in built),
        checks=tuple(
            Check(q=c.q, root=None if c.root is None else Fraction(c.root)) for c in doc.checks
        ),
    )


def load_scenario(path: str | Path) -> Scenario:
    """Read, validate and normalize a scenario JSON file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ScenarioParseError(None, f"cannot read {path}: {e.strerror or e}")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioParseError(e.lineno, e.msg)
    try:
        doc = ScenarioFile.model_validate(raw)
    except ValidationError as e:
        raise _parse_error(e)
    return from_file(doc)


def _entries_dto(table: StratumTable, r: ResolutionData) -> StrataDTO:
    den = lcm(*(poly.den for poly in table.entries.values())) if table.entries else 1
    return StrataDTO(
        flavor=table.flavor,
        den=den,
        entries=[
            StratumEntryDTO(subset=r.labels_of(mask), e=poly.with_den(den).to_triples())
            for mask, poly in sorted(table.entries.items())
        ],
    )


def _count_dto(mask: int, count: StratumCount, r: ResolutionData) -> CountEntryDTO:
    subset = r.labels_of(mask)
    if count.scheme is not None:
        return CountEntryDTO(subset=subset, scheme=str(count.scheme))
    if count.poly is not None:
        return CountEntryDTO(subset=subset, poly=[int(c) for c in reversed(count.poly.all_coeffs())])
    return CountEntryDTO(subset=subset, values=dict(sorted((count.values or {}).items())))


def to_file(s: Scenario) -> ScenarioFile:
    """The normalized (open-flavor) document for ``s``."""
    resolutions = []
    for index, r in enumerate(s.resolutions):
        counts = s.counts_of(index)
        resolutions.append(
            ResolutionDTO(
                name=r.name,
                divisors=[
                    DivisorDTO(label=d.label, discrepancy=str(d.discrepancy)) for d in r.divisors
                ],
                strata=_entries_dto(r.open_strata(), r),
                counts=None
                if counts is None
                else [_count_dto(mask, c, r) for mask, c in sorted(counts.items())],
            )
        )
    return ScenarioFile(
        name=s.name,
        description=s.description,
        dimension=s.dimension,
        den=s.den,
        resolutions=resolutions,
        checks=[
            CheckDTO(q=c.q, root=None if c.root is None else str(c.root)) for c in s.checks
        ],
    )


def dump_scenario(s: Scenario) -> str:
    """Canonical JSON text of the normalized scenario."""
    data = to_file(s).model_dump(mode="json", by_alias=True, exclude_none=True)
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def save_scenario(s: Scenario, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(dump_scenario(s), encoding="utf-8")
    return path


def input_hash(s: Scenario) -> str:
    """sha256 of the canonical normalized scenario."""
    return hashlib.sha256(dump_scenario(s).encode("utf-8")).hexdigest()


def tate_counts(r: ResolutionData) -> dict[int, StratumCount] | None:
    """Counts read off E(D_J°) with uv -> q when every open stratum is Tate-type."""
    counts: dict[int, StratumCount] = {}
    for mask, poly in r.open_strata().entries.items():
        poly = poly.reduced()
        if poly.den != 1 or not poly.is_balanced():
            return None
        coeffs = {k: c for (k, _), c in poly.terms.items()}
        expr = sum((c * Q**k for k, c in coeffs.items()), sympy.Integer(0))
        counts[mask] = StratumCount(poly=sympy.Poly(expr, Q, domain=sympy.ZZ))
    return counts


"""Pydantic models for scenario files and verification reports."""

from __future__ import annotations

import hashlib
from datetime import datetime
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .strata import Flavor


def _check_rational(value: str | int) -> str:
    try:
        Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"{value!r} is not an exact rational 'p/q'")
    return str(value)


# Scenario file (input)


class DivisorDTO(BaseModel):
    """Divisor entry; discrepancies travel as 'p/q' strings."""

    label: str
    discrepancy: str

    @field_validator("discrepancy", mode="before")
    @classmethod
    def exact_rational(cls, value: str | int) -> str:
        return _check_rational(value)


class StratumEntryDTO(BaseModel):
    """E-polynomial of one stratum, as [i_num, j_num, coeff] triples over ``den``."""

    model_config = ConfigDict(populate_by_name=True)

    subset: list[str] = Field(default_factory=list)
    e: list[tuple[int, int, int]] = Field(alias="E", default_factory=list)


class StrataDTO(BaseModel):
    """Stratum table fragment."""

    flavor: Flavor
    den: int = Field(default=1, ge=1)
    entries: list[StratumEntryDTO] = Field(default_factory=list)


class CountEntryDTO(BaseModel):
    """Point counts of one stratum: N(q) coefficients, per-q values, or a catalog scheme."""

    subset: list[str] = Field(default_factory=list)
    poly: list[int] | None = None
    values: dict[int, int] | None = None
    scheme: str | None = None

    @model_validator(mode="after")
    def one_source(self) -> CountEntryDTO:
        given = [x for x in (self.poly, self.values, self.scheme) if x is not None]
        if len(given) != 1:
            raise ValueError("exactly one of poly, values, scheme is required")
        return self


class ResolutionDTO(BaseModel):
    """One resolution of the scenario's variety."""

    name: str
    divisors: list[DivisorDTO] = Field(default_factory=list)
    strata: StrataDTO
    counts: list[CountEntryDTO] | None = None


class CheckDTO(BaseModel):
    """Default evaluation point with its exact root."""

    q: int = Field(ge=2)
    root: str | None = None

    @field_validator("root", mode="before")
    @classmethod
    def exact_rational(cls, value: str | int | None) -> str | None:
        return None if value is None else _check_rational(value)


class ScenarioFile(BaseModel):
    """Top-level scenario JSON document."""

    name: str
    description: str | None = None
    dimension: int = Field(ge=0)
    den: int | None = Field(default=None, ge=1)
    resolutions: list[ResolutionDTO] = Field(min_length=1)
    checks: list[CheckDTO] = Field(default_factory=list)


# Report (output)


class HodgeRow(BaseModel):
    i: int
    j: int
    h: int


class PointCountRow(BaseModel):
    """N_st at one q, plus the p-adic cross-check when counts are available."""

    q: int
    root: str | None = None
    n_st: str
    integral: str
    padic: str | None = None
    padic_agrees: bool | None = None


class ResolutionReport(BaseModel):
    name: str
    e_st: str
    numerator: list[list[int]]
    den: int
    denominators: list[str]
    polynomiality: str
    hodge: list[HodgeRow] | None = None
    hodge_nonnegative: bool | None = None
    euler: str
    counts_source: str | None = None
    points: list[PointCountRow] = Field(default_factory=list)


class ClearedRow(BaseModel):
    q: int
    lhs: str
    rhs: str


class AgreementRow(BaseModel):
    first: str
    second: str
    agree: bool
    certificate: str
    cleared: list[ClearedRow] = Field(default_factory=list)


class Report(BaseModel):
    """Verification report for one scenario."""

    scenario: str
    mode: str
    input_hash: str
    dimension: int
    den: int
    resolutions: list[ResolutionReport] = Field(default_factory=list)
    agreements: list[AgreementRow] = Field(default_factory=list)
    all_agree: bool = True
    notes: list[str] = Field(default_factory=list)
    report_hash: str = ""
    generated_at: datetime | None = None

    def content_hash(self) -> str:
        """sha256 over everything except the timestamp and the hash itself."""
        body = self.model_dump_json(exclude={"generated_at", "report_hash"})
        return hashlib.sha256(body.encode("utf-8")).hexdigest()

    def sealed(self) -> Report:
        return self.model_copy(
            update={"report_hash": self.content_hash(), "generated_at": datetime.now()}
        )

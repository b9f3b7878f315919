"""Stratification data for an SNC exceptional locus.

Subsets J of the divisor index set I are bitmasks. A stratum table maps masks to
E-polynomials, either of the closed intersections D_J or of the open strata
D_J° = D_J minus the other divisors; missing entries are empty strata.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from enum import StrEnum
from fractions import Fraction
from math import lcm
from typing import Annotated

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    PlainSerializer,
    field_validator,
)

from .arith import EPoly
from .exceptions import (
    InconsistentSupportError,
    InvalidResolutionError,
    MissingAmbientError,
    NotLogTerminalError,
    StratumDimensionError,
    WrongFlavorError,
)

MAX_DIVISORS = 62


def _to_fraction(value: object) -> object:
    if isinstance(value, (str, int, Fraction)):
        return Fraction(value)
    return value


Rational = Annotated[
    Fraction,
    BeforeValidator(_to_fraction),
    PlainSerializer(str, return_type=str),
]


def submasks(mask: int) -> Iterator[int]:
    """All J with J ⊆ mask, mask first."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``."""
    index = 0
    while mask:
        if mask & 1:
            yield index
        mask >>= 1
        index += 1


class Flavor(StrEnum):
    OPEN = "open"
    CLOSED = "closed"


class Divisor(BaseModel):
    """Exceptional divisor D_i with discrepancy a_i."""

    model_config = ConfigDict(frozen=True)

    label: str
    discrepancy: Rational


class StratumTable(BaseModel):
    """Map from subset bitmask to the E-polynomial of a stratum."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    flavor: Flavor
    width: int = Field(ge=0, le=MAX_DIVISORS)
    entries: dict[int, EPoly] = Field(default_factory=dict)

    @field_validator("entries")
    @classmethod
    def drop_empty(cls, value: dict[int, EPoly]) -> dict[int, EPoly]:
        return {mask: poly for mask, poly in sorted(value.items()) if poly}

    def get(self, mask: int) -> EPoly:
        return self.entries.get(mask, EPoly())


class ResolutionData(BaseModel):
    """A resolution Y -> X: discrepancies plus the stratum table of Exc."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    dimension: int = Field(ge=0)
    divisors: tuple[Divisor, ...] = ()
    strata: StratumTable

    @property
    def labels(self) -> list[str]:
        return [d.label for d in self.divisors]

    @property
    def discrepancies(self) -> list[Fraction]:
        return [d.discrepancy for d in self.divisors]

    @property
    def den(self) -> int:
        """lcm of the discrepancy denominators."""
        return lcm(*(a.denominator for a in self.discrepancies))

    def mask_of(self, labels: Iterable[str]) -> int:
        index = {label: i for i, label in enumerate(self.labels)}
        mask = 0
        for label in labels:
            if label not in index:
                raise InvalidResolutionError(
                    f"Unknown divisor label {label!r} in resolution {self.name!r}"
                )
            mask |= 1 << index[label]
        return mask

    def labels_of(self, mask: int) -> list[str]:
        return [self.divisors[i].label for i in bits(mask)]

    def open_strata(self) -> StratumTable:
        return to_open(self.strata)

    def with_strata(self, strata: StratumTable) -> ResolutionData:
        return self.model_copy(update={"strata": strata})


def validate_resolution(r: ResolutionData) -> None:
    """Raise if ``r`` is not valid log-terminal SNC resolution data."""
    if len(r.divisors) > MAX_DIVISORS:
        raise InvalidResolutionError(f"At most {MAX_DIVISORS} divisors are supported")
    if r.strata.width != len(r.divisors):
        raise InvalidResolutionError(
            f"Stratum table width {r.strata.width} != {len(r.divisors)} divisors"
        )
    if len(set(r.labels)) != len(r.labels):
        raise InvalidResolutionError(f"Duplicate divisor labels in {r.name!r}")
    for i, divisor in enumerate(r.divisors):
        if divisor.discrepancy <= -1:
            raise NotLogTerminalError(i, divisor.label, divisor.discrepancy)

    limit = 1 << len(r.divisors)
    for mask, poly in r.strata.entries.items():
        if not 0 <= mask < limit:
            raise InvalidResolutionError(f"Stratum mask {mask:#b} out of range")
        box = r.dimension - mask.bit_count()
        if box < 0 or poly.max_exponent() > box:
            raise StratumDimensionError(
                f"Stratum {r.labels_of(mask) or '∅'} has E = {poly}, "
                f"beyond dimension {max(box, 0)}"
            )

    if r.strata.flavor is Flavor.CLOSED:
        present = r.strata.entries
        for mask in present:
            for i in bits(mask):
                smaller = mask & ~(1 << i)
                if smaller not in present:
                    raise InconsistentSupportError(smaller, mask)


def open_from_closed(t: StratumTable) -> StratumTable:
    """E(D_J°) = sum over J' ⊇ J of (-1)^|J' minus J| E(D_J')."""
    if t.flavor is not Flavor.CLOSED:
        raise WrongFlavorError("open_from_closed needs a closed table")
    acc: dict[int, EPoly] = {}
    for big, poly in t.entries.items():
        for small in submasks(big):
            term = -poly if (big ^ small).bit_count() % 2 else poly
            acc[small] = acc.get(small, EPoly()) + term
    return StratumTable(flavor=Flavor.OPEN, width=t.width, entries=acc)


def closed_from_open(t: StratumTable) -> StratumTable:
    """E(D_J) = sum over J' ⊇ J of E(D_J'°)."""
    if t.flavor is not Flavor.OPEN:
        raise WrongFlavorError("closed_from_open needs an open table")
    acc: dict[int, EPoly] = {}
    for big, poly in t.entries.items():
        for small in submasks(big):
            acc[small] = acc.get(small, EPoly()) + poly
    return StratumTable(flavor=Flavor.CLOSED, width=t.width, entries=acc)


def to_open(t: StratumTable) -> StratumTable:
    return t if t.flavor is Flavor.OPEN else open_from_closed(t)


def complement_E(t: StratumTable) -> EPoly:
    """E of the ambient minus all divisors, by inclusion-exclusion."""
    if t.flavor is not Flavor.CLOSED:
        raise WrongFlavorError("complement_E needs a closed table")
    if 0 not in t.entries:
        raise MissingAmbientError("closed table has no entry for the empty subset")
    total = EPoly()
    for mask, poly in t.entries.items():
        total = total - poly if mask.bit_count() % 2 else total + poly
    return total


def product_resolution(r1: ResolutionData, r2: ResolutionData) -> ResolutionData:
    """Y1 x Y2 -> X1 x X2 with divisors D_i x Y2 and Y1 x D'_j."""
    taken = set(r1.labels)
    divisors = list(r1.divisors)
    for divisor in r2.divisors:
        label = divisor.label
        while label in taken:
            label += "'"
        taken.add(label)
        divisors.append(divisor.model_copy(update={"label": label}))

    shift = len(r1.divisors)
    t1, t2 = r1.open_strata(), r2.open_strata()
    entries = {
        m1 | (m2 << shift): e1 * e2
        for m1, e1 in t1.entries.items()
        for m2, e2 in t2.entries.items()
    }
    return ResolutionData(
        name=f"{r1.name} x {r2.name}",
        dimension=r1.dimension + r2.dimension,
        divisors=tuple(divisors),
        strata=StratumTable(flavor=Flavor.OPEN, width=len(divisors), entries=entries),
    )

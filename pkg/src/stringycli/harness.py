"""Batch runs over scenarios: compute and verify reports."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from fractions import Fraction
from itertools import combinations

import sympy
from pydantic import ValidationError
from rich.console import Console

from .arith import Verdict, is_polynomial
from .config import Config
from .exceptions import MissingCountError, MissingRootError, StringyError
from .models import (
    AgreementRow,
    ClearedRow,
    HodgeRow,
    PointCountRow,
    Report,
    ResolutionReport,
)
from .padic import LocalField, MonomialForm, global_integral
from .scenario import Scenario, StratumCount, input_hash, tate_counts
from .strata import ResolutionData
from .stringy import (
    cleared_identity,
    resolutions_agree,
    stringy_E,
    stringy_euler_number,
    stringy_hodge_numbers,
    stringy_point_count,
)

console = Console(stderr=True)


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Harness:
    """Runs one scenario, tracing to stderr when ``debug`` is set."""

    def __init__(self, scenario: Scenario, debug: bool = False):
        self.scenario = scenario
        self.debug = debug
        self.notes: list[str] = []
        self._counts: dict[int, tuple[dict[int, StratumCount] | None, str | None]] = {}

    def _log(self, arrow: str, message: str) -> None:
        if self.debug:
            console.print(f"[dim]{arrow} {message}[/dim]")

    # Counts and roots

    def counts(self, index: int) -> tuple[dict[int, StratumCount] | None, str | None]:
        """Stratum counts for resolution ``index`` and where they came from."""
        if index not in self._counts:
            given = self.scenario.counts_of(index)
            if given is not None:
                catalog = all(c.scheme is not None for c in given.values())
                self._counts[index] = (given, "catalog" if catalog else "file")
            elif (derived := tate_counts(self.scenario.resolutions[index])) is not None:
                self._counts[index] = (derived, "tate")
            else:
                self._counts[index] = (None, None)
        return self._counts[index]

    def counts_at(self, index: int, q: int) -> dict[int, int] | None:
        counts, _ = self.counts(index)
        if counts is None:
            return None
        r = self.scenario.resolutions[index]
        values: dict[int, int] = {}
        for mask, count in counts.items():
            value = count.at(q)
            if value is None:
                raise MissingCountError(mask)
            values[mask] = value
        for mask in r.open_strata().entries:
            if mask not in values:
                raise MissingCountError(mask)
        return values

    def root(self, q: int, explicit: Mapping[int, Fraction]) -> Fraction | None:
        """An exact d-th root of q: explicit, then the scenario's checks, then integral."""
        d = self.scenario.den
        if d == 1:
            return None
        if q in explicit:
            return explicit[q]
        if (checked := self.scenario.root_for(q)) is not None:
            return checked
        s, exact = sympy.integer_nthroot(q, d)
        if exact:
            return Fraction(int(s))
        raise MissingRootError(f"q = {q} has no integral {d}-th root; pass --root")

    # Report pieces

    def resolution_report(
        self,
        index: int,
        qs: Iterable[int] = (),
        roots: Mapping[int, Fraction] | None = None,
    ) -> ResolutionReport:
        r = self.scenario.resolutions[index]
        self._log("→", f"resolution {r.name} ({len(r.divisors)} divisors)")
        e = stringy_E(r)
        polynomiality = is_polynomial(e.value, 1)
        shown = polynomiality.poly if polynomiality.poly is not None else e.value.cancel()
        self._log("←", f"E_st = {shown} [{polynomiality.label}]")

        hodge_rows: list[HodgeRow] | None = None
        nonnegative: bool | None = None
        if polynomiality.verdict is Verdict.POLYNOMIAL:
            table = stringy_hodge_numbers(e)
            hodge_rows = [HodgeRow(i=i, j=j, h=h) for (i, j), h in sorted(table.entries.items())]
            nonnegative = table.is_nonnegative

        _, source = self.counts(index)
        points = [self.point_row(index, q, roots or {}) for q in qs] if source else []
        if qs and not source:
            self.notes.append(f"{r.name}: no point counts; strata are not Tate-type")

        return ResolutionReport(
            name=r.name,
            e_st=str(shown),
            numerator=e.value.numer.to_triples(),
            den=e.value.numer.den,
            denominators=[str(x) for x in e.value.denom],
            polynomiality=polynomiality.label,
            hodge=hodge_rows,
            hodge_nonnegative=nonnegative,
            euler=_fmt(stringy_euler_number(r)),
            counts_source=source,
            points=points,
        )

    def point_row(self, index: int, q: int, roots: Mapping[int, Fraction]) -> PointCountRow:
        r = self.scenario.resolutions[index]
        counts = self.counts_at(index, q) or {}
        s = self.root(q, roots)
        n_st = stringy_point_count(r, counts, q, s, den=self.scenario.den)
        integral = n_st / Fraction(q) ** r.dimension
        self._log("←", f"N_st({q}) = {_fmt(n_st)} for {r.name}")
        padic = self.padic_check(r, counts, q, s)
        return PointCountRow(
            q=q,
            root=None if s is None else _fmt(s),
            n_st=_fmt(n_st),
            integral=_fmt(integral),
            padic=None if padic is None else _fmt(padic),
            padic_agrees=None if padic is None else padic == integral,
        )

    def padic_check(
        self, r: ResolutionData, counts: Mapping[int, int], q: int, s: Fraction | None
    ) -> Fraction | None:
        """The pulled-back gauge form integrated stratum by stratum."""
        d = self.scenario.den
        if len(r.divisors) > r.dimension:
            self.notes.append(f"{r.name}: more divisors than coordinates, no p-adic check")
            return None
        try:
            field = LocalField(q=q, den=d, root=s)
        except ValidationError:
            self.notes.append(f"{r.name}: q = {q} is not a prime power, no p-adic check")
            return None
        form = MonomialForm(
            r=d, exponents=tuple(d * a for a in r.discrepancies), dimension=r.dimension
        )
        value = global_integral(form, field, counts, required=r.open_strata().entries)
        self._log("←", f"p-adic integral at q = {q}: {value}")
        return value.value

    def agreement_row(
        self, first: int, second: int, qs: Iterable[int], roots: Mapping[int, Fraction]
    ) -> AgreementRow:
        r1, r2 = self.scenario.resolutions[first], self.scenario.resolutions[second]
        verdict = resolutions_agree(r1, r2)
        self._log("←", f"{r1.name} vs {r2.name}: {verdict.certificate}")
        cleared: list[ClearedRow] = []
        if self.counts(first)[0] is not None and self.counts(second)[0] is not None:
            for q in qs:
                lhs, rhs = cleared_identity(
                    r1,
                    self.counts_at(first, q) or {},
                    r2,
                    self.counts_at(second, q) or {},
                    q,
                    self.root(q, roots),
                    den=self.scenario.den,
                )
                cleared.append(ClearedRow(q=q, lhs=_fmt(lhs), rhs=_fmt(rhs)))
        return AgreementRow(
            first=r1.name,
            second=r2.name,
            agree=verdict.agree,
            certificate=verdict.certificate,
            cleared=cleared,
        )


def run_compute(s: Scenario, debug: bool = False) -> Report:
    """E_st, polynomiality and Hodge tables for every resolution; no q evaluation."""
    harness = Harness(s, debug)
    resolutions = [harness.resolution_report(i) for i in range(len(s.resolutions))]
    agreements = [
        harness.agreement_row(i, j, (), {})
        for i, j in combinations(range(len(s.resolutions)), 2)
    ]
    report = Report(
        scenario=s.name,
        mode="compute",
        input_hash=input_hash(s),
        dimension=s.dimension,
        den=s.den,
        resolutions=resolutions,
        agreements=agreements,
        all_agree=all(a.agree for a in agreements),
        notes=harness.notes,
    )
    return report.sealed()


def default_qs(s: Scenario) -> list[int]:
    """The scenario's own check points, else the configured defaults."""
    if s.checks:
        return [c.q for c in s.checks]
    return list(Config.settings().default_qs)


def run_verify(
    s: Scenario,
    qs: Iterable[int] | None = None,
    roots: Mapping[int, Fraction] | None = None,
    debug: bool = False,
) -> Report:
    """Pairwise agreement, N_st at every q and the p-adic cross-check."""
    qs = list(qs) if qs else default_qs(s)
    roots = dict(roots or {})
    for q in qs:
        if q < 2:
            raise StringyError(f"q must be at least 2, got {q}")
    harness = Harness(s, debug)
    resolutions = [harness.resolution_report(i, qs, roots) for i in range(len(s.resolutions))]
    agreements = [
        harness.agreement_row(i, j, qs, roots)
        for i, j in combinations(range(len(s.resolutions)), 2)
    ]
    consistent = all(
        row.padic_agrees is not False for res in resolutions for row in res.points
    ) and all(row.lhs == row.rhs for a in agreements for row in a.cleared)
    report = Report(
        scenario=s.name,
        mode="verify",
        input_hash=input_hash(s),
        dimension=s.dimension,
        den=s.den,
        resolutions=resolutions,
        agreements=agreements,
        all_agree=consistent and all(a.agree for a in agreements),
        notes=harness.notes,
    )
    return report.sealed()

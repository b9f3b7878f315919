"""Custom exceptions for stringycli."""

from __future__ import annotations


class StringyError(Exception):
    """Base exception for all stringy errors."""

    pass


# Exact arithmetic


class NotDivisibleError(StringyError):
    """Exact division left a nonzero remainder in some charge sector."""

    def __init__(self, sector: int, remainder: dict[int, int]):
        self.sector = sector
        self.remainder = remainder
        super().__init__(
            f"Not divisible: charge sector {sector} leaves remainder {remainder}"
        )


class PoleAtPointError(StringyError):
    """A denominator factor vanishes at the requested specialization."""

    pass


class MissingRootError(StringyError):
    """A fractional power of q was needed but no exact root was supplied."""

    pass


class ExponentOverflowError(StringyError):
    """An exponent lies outside the degree box."""

    pass


# Strata and resolutions


class InvalidResolutionError(StringyError):
    """Resolution data failed validation."""

    pass


class NotLogTerminalError(InvalidResolutionError):
    """Some discrepancy is <= -1."""

    def __init__(self, index: int, label: str, discrepancy: object):
        self.index = index
        self.label = label
        self.discrepancy = discrepancy
        super().__init__(
            f"Not log-terminal: divisor {label!r} has discrepancy {discrepancy} <= -1"
        )


class InconsistentSupportError(InvalidResolutionError):
    """A closed stratum is empty while a deeper intersection is not."""

    def __init__(self, subset: int, superset: int):
        self.subset = subset
        self.superset = superset
        super().__init__(
            f"Inconsistent support: D_J empty for mask {subset:#b} "
            f"but D_J' nonempty for mask {superset:#b}"
        )


class StratumDimensionError(InvalidResolutionError):
    """A stratum's E-polynomial exceeds its degree box."""

    pass


class WrongFlavorError(StringyError):
    """Stratum table has the wrong flavor for this operation."""

    pass


class MissingAmbientError(StringyError):
    """Closed stratum table lacks the ambient entry at the empty subset."""

    pass


# Stringy invariants


class NotPolynomialError(StringyError):
    """Stringy E-function is not a polynomial in u, v."""

    def __init__(self, verdict: str):
        self.verdict = verdict
        super().__init__(f"Stringy E-function is not a polynomial in u, v ({verdict})")


class DimensionMismatchError(StringyError):
    """Two resolutions have different dimensions."""

    pass


class MissingCountError(StringyError):
    """No point count supplied for a nonempty stratum."""

    def __init__(self, mask: int):
        self.mask = mask
        super().__init__(f"Missing point count for stratum mask {mask:#b}")


# p-adic integration


class DivergentIntegralError(StringyError):
    """The p-adic integral does not converge."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"Integral diverges: exponent {index} has k/r <= -1")


# Point counting


class NegativeCountError(StringyError):
    """A scheme expression counts a negative number of points."""

    pass


class UnenumerableError(StringyError):
    """Scheme expression is outside the brute-force fragment."""

    pass


class FieldTooLargeError(StringyError):
    """Brute force refused: field or ambient point set too large."""

    pass


class NotTateError(StringyError):
    """Scheme has no Tate-type E-polynomial."""

    pass


# Scenarios


class ScenarioParseError(StringyError):
    """Scenario file could not be parsed.

    ``line`` is None when the failure has no source position (schema errors
    carry their JSON location in the message instead).
    """

    def __init__(self, line: int | None, message: str):
        self.line = line
        self.message = message
        where = "" if line is None else f" (line {line})"
        super().__init__(f"Parse error{where}: {message}")


# Exit codes

EXIT_OK = 0
EXIT_DISAGREEMENT = 1
EXIT_INPUT_ERROR = 2

"""Exception taxonomy shared by every specled module.

All library errors derive from :class:`SpecledError` so callers can catch one
base class at an API or CLI boundary and map it to an exit code or an HTTP
status.
"""

from __future__ import annotations


class SpecledError(Exception):
    """Base class for all specled errors."""


class GridMismatch(SpecledError):
    """Two spectral objects do not share the same wavelength grid."""


class NonFinite(SpecledError):
    """A spectral value is NaN or infinite."""


class DegenerateColor(SpecledError):
    """Chromaticity is undefined (the u'v' denominator is ~zero)."""


class EmptyOverlap(SpecledError):
    """Source and target wavelength ranges are disjoint when resampling."""


class WeightOutOfBounds(SpecledError):
    """An LED drive weight lies outside [0, max_weight]."""


class LengthMismatch(SpecledError):
    """A weight vector's length does not match the bank's channel count."""


class BadRange(SpecledError):
    """Invalid construction parameters for a synthetic LED bank."""


class DegenerateProblem(SpecledError):
    """The LED bank cannot produce any luminance, so nothing can be solved."""


class Infeasible(SpecledError):
    """No feasible weight pair was found.

    ``solution`` carries the least-violating candidate so callers can still
    inspect or persist it (the CLI writes it with ``feasible: false``).
    """

    def __init__(self, message, solution=None):
        super().__init__(message)
        self.solution = solution


class TooLarge(SpecledError):
    """Brute-force enumeration would exceed the candidate-count guard."""


class ParseError(SpecledError):
    """A file could not be parsed; carries path and 1-based line number."""

    def __init__(self, message, path=None, line=None):
        where = ""
        if path is not None:
            where = f"{path}:" if line is None else f"{path}:{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.path = path
        self.line = line


class SchemaError(SpecledError):
    """A JSON payload is missing a field or a field has the wrong shape."""


class GridError(SpecledError):
    """Wavelength data cannot be reconciled onto a uniform grid."""


class RangeError(SpecledError):
    """A reflectance sample lies outside [0, 1] beyond the clamp slack."""


class ClampWarning(UserWarning):
    """A value marginally outside its legal range was clamped on load."""

"""Wavelength grids, sampled spectra, and CIE colorimetry.

The whole toolkit works on one discrete representation: a uniform wavelength
grid and per-sample values.  Tristimulus integration uses the rectangle rule
with ``quadrature_scale = step_nm`` so that ``XYZ = C @ (r * w) * step`` stays
a plain matrix product; every downstream quantity is either a ratio (u'v')
or a raw-luminance comparison, so the quadrature constant is never rescaled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    DegenerateColor,
    EmptyOverlap,
    GridMismatch,
    NonFinite,
)

__all__ = [
    "SpectralGrid",
    "Spectrum",
    "Reflectance",
    "ColorMatcher",
    "Tristimulus",
    "Chromaticity",
    "SrgbSwatch",
    "DEFAULT_GRID",
    "tristimulus",
    "uv_prime",
    "uv_distance",
    "preview_srgb",
    "resample",
    "resample_matcher",
]

# CIE 1976 UCS spectral-locus bounding box; any physical spectrum lands inside.
U_PRIME_MAX = 0.65
V_PRIME_MAX = 0.62

# IEC 61966-2-1 primaries, D65 white (the usual 7-digit published matrix).
XYZ_TO_LINEAR_SRGB = np.array(
    [
        [3.2404542, -1.5371385, -0.4985314],
        [-0.9692660, 1.8760108, 0.0415560],
        [0.0556434, -0.2040259, 1.0572252],
    ]
)

_DEGENERATE_REL = 1e-12


def _as_readonly(values, count, *, lo=None, hi=None, what="value"):
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] != count:
        raise ValueError(
            f"expected {count} samples, got array of shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise NonFinite(f"non-finite {what} at sample "
                        f"{int(np.flatnonzero(~np.isfinite(arr))[0])}")
    if lo is not None and arr.min() < lo:
        raise ValueError(f"{what} below {lo}: min is {arr.min()}")
    if hi is not None and arr.max() > hi:
        raise ValueError(f"{what} above {hi}: max is {arr.max()}")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class SpectralGrid:
    """Uniform wavelength sampling: ``start_nm + i * step_nm`` for i < count.

    Parameters
    ----------
    start_nm : float
        First sample wavelength in nm; must be positive.
    step_nm : float
        Sample spacing in nm; must be positive.
    count : int
        Number of samples; at least 2.
    """

    start_nm: float
    step_nm: float
    count: int

    def __post_init__(self):
        object.__setattr__(self, "start_nm", float(self.start_nm))
        object.__setattr__(self, "step_nm", float(self.step_nm))
        object.__setattr__(self, "count", int(self.count))
        if self.step_nm <= 0:
            raise ValueError(f"step_nm must be positive, got {self.step_nm}")
        if self.start_nm <= 0:
            raise ValueError(f"start_nm must be positive, got {self.start_nm}")
        if self.count < 2:
            raise ValueError(f"count must be >= 2, got {self.count}")

    @property
    def end_nm(self):
        """Last sample wavelength in nm."""
        return self.start_nm + (self.count - 1) * self.step_nm

    def wavelengths(self):
        """Sample wavelengths as a float64 array of length ``count``."""
        return self.start_nm + self.step_nm * np.arange(self.count)


#: 380-780 nm at 5 nm, 81 samples; every bundled fixture uses this grid.
DEFAULT_GRID = SpectralGrid(380.0, 5.0, 81)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Nonnegative sampled function of wavelength (a light's SPD, or an LED
    basis curve in relative units)."""

    grid: SpectralGrid
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self,
            "values",
            _as_readonly(self.values, self.grid.count, lo=0.0, what="spectrum"),
        )

    def __eq__(self, other):
        if not isinstance(other, Spectrum):
            return NotImplemented
        return self.grid == other.grid and np.array_equal(self.values, other.values)

    def scaled(self, k):
        """Return a copy with all values multiplied by ``k`` (k >= 0)."""
        return Spectrum(self.grid, self.values * float(k))


@dataclass(frozen=True, eq=False)
class Reflectance:
    """Sampled spectral reflectance; the diagonal of the material matrix.

    Values are dimensionless in [0, 1].
    """

    grid: SpectralGrid
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self,
            "values",
            _as_readonly(
                self.values, self.grid.count, lo=0.0, hi=1.0, what="reflectance"
            ),
        )

    def __eq__(self, other):
        if not isinstance(other, Reflectance):
            return NotImplemented
        return self.grid == other.grid and np.array_equal(self.values, other.values)


@dataclass(frozen=True, eq=False)
class ColorMatcher:
    """Sampled observer: the three color matching rows plus the quadrature
    weight that turns a dot product into an integral.

    ``quadrature_scale`` defaults to the grid step (rectangle rule).  The
    ingest-time sanity check that the luminance row peaks near 555 nm lives in
    :meth:`validate_observer_shape`, not the constructor, so toy matchers used
    in tests remain constructible.
    """

    grid: SpectralGrid
    cx: np.ndarray
    cy: np.ndarray
    cz: np.ndarray
    quadrature_scale: float = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        for name in ("cx", "cy", "cz"):
            object.__setattr__(
                self,
                name,
                _as_readonly(getattr(self, name), self.grid.count, lo=0.0, what=name),
            )
        if self.quadrature_scale is None:
            object.__setattr__(self, "quadrature_scale", self.grid.step_nm)
        else:
            object.__setattr__(self, "quadrature_scale", float(self.quadrature_scale))
        if self.quadrature_scale <= 0:
            raise ValueError("quadrature_scale must be positive")

    def validate_observer_shape(self):
        """Check that the luminance row peaks in 550-560 nm.

        Raises
        ------
        ValueError
            If the ``cy`` argmax falls outside 550-560 nm.  Called by loaders
            on ingested observer tables; not enforced for synthetic matchers.
        """
        peak_nm = self.grid.start_nm + self.grid.step_nm * int(np.argmax(self.cy))
        if not 550.0 <= peak_nm <= 560.0:
            raise ValueError(
                f"luminance row peaks at {peak_nm:g} nm, expected 550-560 nm"
            )
        return self

    @cached_property
    def rows(self):
        """The 3 x count matrix ``[cx; cy; cz]``."""
        m = np.vstack([self.cx, self.cy, self.cz])
        m.setflags(write=False)
        return m


@dataclass(frozen=True)
class Tristimulus:
    """CIE XYZ in relative units (no normalization to Y = 100)."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise NonFinite(f"tristimulus {name} is not finite")
            object.__setattr__(self, name, v)

    def as_array(self):
        return np.array([self.x, self.y, self.z])


@dataclass(frozen=True)
class Chromaticity:
    """CIE 1976 UCS coordinates plus the raw luminance they came from."""

    u_prime: float
    v_prime: float
    luminance_y: float


@dataclass(frozen=True)
class SrgbSwatch:
    """8-bit sRGB rendering of a tristimulus value.

    ``clipped`` is True when any linear channel fell outside [0, 1] before
    encoding (out-of-gamut or brighter than the reference white).
    """

    r: int
    g: int
    b: int
    clipped: bool

    @property
    def rgb(self):
        return (self.r, self.g, self.b)


def _require_same_grid(*objs):
    g0 = objs[0].grid
    for o in objs[1:]:
        if o.grid != g0:
            raise GridMismatch(f"grids differ: {g0} vs {o.grid}")
    return g0


def tristimulus(w, r=None, c=None):
    """Integrate illuminant x reflectance x observer into CIE XYZ.

    Parameters
    ----------
    w : Spectrum
        Illuminant SPD.
    r : Reflectance or None
        Material; None means the identity (the illuminant's own color).
    c : ColorMatcher
        Observer rows with quadrature weight.

    Returns
    -------
    Tristimulus

    Notes
    -----
    ``X = quadrature_scale * sum(cx * r * w)`` and likewise for Y, Z, i.e. a
    rectangle-rule integral; bilinear in ``(w, r)``.
    """
    if c is None:
        raise TypeError("tristimulus() requires a ColorMatcher")
    if r is None:
        _require_same_grid(w, c)
        rw = w.values
    else:
        _require_same_grid(w, r, c)
        rw = r.values * w.values
    s = c.quadrature_scale
    return Tristimulus(
        s * float(c.cx @ rw),
        s * float(c.cy @ rw),
        s * float(c.cz @ rw),
    )


def uv_prime(t):
    """Project XYZ onto the CIE 1976 UCS chromaticity plane.

    Returns
    -------
    Chromaticity
        ``u' = 4X / (X + 15Y + 3Z)``, ``v' = 9Y / (X + 15Y + 3Z)``, with the
        raw Y carried along as ``luminance_y``.

    Raises
    ------
    DegenerateColor
        If the denominator is at or below 1e-12 of the input scale.
    """
    denom = t.x + 15.0 * t.y + 3.0 * t.z
    scale = max(abs(t.x), abs(t.y), abs(t.z))
    if scale == 0.0 or denom <= _DEGENERATE_REL * scale:
        raise DegenerateColor(
            f"u'v' undefined for XYZ=({t.x:g}, {t.y:g}, {t.z:g})"
        )
    return Chromaticity(4.0 * t.x / denom, 9.0 * t.y / denom, t.y)


def uv_distance(a, b):
    """Euclidean distance between two u'v' points (luminance is ignored)."""
    return math.hypot(a.u_prime - b.u_prime, a.v_prime - b.v_prime)


def _srgb_encode(linear):
    # IEC 61966-2-1 transfer curve, scalar in [0, 1].
    if linear <= 0.0031308:
        return 12.92 * linear
    return 1.055 * linear ** (1.0 / 2.4) - 0.055


def preview_srgb(t, white_y):
    """Render a tristimulus value as an 8-bit sRGB swatch.

    Parameters
    ----------
    t : Tristimulus
    white_y : float
        Luminance of the reference illuminant; ``t`` is scaled by
        ``1 / white_y`` before the sRGB matrix, so the reference illuminant
        itself renders as full white.

    Returns
    -------
    SrgbSwatch
        Channels clamped to [0, 1] before encoding; round-half-up to 8 bits.
    """
    white_y = float(white_y)
    if not white_y > 0:
        raise ValueError(f"white_y must be positive, got {white_y}")
    linear = XYZ_TO_LINEAR_SRGB @ (t.as_array() / white_y)
    clipped = bool(np.any(linear < 0.0) or np.any(linear > 1.0))
    linear = np.clip(linear, 0.0, 1.0)
    quant = [int(math.floor(_srgb_encode(v) * 255.0 + 0.5)) for v in linear]
    return SrgbSwatch(quant[0], quant[1], quant[2], clipped)


def _check_overlap(source_grid, target_grid):
    if (
        target_grid.start_nm > source_grid.end_nm
        or target_grid.end_nm < source_grid.start_nm
    ):
        raise EmptyOverlap(
            f"no overlap between source {source_grid.start_nm:g}-"
            f"{source_grid.end_nm:g} nm and target {target_grid.start_nm:g}-"
            f"{target_grid.end_nm:g} nm"
        )


def resample(s, target):
    """Linearly interpolate a spectrum or reflectance onto another grid.

    Wavelengths outside the source range take the nearest endpoint value
    (flat extension).  Reflectance output is re-clamped to [0, 1] to absorb
    interpolation round-off.

    Raises
    ------
    EmptyOverlap
        If the source and target ranges are disjoint.
    """
    if s.grid == target:
        return s
    _check_overlap(s.grid, target)
    out = np.interp(target.wavelengths(), s.grid.wavelengths(), s.values)
    if isinstance(s, Reflectance):
        return Reflectance(target, np.clip(out, 0.0, 1.0))
    return Spectrum(target, out)


def resample_matcher(c, target):
    """Resample all three observer rows onto ``target`` (linear, flat ends).

    The quadrature weight becomes the target grid's step.
    """
    if c.grid == target:
        return c
    _check_overlap(c.grid, target)
    src = c.grid.wavelengths()
    dst = target.wavelengths()
    return ColorMatcher(
        target,
        np.interp(dst, src, c.cx),
        np.interp(dst, src, c.cy),
        np.interp(dst, src, c.cz),
    )

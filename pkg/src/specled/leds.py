"""LED banks and the linear illuminant synthesis model.

An illuminant is a nonnegative weighted sum of fixed per-channel basis
spectra.  Weights are plain float arrays ("drive levels"), box-bounded to
``[0, max_weight]`` per channel; physical drive cannot be negative and
saturates at full power.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import BadRange, GridMismatch, LengthMismatch, WeightOutOfBounds
from .spectral import SpectralGrid, Spectrum

__all__ = ["LedBank", "synthesize", "check_weights", "gaussian_bank"]


@dataclass(frozen=True, eq=False)
class LedBank:
    """Ordered set of LED basis spectra sharing one grid.

    Parameters
    ----------
    name : str
    grid : SpectralGrid
    basis : tuple of Spectrum
        One per channel, at least 2; each must have a strictly positive
        sample somewhere.
    channel_labels : tuple of str
    max_weight : float
        Per-channel drive cap, default 1.0.
    """

    name: str
    grid: SpectralGrid
    basis: tuple
    channel_labels: tuple
    max_weight: float = 1.0

    def __post_init__(self):
        basis = tuple(self.basis)
        labels = tuple(str(s) for s in self.channel_labels)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "channel_labels", labels)
        object.__setattr__(self, "max_weight", float(self.max_weight))
        if len(basis) < 2:
            raise ValueError(f"bank needs >= 2 channels, got {len(basis)}")
        if len(labels) != len(basis):
            raise ValueError("channel_labels count differs from basis count")
        if not self.max_weight > 0:
            raise ValueError("max_weight must be positive")
        for i, s in enumerate(basis):
            if s.grid != self.grid:
                raise GridMismatch(f"channel {i} is on a different grid")
            if not np.any(s.values > 0):
                raise ValueError(f"channel {i} ({labels[i]!r}) is identically zero")

    @property
    def n(self):
        """Number of channels."""
        return len(self.basis)

    @cached_property
    def basis_matrix(self):
        """Channels stacked as an (n, count) read-only array."""
        m = np.vstack([s.values for s in self.basis])
        m.setflags(write=False)
        return m


def check_weights(bank, weights):
    """Validate a weight vector against a bank; returns a float64 copy.

    Raises
    ------
    LengthMismatch
        If the vector length differs from the channel count.
    WeightOutOfBounds
        If any weight is negative or above ``bank.max_weight``.
    """
    a = np.asarray(weights, dtype=np.float64)
    if a.ndim != 1 or a.shape[0] != bank.n:
        raise LengthMismatch(
            f"expected {bank.n} weights, got shape {a.shape}"
        )
    if not np.all(np.isfinite(a)):
        raise WeightOutOfBounds("weights must be finite")
    if a.min() < 0.0 or a.max() > bank.max_weight:
        raise WeightOutOfBounds(
            f"weights must lie in [0, {bank.max_weight:g}]; "
            f"got range [{a.min():g}, {a.max():g}]"
        )
    return a.copy()


def synthesize(bank, weights):
    """Combine bank channels into an illuminant: ``w = sum_k a_k * e_k``.

    Linear in the weights; the output lives on the bank grid.
    """
    a = check_weights(bank, weights)
    return Spectrum(bank.grid, a @ bank.basis_matrix)


def gaussian_bank(n, peak_range, fwhm_nm, grid, seed):
    """Build a synthetic bank of Gaussian channels for tests and fixtures.

    Peaks are evenly spaced across ``peak_range`` with a deterministic
    seed-driven jitter of at most +/-2 nm (keeps test problems away from
    pathological symmetry); all channels share one FWHM and unit peak
    amplitude.

    Parameters
    ----------
    n : int
        Channel count, at least 2.
    peak_range : (float, float)
        First and last nominal peak wavelength in nm; must lie within the
        grid range.
    fwhm_nm : float
        Full width at half maximum shared by all channels.
    grid : SpectralGrid
    seed : int
        Drives the jitter; identical seeds give identical banks.

    Raises
    ------
    BadRange
        For n < 2, a bad peak interval, or a nonpositive FWHM.
    """
    if n < 2:
        raise BadRange(f"need n >= 2 channels, got {n}")
    lo, hi = float(peak_range[0]), float(peak_range[1])
    if not lo < hi:
        raise BadRange(f"peak_range must be increasing, got ({lo:g}, {hi:g})")
    if lo < grid.start_nm or hi > grid.end_nm:
        raise BadRange(
            f"peak_range ({lo:g}, {hi:g}) exceeds grid "
            f"{grid.start_nm:g}-{grid.end_nm:g} nm"
        )
    if not fwhm_nm > 0:
        raise BadRange(f"fwhm_nm must be positive, got {fwhm_nm}")

    rng = np.random.default_rng(seed)
    peaks = np.linspace(lo, hi, n) + rng.uniform(-2.0, 2.0, n)
    peaks = np.clip(peaks, grid.start_nm, grid.end_nm)
    sigma = float(fwhm_nm) / (2.0 * math.sqrt(2.0 * math.log(2.0)))
    wl = grid.wavelengths()
    basis = tuple(
        Spectrum(grid, np.exp(-0.5 * ((wl - p) / sigma) ** 2)) for p in peaks
    )
    labels = tuple(f"led{k:02d}_{p:.1f}nm" for k, p in enumerate(peaks))
    return LedBank(
        name=f"gaussian-{n}ch-fwhm{fwhm_nm:g}-seed{seed}",
        grid=grid,
        basis=basis,
        channel_labels=labels,
    )

"""
Spectra, tristimulus integration, and the u'v' plane
====================================================

Every quantity downstream of the solver reduces to the rectangle-rule
tristimulus integral and the projective map onto (u', v').  This walk
shows both on a toy observer where the answers are exact fractions.
"""

import numpy as np

from specled import (
    DEFAULT_GRID,
    ColorMatcher,
    Reflectance,
    Spectrum,
    load_default_matcher,
    preview_srgb,
    tristimulus,
    uv_distance,
    uv_prime,
)

print("== 1. the wavelength grid ==")
print("   start:", DEFAULT_GRID.start_nm, "nm")
print("   step: ", DEFAULT_GRID.step_nm, "nm")
print("   count:", DEFAULT_GRID.count)

print("== 2. equal-energy light through an all-ones observer ==")
ones = np.ones(DEFAULT_GRID.count)
toy = ColorMatcher(grid=DEFAULT_GRID, cx=ones, cy=ones, cz=ones)
flat = Spectrum(DEFAULT_GRID, ones)
t = tristimulus(flat, None, toy)
c = uv_prime(t)
print("   XYZ:", (t.x, t.y, t.z))
print("   u'v':", (c.u_prime, c.v_prime))
print("   exact:", (4 / 19, 9 / 19))

print("== 3. a real observer and a green fabric ==")
matcher = load_default_matcher()
lam = DEFAULT_GRID.wavelengths()
green = Reflectance(
    DEFAULT_GRID, 0.1 + 0.8 * np.exp(-0.5 * ((lam - 540.0) / 35.0) ** 2)
)
white = tristimulus(flat, None, matcher)
fabric = tristimulus(flat, green, matcher)
print("   white point:", uv_prime(white))
print("   fabric:     ", uv_prime(fabric))
print("   distance:   ", uv_distance(uv_prime(white), uv_prime(fabric)))

print("== 4. sRGB preview bytes ==")
swatch = preview_srgb(fabric, white.y)
print("   rgb:", swatch.rgb, " clipped:", swatch.clipped)

"""specled: design illuminant pairs that steer material color appearance.

A multichannel LED bank can synthesize many spectra that all look white.
This package searches that freedom for pairs of lights that make printed
materials change appearance on purpose: either two materials that match
under one light and split apart under the other, or one material that
visibly shifts color while a second material and the white point hold
still.  Core colorimetry, LED synthesis, the constrained solver, reports,
file formats, a CLI, and an HTTP service live in the submodules re-exported
here.
"""

from .errors import (
    BadRange,
    ClampWarning,
    DegenerateColor,
    DegenerateProblem,
    EmptyOverlap,
    GridError,
    GridMismatch,
    Infeasible,
    LengthMismatch,
    NonFinite,
    ParseError,
    RangeError,
    SchemaError,
    SpecledError,
    TooLarge,
    WeightOutOfBounds,
)
from .spectral import (
    DEFAULT_GRID,
    Chromaticity,
    ColorMatcher,
    Reflectance,
    SpectralGrid,
    Spectrum,
    SrgbSwatch,
    Tristimulus,
    preview_srgb,
    resample,
    resample_matcher,
    tristimulus,
    uv_distance,
    uv_prime,
)
from .leds import LedBank, check_weights, gaussian_bank, synthesize
from .optimize import (
    ConstraintForm,
    ConstraintReport,
    ConstraintRow,
    EffectMode,
    Mode,
    SolveParams,
    SolveProblem,
    SolveSolution,
    close_luminance_gap,
    constraint_report,
    constraints_iso,
    constraints_scc,
    objective_iso,
    objective_scc,
    objective_value,
    oracle_grid,
    solve,
)
from .report import (
    EffectReport,
    MetricRow,
    evaluate,
    format_text,
    ppm_strip,
    report_json_str,
    report_payload,
    swatch_rows,
)
from .fixtures import (
    fixture_index,
    fixtures_dir,
    list_fixture_problems,
    load_default_matcher,
    load_fixture_problem,
)

__version__ = "0.1.0"

__all__ = [
    "BadRange",
    "ClampWarning",
    "DegenerateColor",
    "DegenerateProblem",
    "EmptyOverlap",
    "GridError",
    "GridMismatch",
    "Infeasible",
    "LengthMismatch",
    "NonFinite",
    "ParseError",
    "RangeError",
    "SchemaError",
    "SpecledError",
    "TooLarge",
    "WeightOutOfBounds",
    "DEFAULT_GRID",
    "Chromaticity",
    "ColorMatcher",
    "Reflectance",
    "SpectralGrid",
    "Spectrum",
    "SrgbSwatch",
    "Tristimulus",
    "preview_srgb",
    "resample",
    "resample_matcher",
    "tristimulus",
    "uv_distance",
    "uv_prime",
    "LedBank",
    "check_weights",
    "gaussian_bank",
    "synthesize",
    "ConstraintForm",
    "ConstraintReport",
    "ConstraintRow",
    "EffectMode",
    "Mode",
    "SolveParams",
    "SolveProblem",
    "SolveSolution",
    "close_luminance_gap",
    "constraint_report",
    "constraints_iso",
    "constraints_scc",
    "objective_iso",
    "objective_scc",
    "objective_value",
    "oracle_grid",
    "solve",
    "EffectReport",
    "MetricRow",
    "evaluate",
    "format_text",
    "ppm_strip",
    "report_json_str",
    "report_payload",
    "swatch_rows",
    "fixture_index",
    "fixtures_dir",
    "list_fixture_problems",
    "load_default_matcher",
    "load_fixture_problem",
    "__version__",
]

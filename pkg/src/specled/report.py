"""Post-hoc evaluation of a solved illuminant pair.

Turns a (problem, solution) pair into the small metric set used to judge
each effect: how far apart the materials sit under each light, how far each
material travels across the light switch, and the white-point shift, all as
u'v' distances.  A fixed reference column from a stage measurement on
different hardware is printed alongside for context; it is not a target and
never participates in any check.
"""

from __future__ import annotations

import json

import numpy as np

from .leds import check_weights, synthesize
from .optimize import Mode
from .spectral import preview_srgb, tristimulus, uv_distance, uv_prime

__all__ = [
    "MetricRow",
    "EffectReport",
    "evaluate",
    "report_payload",
    "report_json_str",
    "format_text",
    "swatch_rows",
    "ppm_strip",
]

REFERENCE_NOTE = "stage measurement on different hardware; context, not a target"

_REFERENCE_ISO = {
    "separation_under_w1": 1.9e-1,
    "separation_under_w2": 9.8e-2,
    "white_shift": 8.1e-2,
}
_REFERENCE_SCC = {
    "material1_travel": 4.8e-2,
    "material2_travel": 3.6e-3,
    "white_shift": 3.7e-2,
}


class MetricRow(tuple):
    """(label, value, reference) with named access."""

    __slots__ = ()

    def __new__(cls, label, value, reference=None):
        value = float(value)
        if not np.isfinite(value) or value < 0:
            raise ValueError(f"metric {label!r} must be finite and >= 0")
        return super().__new__(cls, (label, value, reference))

    @property
    def label(self):
        return self[0]

    @property
    def value(self):
        return self[1]

    @property
    def reference(self):
        return self[2]


class EffectReport:
    def __init__(self, mode, metrics):
        self.mode = mode
        self.metrics = tuple(metrics)

    def __getitem__(self, label):
        for row in self.metrics:
            if row.label == label:
                return row.value
        raise KeyError(label)

    def __iter__(self):
        return iter(self.metrics)


def evaluate(problem, solution):
    """Measure the per-mode metric set for a solution's weight pair."""
    a1 = check_weights(problem.bank, solution.alpha1)
    a2 = check_weights(problem.bank, solution.alpha2)
    w1 = synthesize(problem.bank, a1)
    w2 = synthesize(problem.bank, a2)

    def uv(light, material=None):
        return uv_prime(tristimulus(light, material, problem.matcher))

    white_shift = uv_distance(uv(w1), uv(w2))
    if problem.mode.mode is Mode.ISOCHROMATIC:
        ref = _REFERENCE_ISO
        metrics = [
            MetricRow(
                "separation_under_w1",
                uv_distance(uv(w1, problem.r1), uv(w1, problem.r2)),
                ref["separation_under_w1"],
            ),
            MetricRow(
                "separation_under_w2",
                uv_distance(uv(w2, problem.r1), uv(w2, problem.r2)),
                ref["separation_under_w2"],
            ),
            MetricRow("white_shift", white_shift, ref["white_shift"]),
        ]
    else:
        ref = _REFERENCE_SCC
        metrics = [
            MetricRow(
                "material1_travel",
                uv_distance(uv(w1, problem.r1), uv(w2, problem.r1)),
                ref["material1_travel"],
            ),
            MetricRow(
                "material2_travel",
                uv_distance(uv(w1, problem.r2), uv(w2, problem.r2)),
                ref["material2_travel"],
            ),
            MetricRow("white_shift", white_shift, ref["white_shift"]),
        ]
    return EffectReport(problem.mode, metrics)


def report_payload(report):
    payload = {"mode": report.mode.mode.value}
    if report.mode.constraint_form is not None:
        payload["constraint_form"] = report.mode.constraint_form.value
    payload["metrics"] = [
        {"label": row.label, "value": row.value, "reference": row.reference}
        for row in report.metrics
    ]
    payload["reference_note"] = REFERENCE_NOTE
    return payload


def report_json_str(report):
    return json.dumps(report_payload(report), indent=2) + "\n"


def format_text(report):
    """Aligned-column plain-text rendering of a report."""
    head = report.mode.mode.value
    if report.mode.constraint_form is not None:
        head += f" ({report.mode.constraint_form.value})"
    labels = [row.label for row in report.metrics]
    width = max(len("metric"), *(len(s) for s in labels))
    lines = [f"effect: {head}", f"{'metric':<{width}}  {'measured':>12}  {'reference*':>12}"]
    for row in report.metrics:
        ref = f"{row.reference:.3g}" if row.reference is not None else "-"
        lines.append(f"{row.label:<{width}}  {row.value:>12.6g}  {ref:>12}")
    lines.append(f"* {REFERENCE_NOTE}")
    return "\n".join(lines) + "\n"


def swatch_rows(problem, a1, a2):
    """Display swatches for both materials and the white point.

    Each illuminant's own luminance is the white reference for its column,
    so both lights render as white in their own column.  Returns dict rows
    ``{"material", "under", "srgb", "uv"}`` in a fixed order.
    """
    a1 = check_weights(problem.bank, a1)
    a2 = check_weights(problem.bank, a2)
    lights = {"w1": synthesize(problem.bank, a1), "w2": synthesize(problem.bank, a2)}
    white_y = {
        name: tristimulus(light, None, problem.matcher).y
        for name, light in lights.items()
    }
    materials = {"r1": problem.r1, "r2": problem.r2, "white": None}
    rows = []
    for mat_name, material in materials.items():
        for light_name, light in lights.items():
            t = tristimulus(light, material, problem.matcher)
            c = uv_prime(t)
            s = preview_srgb(t, white_y[light_name])
            rows.append({
                "material": mat_name,
                "under": light_name,
                "srgb": list(s.rgb),
                "uv": [c.u_prime, c.v_prime],
            })
    return rows


def ppm_strip(rows, cell=48):
    """Binary P6 image of the swatch grid: materials across, lights down."""
    mats, unders = [], []
    for row in rows:
        if row["material"] not in mats:
            mats.append(row["material"])
        if row["under"] not in unders:
            unders.append(row["under"])
    color = {(r["material"], r["under"]): r["srgb"] for r in rows}
    img = np.zeros((len(unders) * cell, len(mats) * cell, 3), dtype=np.uint8)
    for i, under in enumerate(unders):
        for j, mat in enumerate(mats):
            img[i * cell : (i + 1) * cell, j * cell : (j + 1) * cell] = color[
                (mat, under)
            ]
    header = f"P6\n{img.shape[1]} {img.shape[0]}\n255\n".encode("ascii")
    return header + img.tobytes()

"""File ingestion and persistence: spectral CSVs, bank/problem/solution JSON.

CSV contract (bit-exact on write): UTF-8, header ``wavelength_nm,value``
(observer tables use ``wavelength_nm,xbar,ybar,zbar``), one sample per line,
ascending wavelengths, ``.`` decimal separator, LF line endings, values at
9 significant digits.  JSON payload schemas live next to the loaders below.
"""

from __future__ import annotations

import json
import warnings
from pathlib import Path

import numpy as np

from .errors import (
    ClampWarning,
    EmptyOverlap,
    GridError,
    ParseError,
    RangeError,
    SchemaError,
)
from .leds import LedBank
from .optimize import (
    ConstraintForm,
    ConstraintReport,
    ConstraintRow,
    EffectMode,
    Mode,
    SolveParams,
    SolveProblem,
    SolveSolution,
)
from .spectral import (
    ColorMatcher,
    Reflectance,
    SpectralGrid,
    Spectrum,
    resample,
    resample_matcher,
)

__all__ = [
    "load_spectrum_csv",
    "save_spectrum_csv",
    "load_cmf_csv",
    "save_cmf_csv",
    "load_bank_json",
    "save_bank_json",
    "load_solution",
    "save_solution",
    "solution_payload",
    "solution_json_str",
    "load_problem",
    "problem_payload",
]

#: Values this far outside a legal range are clamped with a warning; anything
#: further out raises RangeError.
CLAMP_SLACK = 1e-9

_SPACING_RTOL = 1e-6


def _fmt(x):
    # 9 significant digits, '.' decimal separator, no exponent surprises for
    # the wavelength magnitudes used here.
    return f"{float(x):.9g}"


def _read_lines(path):
    text = Path(path).read_text(encoding="utf-8")
    return text.split("\n")


def _clamp_or_raise(value, lo, hi, path, line, what):
    """Clamp ``value`` into [lo, hi] within CLAMP_SLACK, else RangeError.

    ``hi`` may be None for an unbounded top.
    """
    if value < lo:
        if value >= lo - CLAMP_SLACK:
            warnings.warn(
                f"{path}:{line}: {what} {value!r} clamped to {lo}", ClampWarning
            )
            return lo
        raise RangeError(f"{path}:{line}: {what} {value!r} below {lo}")
    if hi is not None and value > hi:
        if value <= hi + CLAMP_SLACK:
            warnings.warn(
                f"{path}:{line}: {what} {value!r} clamped to {hi}", ClampWarning
            )
            return hi
        raise RangeError(f"{path}:{line}: {what} {value!r} above {hi}")
    return value


def _parse_csv_table(path, header, n_cols):
    lines = _read_lines(path)
    if not lines or lines[0].rstrip("\r") != header:
        raise ParseError(f"expected header {header!r}", path=path, line=1)
    rows = []
    for i, raw in enumerate(lines[1:], start=2):
        line = raw.rstrip("\r")
        if not line:
            continue  # blank (e.g. trailing newline)
        parts = line.split(",")
        if len(parts) != n_cols:
            raise ParseError(
                f"expected {n_cols} comma-separated fields, got {len(parts)}",
                path=path,
                line=i,
            )
        try:
            rows.append(([float(p) for p in parts], i))
        except ValueError as exc:
            raise ParseError(str(exc), path=path, line=i) from None
    if len(rows) < 2:
        raise ParseError("need at least 2 samples", path=path, line=len(lines))
    return rows


def _grid_from_wavelengths(wl, path, lines):
    for k in range(1, len(wl)):
        if wl[k] <= wl[k - 1]:
            raise ParseError(
                f"wavelengths must be strictly ascending "
                f"({wl[k - 1]:g} then {wl[k]:g})",
                path=path,
                line=lines[k],
            )
    step = (wl[-1] - wl[0]) / (len(wl) - 1)
    diffs = np.diff(wl)
    if np.any(np.abs(diffs - step) > _SPACING_RTOL * step):
        raise GridError(
            f"{path}: wavelength spacing is not uniform "
            f"(nominal step {step:g} nm)"
        )
    return SpectralGrid(wl[0], step, len(wl))


def load_spectrum_csv(path, kind="spectrum"):
    """Load a two-column spectral CSV as a Spectrum or Reflectance.

    Parameters
    ----------
    path : str or Path
    kind : {"spectrum", "reflectance"}
        Reflectance samples must lie in [0, 1]; values within
        ``CLAMP_SLACK`` outside are clamped with a :class:`ClampWarning`,
        anything further raises :class:`RangeError`.  Spectra get the same
        treatment for negatives.
    """
    if kind not in ("spectrum", "reflectance"):
        raise ValueError(f"kind must be 'spectrum' or 'reflectance', got {kind!r}")
    rows = _parse_csv_table(path, "wavelength_nm,value", 2)
    wl = np.array([r[0][0] for r in rows])
    lines = [r[1] for r in rows]
    grid = _grid_from_wavelengths(wl, path, lines)
    hi = 1.0 if kind == "reflectance" else None
    vals = np.array(
        [
            _clamp_or_raise(r[0][1], 0.0, hi, path, r[1], kind)
            for r in rows
        ]
    )
    cls = Reflectance if kind == "reflectance" else Spectrum
    return cls(grid, vals)


def save_spectrum_csv(path, s):
    """Write a Spectrum or Reflectance in the two-column CSV contract."""
    wl = s.grid.wavelengths()
    lines = ["wavelength_nm,value"]
    lines += [f"{_fmt(w)},{_fmt(v)}" for w, v in zip(wl, s.values)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def load_cmf_csv(path):
    """Load an observer table (``wavelength_nm,xbar,ybar,zbar``).

    The ingested data must satisfy the luminance-peak sanity check (ybar
    argmax within 550-560 nm); failure raises :class:`SchemaError`.
    """
    rows = _parse_csv_table(path, "wavelength_nm,xbar,ybar,zbar", 4)
    wl = np.array([r[0][0] for r in rows])
    lines = [r[1] for r in rows]
    grid = _grid_from_wavelengths(wl, path, lines)
    cols = []
    for j, name in enumerate(("xbar", "ybar", "zbar"), start=1):
        cols.append(
            np.array(
                [_clamp_or_raise(r[0][j], 0.0, None, path, r[1], name) for r in rows]
            )
        )
    matcher = ColorMatcher(grid, cols[0], cols[1], cols[2])
    try:
        matcher.validate_observer_shape()
    except ValueError as exc:
        raise SchemaError(f"{path}: {exc}") from None
    return matcher


def save_cmf_csv(path, c):
    """Write an observer table in the four-column CSV contract."""
    wl = c.grid.wavelengths()
    lines = ["wavelength_nm,xbar,ybar,zbar"]
    lines += [
        f"{_fmt(w)},{_fmt(x)},{_fmt(y)},{_fmt(z)}"
        for w, x, y, z in zip(wl, c.cx, c.cy, c.cz)
    ]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def _get(obj, key, kind, where):
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object")
    if key not in obj:
        raise SchemaError(f"{where}: missing field {key!r}")
    val = obj[key]
    if kind is float:
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            raise SchemaError(f"{where}: field {key!r} must be a number")
        return float(val)
    if kind is int:
        if isinstance(val, bool) or not isinstance(val, int):
            raise SchemaError(f"{where}: field {key!r} must be an integer")
        return val
    if not isinstance(val, kind):
        raise SchemaError(
            f"{where}: field {key!r} must be {kind.__name__}, got "
            f"{type(val).__name__}"
        )
    return val


def _grid_from_payload(obj, where):
    return SpectralGrid(
        _get(obj, "start_nm", float, where),
        _get(obj, "step_nm", float, where),
        _get(obj, "count", int, where),
    )


def load_bank_json(path):
    """Load an LED bank from its JSON schema.

    Channel order in the file is authoritative and preserved; weight vector
    index k always refers to ``channels[k]``.
    """
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc), path=path, line=exc.lineno) from None
    return bank_from_payload(payload, where=str(path))


def bank_from_payload(payload, where="bank"):
    grid = _grid_from_payload(_get(payload, "grid", dict, where), f"{where}.grid")
    channels = _get(payload, "channels", list, where)
    basis = []
    labels = []
    for k, ch in enumerate(channels):
        label = _get(ch, "label", str, f"{where}.channels[{k}]")
        values = _get(ch, "values", list, f"{where}.channels[{k}]")
        if len(values) != grid.count:
            raise SchemaError(
                f"{where}.channels[{k}]: expected {grid.count} values, "
                f"got {len(values)}"
            )
        try:
            basis.append(Spectrum(grid, values))
        except Exception as exc:
            raise SchemaError(f"{where}.channels[{k}]: {exc}") from None
        labels.append(label)
    try:
        return LedBank(
            name=_get(payload, "name", str, where),
            grid=grid,
            basis=tuple(basis),
            channel_labels=tuple(labels),
            max_weight=_get(payload, "max_weight", float, where),
        )
    except SchemaError:
        raise
    except Exception as exc:
        raise SchemaError(f"{where}: {exc}") from None


def bank_payload(bank):
    return {
        "name": bank.name,
        "grid": {
            "start_nm": bank.grid.start_nm,
            "step_nm": bank.grid.step_nm,
            "count": bank.grid.count,
        },
        "max_weight": bank.max_weight,
        "channels": [
            {"label": label, "values": [float(v) for v in s.values]}
            for label, s in zip(bank.channel_labels, bank.basis)
        ],
    }


def save_bank_json(path, bank):
    Path(path).write_text(
        json.dumps(bank_payload(bank), indent=2) + "\n", encoding="utf-8"
    )


def solution_payload(sol):
    """Solution JSON schema: mode, constraint_form (isochromatic only),
    alpha1, alpha2, objective, feasible, constraints, seed."""
    payload = {"mode": sol.mode.mode.value}
    if sol.mode.constraint_form is not None:
        payload["constraint_form"] = sol.mode.constraint_form.value
    payload.update(
        {
            "alpha1": [float(a) for a in sol.alpha1],
            "alpha2": [float(a) for a in sol.alpha2],
            "objective": float(sol.objective),
            "feasible": bool(sol.feasible),
            "constraints": [
                {"name": row.name, "value": float(row.value), "bound": float(row.bound)}
                for row in sol.constraint_report.rows
            ],
            "seed": int(sol.seed),
        }
    )
    return payload


def solution_json_str(sol):
    """Canonical serialization; the CLI file and the HTTP body share it."""
    return json.dumps(solution_payload(sol), indent=2) + "\n"


def save_solution(path, sol):
    Path(path).write_text(solution_json_str(sol), encoding="utf-8", newline="\n")


def solution_from_payload(payload, where="solution"):
    mode = _parse_mode(payload, where)
    rows = []
    for i, row in enumerate(_get(payload, "constraints", list, where)):
        rows.append(
            ConstraintRow(
                _get(row, "name", str, f"{where}.constraints[{i}]"),
                _get(row, "value", float, f"{where}.constraints[{i}]"),
                _get(row, "bound", float, f"{where}.constraints[{i}]"),
            )
        )
    return SolveSolution(
        mode=mode,
        alpha1=np.array(_get(payload, "alpha1", list, where), dtype=np.float64),
        alpha2=np.array(_get(payload, "alpha2", list, where), dtype=np.float64),
        objective=_get(payload, "objective", float, where),
        constraint_report=ConstraintReport(tuple(rows)),
        feasible=_get(payload, "feasible", bool, where),
        seed=_get(payload, "seed", int, where),
    )


def load_solution(path):
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc), path=path, line=exc.lineno) from None
    return solution_from_payload(payload, where=str(path))


def _parse_mode(payload, where):
    mode_str = _get(payload, "mode", str, where)
    try:
        mode = Mode(mode_str)
    except ValueError:
        raise SchemaError(
            f"{where}: unknown mode {mode_str!r} (expected "
            f"'isochromatic' or 'specific_color_change')"
        ) from None
    form_str = payload.get("constraint_form")
    if mode is Mode.SPECIFIC_COLOR_CHANGE:
        if form_str is not None:
            raise SchemaError(
                f"{where}: constraint_form is only valid for isochromatic mode"
            )
        return EffectMode.specific_color_change()
    if form_str is None:
        return EffectMode.isochromatic()
    try:
        return EffectMode.isochromatic(ConstraintForm(form_str))
    except ValueError:
        raise SchemaError(
            f"{where}: unknown constraint_form {form_str!r}"
        ) from None


_PARAM_FIELDS = {
    "delta": float,
    "delta_white": float,
    "delta_y": float,
    "y_tolerance": float,
    "starts": int,
    "seed": int,
    "max_iters": int,
    "constraint_tol": float,
    "white_target": list,
    "white_target_tol": float,
}


def _parse_params(obj, where):
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: params must be an object")
    unknown = set(obj) - set(_PARAM_FIELDS)
    if unknown:
        raise SchemaError(f"{where}: unknown params field(s) {sorted(unknown)}")
    kwargs = {}
    for key in ("delta", "delta_white"):
        kwargs[key] = _get(obj, key, float, where)
    for key, kind in _PARAM_FIELDS.items():
        if key in kwargs or key not in obj:
            continue
        kwargs[key] = _get(obj, key, kind, where)
    if "white_target" in kwargs:
        pair = kwargs["white_target"]
        if len(pair) != 2 or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair
        ):
            raise SchemaError(f"{where}: white_target must be a [u, v] number pair")
        kwargs["white_target"] = (float(pair[0]), float(pair[1]))
    try:
        return SolveParams(**kwargs)
    except ValueError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def _material_from_source(source, base_dir, where):
    if isinstance(source, str):
        return load_spectrum_csv(_resolve(source, base_dir), kind="reflectance")
    if isinstance(source, dict):
        grid = _grid_from_payload(_get(source, "grid", dict, where), f"{where}.grid")
        values = _get(source, "values", list, where)
        try:
            return Reflectance(grid, values)
        except Exception as exc:
            raise SchemaError(f"{where}: {exc}") from None
    raise SchemaError(f"{where}: expected a file path or an inline payload")


def _resolve(relpath, base_dir):
    p = Path(relpath)
    if p.is_absolute() or base_dir is None:
        return p
    return Path(base_dir) / p


def load_problem(source, base_dir=None, default_matcher=None):
    """Build a SolveProblem from a problem file or an equivalent dict.

    Relative paths inside the payload are resolved against ``base_dir``
    (when ``source`` is a path, its parent directory).  Materials and the
    observer are resampled onto the bank grid; disjoint wavelength ranges
    raise :class:`GridError`.

    ``default_matcher`` supplies the observer when the payload has no
    ``matcher`` entry; the bundled CMF table is used if it is None.
    """
    if isinstance(source, (str, Path)):
        path = Path(source)
        if base_dir is None:
            base_dir = path.parent
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc), path=path, line=exc.lineno) from None
        where = str(path)
    else:
        payload = source
        where = "problem"
    if not isinstance(payload, dict):
        raise SchemaError(f"{where}: expected a JSON object")

    mode = _parse_mode(payload, where)
    params = _parse_params(_get(payload, "params", dict, where), f"{where}.params")

    bank_src = _get(payload, "bank", object, where)
    if isinstance(bank_src, str):
        bank = load_bank_json(_resolve(bank_src, base_dir))
    elif isinstance(bank_src, dict):
        bank = bank_from_payload(bank_src, where=f"{where}.bank")
    else:
        raise SchemaError(f"{where}.bank: expected a file path or inline payload")

    materials = _get(payload, "materials", dict, where)
    r1 = _material_from_source(
        _get(materials, "r1", object, f"{where}.materials"),
        base_dir,
        f"{where}.materials.r1",
    )
    r2 = _material_from_source(
        _get(materials, "r2", object, f"{where}.materials"),
        base_dir,
        f"{where}.materials.r2",
    )

    matcher_src = payload.get("matcher")
    if matcher_src is None:
        if default_matcher is None:
            from .fixtures import load_default_matcher

            matcher = load_default_matcher()
        else:
            matcher = default_matcher
    elif isinstance(matcher_src, str):
        matcher = load_cmf_csv(_resolve(matcher_src, base_dir))
    else:
        raise SchemaError(f"{where}.matcher: expected a file path")

    unknown = set(payload) - {
        "mode",
        "constraint_form",
        "materials",
        "bank",
        "matcher",
        "params",
    }
    if unknown:
        raise SchemaError(f"{where}: unknown field(s) {sorted(unknown)}")

    try:
        r1 = resample(r1, bank.grid)
        r2 = resample(r2, bank.grid)
        matcher = resample_matcher(matcher, bank.grid)
    except EmptyOverlap as exc:
        raise GridError(f"{where}: {exc}") from None
    return SolveProblem(mode=mode, r1=r1, r2=r2, bank=bank, matcher=matcher, params=params)


def problem_payload(problem):
    """Serialize a SolveProblem with fully inline payloads (no file refs)."""
    payload = {"mode": problem.mode.mode.value}
    if problem.mode.constraint_form is not None:
        payload["constraint_form"] = problem.mode.constraint_form.value
    grid_obj = {
        "start_nm": problem.bank.grid.start_nm,
        "step_nm": problem.bank.grid.step_nm,
        "count": problem.bank.grid.count,
    }
    payload["materials"] = {
        "r1": {"grid": grid_obj, "values": [float(v) for v in problem.r1.values]},
        "r2": {"grid": grid_obj, "values": [float(v) for v in problem.r2.values]},
    }
    payload["bank"] = bank_payload(problem.bank)
    p = problem.params
    payload["params"] = {
        "delta": p.delta,
        "delta_white": p.delta_white,
        "delta_y": p.delta_y,
        "y_tolerance": p.y_tolerance,
        "starts": p.starts,
        "seed": p.seed,
        "max_iters": p.max_iters,
        "constraint_tol": p.constraint_tol,
    }
    if p.white_target is not None:
        payload["params"]["white_target"] = [p.white_target[0], p.white_target[1]]
        payload["params"]["white_target_tol"] = p.white_target_tol
    return payload

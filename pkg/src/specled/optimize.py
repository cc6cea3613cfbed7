"""Constrained illuminant-pair design over LED weights.

Two effects are supported.  The isochromatic effect maximizes how far apart
two materials appear under the first light while holding a designer-chosen
constraint under the second light; the specific-color-change effect maximizes
how far material 1's color travels when switching lights while pinning
material 2 in place.  Both share a white-appearance row (the two lights'
chromaticities may differ by at most ``delta_white``) and a brightness row
(their luminances must agree within ``delta_y``, default exactly).

Every chromatic quantity is scale-invariant in each weight vector separately,
so the brightness row is closed algebraically: the brighter side is rescaled
to match the dimmer one, which never touches any chromatic row and keeps
weights inside the box.  The solver is a deterministic multistart local
search on an exact-penalty merit; feasibility of the returned solution is
always re-established through the plain spectral evaluation path, never
trusted from the optimizer's internal bookkeeping.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.stats import qmc

from .errors import (
    DegenerateColor,
    DegenerateProblem,
    GridMismatch,
    Infeasible,
    TooLarge,
)
from .leds import check_weights, synthesize
from .spectral import Chromaticity, tristimulus, uv_distance, uv_prime

__all__ = [
    "Mode",
    "ConstraintForm",
    "EffectMode",
    "SolveParams",
    "SolveProblem",
    "ConstraintRow",
    "ConstraintReport",
    "SolveSolution",
    "objective_iso",
    "constraints_iso",
    "objective_scc",
    "constraints_scc",
    "objective_value",
    "constraint_report",
    "close_luminance_gap",
    "solve",
    "oracle_grid",
]

# Row names shared by reports, solution JSON, and the HTTP API.
ROW_MATERIAL2_CONSTANCY = "material2_constancy"
ROW_MATERIALS_MATCH_W2 = "materials_match_under_w2"
ROW_MATERIAL2_TRAVEL = "material2_travel"
ROW_WHITE_SHIFT = "white_shift"
ROW_LUMINANCE_GAP = "luminance_gap"
ROW_WHITE_TARGET_W1 = "white_target_w1"
ROW_WHITE_TARGET_W2 = "white_target_w2"

# Exact-penalty schedule: rho escalates tenfold each round.
_PENALTY_RHO0 = 1e3
_PENALTY_ROUNDS = 5
_STEP0_FRAC = 0.25
_STEP_MIN_FRAC = 1e-7
# Feasibility polish pulls active rows this far inside their bounds so the
# final spectral-path re-check cannot flip them back out.
_POLISH_SLACK = 1e-9
_POLISH_BUDGET = 400

_ENUM_GUARD = 10**8
_CHUNK = 1 << 15


class Mode(Enum):
    ISOCHROMATIC = "isochromatic"
    SPECIFIC_COLOR_CHANGE = "specific_color_change"


class ConstraintForm(Enum):
    """Which reading of the isochromatic constraint row to enforce.

    AS_PRINTED pins material 2's color constancy across the light switch;
    MATERIALS_MATCH_UNDER_W2 forces the two materials to match each other
    under the second light.  Both are legitimate readings of the effect and
    both ship; AS_PRINTED is the default.
    """

    AS_PRINTED = "as_printed"
    MATERIALS_MATCH_UNDER_W2 = "materials_match_under_w2"


@dataclass(frozen=True)
class EffectMode:
    mode: Mode
    constraint_form: ConstraintForm | None = None

    def __post_init__(self):
        if self.mode is Mode.ISOCHROMATIC:
            if self.constraint_form is None:
                object.__setattr__(self, "constraint_form", ConstraintForm.AS_PRINTED)
        elif self.constraint_form is not None:
            raise ValueError("constraint_form applies to isochromatic mode only")

    @classmethod
    def isochromatic(cls, form=ConstraintForm.AS_PRINTED):
        return cls(Mode.ISOCHROMATIC, form)

    @classmethod
    def specific_color_change(cls):
        return cls(Mode.SPECIFIC_COLOR_CHANGE)


@dataclass(frozen=True)
class SolveParams:
    """Designer parameters plus solver knobs.

    ``delta`` bounds the pinned row (which row that is depends on the mode),
    ``delta_white`` bounds the white-appearance shift between the two lights,
    and ``delta_y`` bounds their brightness gap (0 means equal, enforced
    algebraically with ``y_tolerance`` relative slack for the report row).
    """

    delta: float
    delta_white: float
    delta_y: float = 0.0
    y_tolerance: float = 1e-6
    starts: int = 64
    seed: int = 0
    max_iters: int = 2000
    constraint_tol: float = 1e-9
    # Optional anchor pulling both lights toward a designer-chosen white
    # point (u', v'); off unless white_target is set.
    white_target: tuple | None = None
    white_target_tol: float = 0.05

    def __post_init__(self):
        for name in ("delta", "delta_white", "delta_y"):
            v = float(getattr(self, name))
            if not (math.isfinite(v) and v >= 0):
                raise ValueError(f"{name} must be finite and >= 0, got {v}")
            object.__setattr__(self, name, v)
        if not self.y_tolerance > 0:
            raise ValueError("y_tolerance must be positive")
        if int(self.starts) < 1:
            raise ValueError("starts must be >= 1")
        object.__setattr__(self, "starts", int(self.starts))
        object.__setattr__(self, "seed", int(self.seed))
        if int(self.max_iters) < 1:
            raise ValueError("max_iters must be >= 1")
        object.__setattr__(self, "max_iters", int(self.max_iters))
        if not self.constraint_tol > 0:
            raise ValueError("constraint_tol must be positive")
        if self.white_target is not None:
            u, v = self.white_target
            u, v = float(u), float(v)
            if not (math.isfinite(u) and math.isfinite(v)):
                raise ValueError("white_target must be a finite (u', v') pair")
            object.__setattr__(self, "white_target", (u, v))
            if not self.white_target_tol > 0:
                raise ValueError("white_target_tol must be positive")


@dataclass(frozen=True, eq=False)
class SolveProblem:
    mode: EffectMode
    r1: object
    r2: object
    bank: object
    matcher: object
    params: SolveParams

    def __post_init__(self):
        g = self.bank.grid
        for name in ("r1", "r2", "matcher"):
            og = getattr(self, name).grid
            if og != g:
                raise GridMismatch(
                    f"{name} grid {og} differs from bank grid {g}"
                )


@dataclass(frozen=True)
class ConstraintRow:
    name: str
    value: float
    bound: float

    @property
    def violation(self):
        return max(0.0, self.value - self.bound)


@dataclass(frozen=True)
class ConstraintReport:
    rows: tuple

    def __iter__(self):
        return iter(self.rows)

    def __getitem__(self, name):
        for row in self.rows:
            if row.name == name:
                return row
        raise KeyError(name)

    def satisfied(self, tol):
        return all(row.value <= row.bound + tol for row in self.rows)

    def violation_sum(self):
        return sum(row.violation for row in self.rows)


@dataclass(frozen=True, eq=False)
class SolveSolution:
    """Best weight pair found, with an audit of every constraint row.

    ``feasible`` is true only when the spectral-path re-evaluation of all
    rows holds within ``constraint_tol``.  ``at_bound_channels`` lists
    channels driven to the ``max_weight`` cap in either vector (a hint that
    the box bound, which is an artifact of physical drive limits, is
    shaping the answer).  ``lattice_points`` is set by the brute-force
    oracle only.
    """

    mode: EffectMode
    alpha1: np.ndarray
    alpha2: np.ndarray
    objective: float
    constraint_report: ConstraintReport
    feasible: bool
    seed: int
    starts_used: int | None = None
    at_bound_channels: tuple = ()
    flags: tuple = ()
    lattice_points: int | None = None

    def __post_init__(self):
        for name in ("alpha1", "alpha2"):
            a = np.asarray(getattr(self, name), dtype=np.float64).copy()
            a.setflags(write=False)
            object.__setattr__(self, name, a)


# ---------------------------------------------------------------------------
# Public evaluation path (plain spectral computation; used for final audits).
# ---------------------------------------------------------------------------


def _uv(problem, weights, material=None):
    w = synthesize(problem.bank, weights)
    return uv_prime(tristimulus(w, material, problem.matcher))


def objective_iso(problem, a1):
    """Separation of the two materials under light 1 (u'v' distance)."""
    c1 = _uv(problem, a1, problem.r1)
    c2 = _uv(problem, a1, problem.r2)
    return uv_distance(c1, c2)


def _shared_rows(problem, a1, a2):
    """Rows common to both modes: white shift, brightness, optional anchor."""
    white1 = _uv(problem, a1)
    white2 = _uv(problem, a2)
    p = problem.params
    y_scale = max(white1.luminance_y, white2.luminance_y)
    rows = [
        ConstraintRow(ROW_WHITE_SHIFT, uv_distance(white1, white2), p.delta_white),
        ConstraintRow(
            ROW_LUMINANCE_GAP,
            abs(white1.luminance_y - white2.luminance_y),
            p.delta_y + p.y_tolerance * y_scale,
        ),
    ]
    if p.white_target is not None:
        target = Chromaticity(p.white_target[0], p.white_target[1], 1.0)
        rows.append(ConstraintRow(
            ROW_WHITE_TARGET_W1, uv_distance(white1, target), p.white_target_tol
        ))
        rows.append(ConstraintRow(
            ROW_WHITE_TARGET_W2, uv_distance(white2, target), p.white_target_tol
        ))
    return tuple(rows)


def constraints_iso(problem, a1, a2):
    """The isochromatic constraint rows, measured."""
    form = problem.mode.constraint_form or ConstraintForm.AS_PRINTED
    if form is ConstraintForm.MATERIALS_MATCH_UNDER_W2:
        first = ConstraintRow(
            ROW_MATERIALS_MATCH_W2,
            uv_distance(_uv(problem, a2, problem.r1), _uv(problem, a2, problem.r2)),
            problem.params.delta,
        )
    else:
        first = ConstraintRow(
            ROW_MATERIAL2_CONSTANCY,
            uv_distance(_uv(problem, a2, problem.r2), _uv(problem, a1, problem.r2)),
            problem.params.delta,
        )
    return ConstraintReport((first,) + _shared_rows(problem, a1, a2))


def objective_scc(problem, a1, a2):
    """How far material 1's color travels across the light switch."""
    return uv_distance(
        _uv(problem, a1, problem.r1), _uv(problem, a2, problem.r1)
    )


def constraints_scc(problem, a1, a2):
    """The specific-color-change rows: material 2 pinned, white, brightness."""
    first = ConstraintRow(
        ROW_MATERIAL2_TRAVEL,
        uv_distance(_uv(problem, a1, problem.r2), _uv(problem, a2, problem.r2)),
        problem.params.delta,
    )
    return ConstraintReport((first,) + _shared_rows(problem, a1, a2))


def objective_value(problem, a1, a2):
    if problem.mode.mode is Mode.ISOCHROMATIC:
        return objective_iso(problem, a1)
    return objective_scc(problem, a1, a2)


def constraint_report(problem, a1, a2):
    if problem.mode.mode is Mode.ISOCHROMATIC:
        return constraints_iso(problem, a1, a2)
    return constraints_scc(problem, a1, a2)


def close_luminance_gap(problem, a1, a2):
    """Rescale the brighter illuminant's weights to equalize luminance.

    Legal because every chromatic quantity is invariant to scaling either
    weight vector alone; scaling the brighter side down keeps the weights
    inside the box.  Returns the adjusted ``(a1, a2)``.
    """
    a1 = check_weights(problem.bank, a1)
    a2 = check_weights(problem.bank, a2)
    y1 = tristimulus(synthesize(problem.bank, a1), None, problem.matcher).y
    y2 = tristimulus(synthesize(problem.bank, a2), None, problem.matcher).y
    if y1 <= 0 or y2 <= 0:
        return a1, a2
    if y1 >= y2:
        a1 = a1 * (y2 / y1)
    else:
        a2 = a2 * (y1 / y2)
    return a1, a2


# ---------------------------------------------------------------------------
# Fast evaluation kernel (precomputed per-channel tristimulus matrices).
#
# tristimulus(synthesize(bank, a), r, c) == T_r @ a with T_r the 3 x N matrix
# of per-channel tristimulus values; the identity is property-tested against
# the spectral path.  All searching and enumeration runs on this kernel; the
# final feasibility audit never does.
# ---------------------------------------------------------------------------


class _Kernel:
    def __init__(self, problem):
        p = problem
        basis = p.bank.basis_matrix  # (N, M)
        rows = p.matcher.rows  # (3, M)
        s = p.matcher.quadrature_scale
        self.t1 = s * (rows * p.r1.values) @ basis.T  # (3, N)
        self.t2 = s * (rows * p.r2.values) @ basis.T
        self.tw = s * rows @ basis.T
        self.n = p.bank.n
        self.max_weight = p.bank.max_weight
        self.mode = p.mode
        self.params = p.params
        full = np.full(self.n, self.max_weight)
        self.y_full = float(self.tw[1] @ full)
        self.tiny = 1e-12 * max(self.y_full, 1e-300)

    def _uv_batch(self, t, a):
        """u', v' and validity for candidate weights ``a`` of shape (K, N)."""
        xyz = a @ t.T
        denom = xyz[:, 0] + 15.0 * xyz[:, 1] + 3.0 * xyz[:, 2]
        valid = denom > self.tiny
        safe = np.where(valid, denom, 1.0)
        return 4.0 * xyz[:, 0] / safe, 9.0 * xyz[:, 1] / safe, xyz[:, 1], valid

    def evaluate(self, a1, a2):
        """Objective and chromatic rows for (K, N) weight batches.

        Returns ``(objective, rows, valid)`` with ``rows`` a list of
        ``(values, bound)`` pairs; the brightness row is omitted because it
        is closed algebraically and contributes nothing to the search.
        """
        u_w1, v_w1, y_w1, ok_w1 = self._uv_batch(self.tw, a1)
        u_w2, v_w2, y_w2, ok_w2 = self._uv_batch(self.tw, a2)
        valid = ok_w1 & ok_w2 & (y_w1 > self.tiny) & (y_w2 > self.tiny)
        white = np.hypot(u_w1 - u_w2, v_w1 - v_w2)

        if self.mode.mode is Mode.ISOCHROMATIC:
            u11, v11, _, ok11 = self._uv_batch(self.t1, a1)
            u21, v21, _, ok21 = self._uv_batch(self.t2, a1)
            objective = np.hypot(u11 - u21, v11 - v21)
            valid &= ok11 & ok21
            if self.mode.constraint_form is ConstraintForm.MATERIALS_MATCH_UNDER_W2:
                u12, v12, _, ok12 = self._uv_batch(self.t1, a2)
                u22, v22, _, ok22 = self._uv_batch(self.t2, a2)
                row1 = np.hypot(u12 - u22, v12 - v22)
                valid &= ok12 & ok22
            else:
                u22, v22, _, ok22 = self._uv_batch(self.t2, a2)
                row1 = np.hypot(u22 - u21, v22 - v21)
                valid &= ok22
        else:
            u11, v11, _, ok11 = self._uv_batch(self.t1, a1)
            u12, v12, _, ok12 = self._uv_batch(self.t1, a2)
            objective = np.hypot(u11 - u12, v11 - v12)
            u21, v21, _, ok21 = self._uv_batch(self.t2, a1)
            u22, v22, _, ok22 = self._uv_batch(self.t2, a2)
            row1 = np.hypot(u21 - u22, v21 - v22)
            valid &= ok11 & ok12 & ok21 & ok22

        rows = [(row1, self.params.delta), (white, self.params.delta_white)]
        wt = self.params.white_target
        if wt is not None:
            tol = self.params.white_target_tol
            rows.append((np.hypot(u_w1 - wt[0], v_w1 - wt[1]), tol))
            rows.append((np.hypot(u_w2 - wt[0], v_w2 - wt[1]), tol))
        return objective, rows, valid

    def merit(self, x, rho):
        """Penalized merit for a (K, 2N) batch; invalid points get -inf."""
        objective, rows, valid = self.evaluate(x[:, : self.n], x[:, self.n :])
        penalty = 0.0
        for values, bound in rows:
            penalty = penalty + np.maximum(0.0, values - bound) ** 2
        return np.where(valid, objective - rho * penalty, -np.inf)

    def violation_merit(self, x, slack):
        """Negated squared overshoot past bounds tightened by ``slack``."""
        _, rows, valid = self.evaluate(x[:, : self.n], x[:, self.n :])
        total = 0.0
        for values, bound in rows:
            total = total + np.maximum(0.0, values - max(bound - slack, 0.0)) ** 2
        return np.where(valid, -total, -np.inf)


def _axis_probes(x, step, max_weight):
    """All +/-step single-coordinate moves from ``x``, projected to the box."""
    d = x.shape[0]
    probes = np.repeat(x[None, :], 2 * d, axis=0)
    idx = np.arange(d)
    probes[idx, idx] += step
    probes[d + idx, idx] -= step
    np.clip(probes, 0.0, max_weight, out=probes)
    return probes


def _compass_descent(merit_fn, x, max_weight, budget, step0, step_min):
    """Greedy best-improvement coordinate search with adaptive step.

    One iteration evaluates every axis probe at the current step, moves to
    the best strict improvement, and halves the step when none exists.
    Returns the final point and the number of iterations consumed.
    """
    cur = float(merit_fn(x[None, :])[0])
    step = step0
    iters = 0
    while iters < budget and step >= step_min:
        iters += 1
        probes = _axis_probes(x, step, max_weight)
        merits = merit_fn(probes)
        best = int(np.argmax(merits))
        if merits[best] > cur + 1e-15:
            x = probes[best]
            cur = float(merits[best])
        else:
            step *= 0.5
    return x, iters


def _kernel_close(kernel, x):
    """Luminance closure on the kernel path (same rule as the public op)."""
    a1 = x[: kernel.n].copy()
    a2 = x[kernel.n :].copy()
    y1 = float(kernel.tw[1] @ a1)
    y2 = float(kernel.tw[1] @ a2)
    if y1 > 0 and y2 > 0:
        if y1 >= y2:
            a1 *= y2 / y1
        else:
            a2 *= y1 / y2
    return np.concatenate([a1, a2])


def _search_one_start(kernel, x0):
    p = kernel.params
    budget = max(1, p.max_iters // _PENALTY_ROUNDS)
    step0 = _STEP0_FRAC * kernel.max_weight
    step_min = _STEP_MIN_FRAC * kernel.max_weight
    x = np.clip(np.asarray(x0, dtype=np.float64), 0.0, kernel.max_weight)
    for r in range(_PENALTY_ROUNDS):
        rho = _PENALTY_RHO0 * 10.0**r
        x, _ = _compass_descent(
            lambda pts: kernel.merit(pts, rho), x, kernel.max_weight,
            budget, step0, step_min,
        )
    # Pull any active row strictly inside its bound so the spectral-path
    # audit cannot see a hairline violation.
    vm = kernel.violation_merit(x[None, :], _POLISH_SLACK)[0]
    if np.isfinite(vm) and vm < 0.0:
        x, _ = _compass_descent(
            lambda pts: kernel.violation_merit(pts, _POLISH_SLACK),
            x, kernel.max_weight, _POLISH_BUDGET,
            1e-3 * kernel.max_weight, 1e-10 * kernel.max_weight,
        )
    return _kernel_close(kernel, x)


def _start_points(kernel, starts, seed):
    """Deterministic start set: the mirrored midpoint, then Halton points."""
    d = 2 * kernel.n
    mid = np.full(d, 0.5 * kernel.max_weight)
    points = [mid]
    if starts > 1:
        sampler = qmc.Halton(d=d, scramble=True, seed=seed)
        points.extend(sampler.random(starts - 1) * kernel.max_weight)
    return points


def _audit_candidate(problem, x):
    """Spectral-path objective and report; None if the point is degenerate."""
    n = problem.bank.n
    a1, a2 = x[:n], x[n:]
    try:
        report = constraint_report(problem, a1, a2)
        objective = objective_value(problem, a1, a2)
    except DegenerateColor:
        return None
    return objective, report


def _build_solution(problem, x, objective, report, feasible, starts_used,
                    lattice_points=None):
    n = problem.bank.n
    a1, a2 = x[:n], x[n:]
    eps = 1e-9 * problem.bank.max_weight
    at_bound = tuple(
        int(k)
        for k in range(n)
        if a1[k] >= problem.bank.max_weight - eps
        or a2[k] >= problem.bank.max_weight - eps
    )
    flags = []
    if at_bound:
        flags.append("weights_at_bound")
    if problem.mode.mode is Mode.ISOCHROMATIC and np.array_equal(
        problem.r1.values, problem.r2.values
    ):
        flags.append("objective_upper_bound_zero")
    return SolveSolution(
        mode=problem.mode,
        alpha1=a1,
        alpha2=a2,
        objective=objective,
        constraint_report=report,
        feasible=feasible,
        seed=problem.params.seed,
        starts_used=starts_used,
        at_bound_channels=at_bound,
        flags=tuple(flags),
        lattice_points=lattice_points,
    )


def solve(problem, extra_starts=(), deadline_s=None):
    """Find the best feasible weight pair by deterministic multistart search.

    Parameters
    ----------
    problem : SolveProblem
    extra_starts : iterable of (a1, a2)
        Optional warm starts (e.g. a previous solution).  Each is used both
        as a search start and, untouched, as a candidate, so a feasible warm
        start puts a hard floor under the returned objective.
    deadline_s : float or None
        Soft wall-clock cap checked between starts; when hit, the best
        result over the starts already finished is returned and
        ``starts_used`` reflects the truncation.

    Returns
    -------
    SolveSolution

    Raises
    ------
    DegenerateProblem
        If the bank cannot produce luminance at all.
    Infeasible
        If no start yields a feasible point; the exception carries the
        least-violating candidate as ``solution``.
    """
    kernel = _Kernel(problem)
    if kernel.y_full <= 0:
        raise DegenerateProblem("bank produces zero luminance at full drive")
    p = problem.params

    warm = []
    for a1, a2 in extra_starts:
        a1 = check_weights(problem.bank, a1)
        a2 = check_weights(problem.bank, a2)
        warm.append(np.concatenate([a1, a2]))

    t0 = time.monotonic()
    starts = _start_points(kernel, p.starts, p.seed) + warm
    candidates = []
    starts_used = 0
    for x0 in starts:
        # The first start always runs; the deadline only truncates the rest.
        if (
            starts_used > 0
            and deadline_s is not None
            and time.monotonic() - t0 > deadline_s
        ):
            break
        candidates.append(_search_one_start(kernel, x0))
        starts_used += 1
    # Raw warm starts participate as candidates verbatim.
    candidates.extend(warm)

    best = None  # (objective, order, x, report)
    least = None  # (violation_sum, order, x, objective, report)
    any_valid = False
    for order, x in enumerate(candidates):
        audit = _audit_candidate(problem, x)
        if audit is None:
            continue
        any_valid = True
        objective, report = audit
        if report.satisfied(p.constraint_tol):
            if best is None or objective > best[0]:
                best = (objective, order, x, report)
        vsum = report.violation_sum()
        if least is None or vsum < least[0]:
            least = (vsum, order, x, objective, report)

    if not any_valid:
        # Surface the underlying degeneracy (e.g. materials reflect nothing
        # any channel emits) through the spectral path.
        mid = starts[0]
        n = problem.bank.n
        objective_value(problem, mid[:n], mid[n:])
        raise DegenerateProblem("no candidate produced a usable color")

    if best is None:
        vsum, _, x, objective, report = least
        sol = _build_solution(problem, x, objective, report, False, starts_used)
        raise Infeasible(
            f"no feasible point found across {starts_used} starts "
            f"(least total violation {vsum:.3g})",
            solution=sol,
        )
    objective, _, x, report = best
    return _build_solution(problem, x, objective, report, True, starts_used)


def oracle_grid(problem, steps_per_channel):
    """Exhaustive lattice search over both weight vectors.

    Enumerates ``steps_per_channel`` evenly spaced drive levels per channel
    for each illuminant (``steps**(2N)`` candidate pairs), evaluates the
    same objective and chromatic rows the solver uses, and returns the best
    feasible lattice point (brightness closed algebraically, as in
    :func:`solve`).  Intended as an independent verification oracle for
    small banks.

    Raises
    ------
    TooLarge
        If the candidate count would reach the 1e8 guard.
    Infeasible
        If no lattice point is feasible (carries the least-violating one).
    """
    steps = int(steps_per_channel)
    if steps < 2:
        raise ValueError(f"steps_per_channel must be >= 2, got {steps}")
    kernel = _Kernel(problem)
    if kernel.y_full <= 0:
        raise DegenerateProblem("bank produces zero luminance at full drive")
    d = 2 * kernel.n
    total = steps**d
    if total >= _ENUM_GUARD:
        raise TooLarge(
            f"{steps}^{d} = {total} candidates reaches the {_ENUM_GUARD:.0e} guard"
        )
    p = problem.params
    levels = np.linspace(0.0, kernel.max_weight, steps)
    powers = steps ** np.arange(d, dtype=np.int64)

    best = None  # (objective, candidate_id, x)
    least = None  # (violation_sum, candidate_id, x)
    for lo in range(0, total, _CHUNK):
        ids = np.arange(lo, min(lo + _CHUNK, total), dtype=np.int64)
        digits = (ids[:, None] // powers[None, :]) % steps
        x = levels[digits]  # (K, 2N)
        objective, rows, valid = kernel.evaluate(
            x[:, : kernel.n], x[:, kernel.n :]
        )
        feas = valid.copy()
        vsum = 0.0
        for values, bound in rows:
            feas &= values <= bound + p.constraint_tol
            vsum = vsum + np.maximum(0.0, values - bound)
        if np.any(feas):
            obj_f = np.where(feas, objective, -np.inf)
            k = int(np.argmax(obj_f))
            if best is None or obj_f[k] > best[0]:
                best = (float(obj_f[k]), int(ids[k]), x[k].copy())
        vsum = np.where(valid, vsum, np.inf)
        k = int(np.argmin(vsum))
        if np.isfinite(vsum[k]) and (least is None or vsum[k] < least[0]):
            least = (float(vsum[k]), int(ids[k]), x[k].copy())

    if least is None:
        raise DegenerateProblem("no lattice point produced a usable color")

    def finish(x, feasible_expected):
        closed = _kernel_close(kernel, x)
        audit = _audit_candidate(problem, closed)
        if audit is None:
            raise DegenerateProblem("lattice optimum lost color after closure")
        objective, report = audit
        feasible = feasible_expected and report.satisfied(p.constraint_tol)
        return _build_solution(
            problem, closed, objective, report, feasible,
            starts_used=None, lattice_points=total,
        )

    if best is None:
        sol = finish(least[2], False)
        raise Infeasible(
            f"no feasible lattice point among {total} "
            f"(least total violation {least[0]:.3g})",
            solution=sol,
        )
    return finish(best[2], True)

"""Bundled fixture data: observer table, LED banks, materials, problems.

Everything here is synthetic and generated by ``tools/make_fixtures.py``;
the chooser script documents how each material pair was engineered so the
small bank problems have nontrivial feasible optima.  The environment
variable ``SPECLED_FIXTURES_DIR`` points the whole package at an alternate
fixture tree (same layout) without code changes.
"""

from __future__ import annotations

import json
import os
from functools import lru_cache
from pathlib import Path

from .errors import SpecledError

ENV_FIXTURES_DIR = "SPECLED_FIXTURES_DIR"
MATCHER_FILE = "cie1931_2deg_5nm.csv"

__all__ = [
    "ENV_FIXTURES_DIR",
    "MATCHER_FILE",
    "fixtures_dir",
    "load_default_matcher",
    "load_fixture_problem",
    "list_fixture_problems",
    "fixture_index",
]


def fixtures_dir():
    """Directory holding fixture data (env override, else bundled)."""
    override = os.environ.get(ENV_FIXTURES_DIR)
    if override:
        return Path(override)
    return Path(__file__).resolve().parent / "data"


@lru_cache(maxsize=4)
def _matcher_for(path_str):
    from .io import load_cmf_csv

    return load_cmf_csv(Path(path_str))


def load_default_matcher():
    """The bundled standard-observer table as a ColorMatcher."""
    path = fixtures_dir() / MATCHER_FILE
    if not path.is_file():
        raise SpecledError(f"observer table not found: {path}")
    return _matcher_for(str(path))


def list_fixture_problems():
    """Sorted stem names of the bundled problem files."""
    pdir = fixtures_dir() / "problems"
    if not pdir.is_dir():
        return []
    return sorted(p.stem for p in pdir.glob("*.json"))


def load_fixture_problem(name):
    """Load a bundled problem by stem name (e.g. ``iso_3ch``)."""
    from .io import load_problem

    path = fixtures_dir() / "problems" / f"{name}.json"
    if not path.is_file():
        known = ", ".join(list_fixture_problems()) or "(none)"
        raise SpecledError(f"unknown fixture problem {name!r}; have: {known}")
    return load_problem(path)


def fixture_index():
    """Index of the bundled fixtures, with problems fully inlined.

    The inline payloads let an HTTP client re-post a fixture problem
    (possibly with edited params) without any filesystem access.
    """
    from .io import problem_payload

    root = fixtures_dir()
    index = {"matcher": MATCHER_FILE, "banks": [], "materials": [], "problems": []}

    bdir = root / "banks"
    if bdir.is_dir():
        for path in sorted(bdir.glob("*.json")):
            payload = json.loads(path.read_text(encoding="utf-8"))
            index["banks"].append({
                "file": f"banks/{path.name}",
                "name": payload.get("name", path.stem),
                "channels": len(payload.get("channels", [])),
                "max_weight": payload.get("max_weight"),
            })

    mdir = root / "materials"
    if mdir.is_dir():
        for path in sorted(mdir.glob("*.csv")):
            index["materials"].append({
                "file": f"materials/{path.name}",
                "name": path.stem,
            })

    for name in list_fixture_problems():
        problem = load_fixture_problem(name)
        entry = {
            "name": name,
            "file": f"problems/{name}.json",
            "mode": problem.mode.mode.value,
            "channels": problem.bank.n,
            "problem": problem_payload(problem),
        }
        if problem.mode.constraint_form is not None:
            entry["constraint_form"] = problem.mode.constraint_form.value
        index["problems"].append(entry)
    return index

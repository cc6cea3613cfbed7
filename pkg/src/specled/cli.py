"""Command-line front door: solve, eval, oracle, preview, serve.

Machine-readable output goes to the requested file or standard out, never
mixed with progress chatter (standard error only).  Exit codes: 0 success,
1 input or usage error, 2 solved-but-infeasible (the least-violating
candidate is still written, marked ``"feasible": false``).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace
from pathlib import Path

from .errors import Infeasible, SpecledError
from .io import (
    load_problem,
    load_solution,
    save_solution,
    solution_json_str,
)
from .optimize import oracle_grid, solve
from .report import (
    evaluate,
    format_text,
    ppm_strip,
    report_json_str,
    swatch_rows,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2


def _say(msg):
    print(msg, file=sys.stderr)


def _load_cli_problem(args):
    """Problem from --problem, or assembled from individual flags."""
    if args.problem is not None:
        problem = load_problem(Path(args.problem))
    else:
        missing = [
            flag
            for flag, value in (
                ("--mode", args.mode),
                ("--r1", args.r1),
                ("--r2", args.r2),
                ("--bank", args.bank),
                ("--delta", args.delta),
                ("--delta-white", args.delta_white),
            )
            if value is None
        ]
        if missing:
            raise SpecledError(
                "either --problem or all of --mode/--r1/--r2/--bank/"
                f"--delta/--delta-white are required (missing {' '.join(missing)})"
            )
        payload = {
            "mode": args.mode,
            "materials": {"r1": args.r1, "r2": args.r2},
            "bank": args.bank,
            "params": {"delta": args.delta, "delta_white": args.delta_white},
        }
        if args.constraint_form is not None:
            payload["constraint_form"] = args.constraint_form
        if args.delta_y is not None:
            payload["params"]["delta_y"] = args.delta_y
        problem = load_problem(payload, base_dir=Path.cwd())

    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if getattr(args, "starts", None) is not None:
        overrides["starts"] = args.starts
    if overrides:
        problem = replace(problem, params=replace(problem.params, **overrides))
    return problem


def _emit_solution(sol, out):
    if out is not None:
        save_solution(Path(out), sol)
    else:
        sys.stdout.write(solution_json_str(sol))


def cmd_solve(args):
    problem = _load_cli_problem(args)
    t0 = time.perf_counter()
    try:
        sol = solve(problem)
    except Infeasible as exc:
        if exc.solution is None:
            raise
        _say(f"infeasible after {time.perf_counter() - t0:.1f}s: {exc}")
        _emit_solution(exc.solution, args.out)
        return EXIT_INFEASIBLE
    _say(
        f"solved in {time.perf_counter() - t0:.1f}s: objective "
        f"{sol.objective:.6g}, {sol.starts_used} starts"
    )
    _emit_solution(sol, args.out)
    return EXIT_OK


def cmd_eval(args):
    problem = _load_cli_problem(args)
    sol = load_solution(Path(args.solution))
    report = evaluate(problem, sol)
    if args.format == "json":
        sys.stdout.write(report_json_str(report))
    else:
        sys.stdout.write(format_text(report))
    return EXIT_OK


def cmd_oracle(args):
    problem = _load_cli_problem(args)
    t0 = time.perf_counter()
    try:
        sol = oracle_grid(problem, args.steps)
    except Infeasible as exc:
        if exc.solution is None:
            raise
        _say(f"lattice infeasible after {time.perf_counter() - t0:.1f}s: {exc}")
        _emit_solution(exc.solution, args.out)
        return EXIT_INFEASIBLE
    _say(
        f"enumerated {sol.lattice_points} lattice points in "
        f"{time.perf_counter() - t0:.1f}s: objective {sol.objective:.6g}"
    )
    _emit_solution(sol, args.out)
    return EXIT_OK


def cmd_preview(args):
    problem = _load_cli_problem(args)
    sol = load_solution(Path(args.solution))
    rows = swatch_rows(problem, sol.alpha1, sol.alpha2)
    if args.ppm is not None:
        Path(args.ppm).write_bytes(ppm_strip(rows))
        _say(f"wrote {args.ppm}")
    sys.stdout.write(json.dumps({"rows": rows}, indent=2) + "\n")
    return EXIT_OK


def cmd_serve(args):
    import uvicorn

    from .service import create_app

    app = create_app(ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def _add_problem_flags(sub, with_starts=True):
    sub.add_argument("--problem", help="problem JSON file")
    sub.add_argument(
        "--mode", choices=["isochromatic", "specific_color_change"]
    )
    sub.add_argument(
        "--constraint-form",
        choices=["as_printed", "materials_match_under_w2"],
        dest="constraint_form",
    )
    sub.add_argument("--r1", help="material 1 reflectance CSV")
    sub.add_argument("--r2", help="material 2 reflectance CSV")
    sub.add_argument("--bank", help="LED bank JSON")
    sub.add_argument("--delta", type=float)
    sub.add_argument("--delta-white", type=float, dest="delta_white")
    sub.add_argument("--delta-y", type=float, dest="delta_y")
    sub.add_argument("--seed", type=int)
    if with_starts:
        sub.add_argument("--starts", type=int)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="specled",
        description="Design LED illuminant pairs that steer material color appearance.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    solve_p = commands.add_parser("solve", help="run the multistart solver")
    _add_problem_flags(solve_p)
    solve_p.add_argument("--out", help="solution JSON path (default: stdout)")
    solve_p.set_defaults(func=cmd_solve)

    eval_p = commands.add_parser("eval", help="report metrics for a solution")
    _add_problem_flags(eval_p, with_starts=False)
    eval_p.add_argument("--solution", required=True, help="solution JSON file")
    eval_p.add_argument("--format", choices=["json", "text"], default="text")
    eval_p.set_defaults(func=cmd_eval)

    oracle_p = commands.add_parser("oracle", help="brute-force lattice search")
    _add_problem_flags(oracle_p, with_starts=False)
    oracle_p.add_argument("--steps", type=int, required=True)
    oracle_p.add_argument("--out", help="solution JSON path (default: stdout)")
    oracle_p.set_defaults(func=cmd_oracle)

    preview_p = commands.add_parser("preview", help="sRGB swatches for a solution")
    _add_problem_flags(preview_p, with_starts=False)
    preview_p.add_argument("--solution", required=True, help="solution JSON file")
    preview_p.add_argument("--ppm", help="also write a binary P6 swatch strip")
    preview_p.set_defaults(func=cmd_preview)

    serve_p = commands.add_parser("serve", help="run the HTTP API")
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.add_argument("--port", type=int, default=8000)
    serve_p.add_argument("--ui-dir", dest="ui_dir", help="static UI directory")
    serve_p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        _say(f"error: file not found: {exc.filename or exc}")
        return EXIT_ERROR
    except SpecledError as exc:
        _say(f"error: {exc}")
        return EXIT_ERROR
    except (ValueError, OSError) as exc:
        _say(f"error: {exc}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

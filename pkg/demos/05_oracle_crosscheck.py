"""
Brute-force oracle vs the solver
================================

For small banks the whole weight box can be enumerated on a lattice.
That oracle is how the solver earns trust: its best feasible lattice
point is a floor the multistart search must meet or beat on every
bundled 3-channel problem.
"""

import time
from dataclasses import replace

from specled import load_fixture_problem, oracle_grid, solve

STEPS = 7

for name in ("iso_3ch", "iso_mm2_3ch", "scc_3ch"):
    problem = load_fixture_problem(name)
    problem = replace(problem, params=replace(problem.params, seed=42))

    t0 = time.perf_counter()
    oracle = oracle_grid(problem, STEPS)
    t_oracle = time.perf_counter() - t0

    t0 = time.perf_counter()
    sol = solve(problem)
    t_solve = time.perf_counter() - t0

    print(f"== {name} ==")
    print(f"   lattice: {oracle.lattice_points} points "
          f"({STEPS} levels per weight), {t_oracle:.2f}s")
    print(f"   oracle objective: {oracle.objective:.6f}")
    print(f"   solve objective:  {sol.objective:.6f}  ({t_solve:.2f}s)")
    print(f"   margin: {sol.objective - oracle.objective:+.2e}")
    assert sol.objective >= oracle.objective - 1e-6

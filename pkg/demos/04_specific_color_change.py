"""
Specific color change: one ink moves, the page holds still
==========================================================

Switching between the two designed lights sends the first material on
the longest possible chromaticity trip while the second material and
the white point stay within tight budgets.  This is the 15-channel
bundled problem in the regime used for the shipped reference numbers.
"""

from dataclasses import replace

from specled import evaluate, format_text, load_fixture_problem, solve

print("== 1. the bundled 15-channel problem ==")
problem = load_fixture_problem("scc_15ch")
print("   mode:", problem.mode.mode.value)
print("   channels:", problem.bank.n)
print("   travel budget for the anchor (delta):", problem.params.delta)
print("   white shift budget (delta_white):", problem.params.delta_white)

print("== 2. solving ==")
problem = replace(problem, params=replace(problem.params, seed=42))
sol = solve(problem)
print("   feasible:", sol.feasible)
print("   objective (material 1 travel):", round(sol.objective, 6))
print("   starts used:", sol.starts_used)

print("== 3. the travel asymmetry ==")
report = evaluate(problem, sol)
target = report["material1_travel"]
anchor = report["material2_travel"]
print(f"   target travels {target:.4f}, anchor only {anchor:.4f}")
print(f"   ratio: {target / anchor:.1f}x")

print("== 4. full report with the reference column ==")
print(format_text(report))

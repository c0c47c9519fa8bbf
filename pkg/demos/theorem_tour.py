"""One random problem per case, pushed through the whole theorem battery.

Interleaved components get the pi/2-bound (valid below c_pi ~ 0.5033 times
the gap), hull-separated components the sin-arctan bound (valid up to
sqrt(2) times the gap), and subordinated components need no norm condition
at all.
"""

from offdiag import Case, random_problem, random_problem_spec, run_theorem
from offdiag.io import format_report_table

BATTERIES = {
    Case.CASE_I: ["SHIFT_BOUNDS", "SHIFT_I", "SHIFT_II", "MAIN", "MCE"],
    Case.CASE_II: ["SHIFT_BOUNDS", "SHIFT_I", "SHIFT_III", "CASE2", "TAN_THETA", "MCE"],
    Case.SUBORDINATED: ["SHIFT_BOUNDS", "SHIFT_I", "SUBORDINATED", "CASE2", "MCE"],
}

RATIOS = {Case.CASE_I: 0.45, Case.CASE_II: 1.2, Case.SUBORDINATED: 4.0}

for case, theorems in BATTERIES.items():
    spec = random_problem_spec(case, 3, 3, RATIOS[case], seed=2026)
    problem = random_problem(spec)
    print(f"=== {case.value}: dims (3, 3), ||V||/d = {RATIOS[case]} ===")
    print(f"sigma = {problem.sigma}, Sigma = {problem.Sigma}, d = {problem.d:.4g}")
    reports = [run_theorem(problem, t) for t in theorems]
    print(format_report_table(reports))
    print()

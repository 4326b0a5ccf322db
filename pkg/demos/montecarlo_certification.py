#!/usr/bin/env python3
"""Desk-scale Monte Carlo certification of every bound in the package.

Each runner draws keyed per-trial streams (seed, trial index), so the numbers
below reproduce exactly.  'dominated' means the observed frequency does not
exceed the theoretical bound; the Wilson interval shows how much of the gap
is sampling noise versus genuine slack in the inequality.
"""

from spherecdf import (TrialConfig, run_chisq_trials, run_dkw_trials,
                       run_lambda_trials, run_theorem_trials, verify_lemmas)

TRIALS = 20_000
SEED = 0


def show(label, report):
    print(f"{label:34s} freq={report.frequency:8.5f}  "
          f"wilson=[{report.wilson_low:.5f}, {report.wilson_high:.5f}]  "
          f"bound={report.bound:8.5f}  dominated={report.dominated}")


print("=" * 72)
print(f"Monte Carlo domination, {TRIALS} trials per configuration, seed {SEED}")
print("=" * 72)

for n, eps, t in ((50, 0.08, 0.15), (100, 0.05, 0.1)):
    cfg = TrialConfig(N=n, trials=TRIALS, seed=SEED, epsilon=eps, t=t)
    show(f"sphere KS  N={n} eps={eps} t={t}", run_theorem_trials(cfg))

for eps in (0.1, 0.15):
    show(f"DKW        N=100 eps={eps}", run_dkw_trials(100, TRIALS, SEED, eps))

for t in (0.1, 0.2):
    rep = run_lambda_trials(100, TRIALS, SEED, t)
    show(f"scale      N=100 t={t}", rep)
    print(f"{'':34s} one-sided counts {rep.upper_count} + {rep.lower_count}"
          f" = {rep.event_count}")

for x in (1.0, 2.0):
    up, lo = run_chisq_trials(50, TRIALS, SEED, x)
    show(f"chi^2 up   N=50 x={x}", up)
    show(f"chi^2 down N=50 x={x}", lo)

print()
print("=" * 72)
print("Grid / finite-difference verification of the underlying inequalities")
print("=" * 72)
report = verify_lemmas(grid_steps=200)
for c in report.checks:
    mark = "pass" if c.passed else "FAIL"
    print(f"[{mark}] {c.scope:8s} {c.name:28s} residual={c.residual:+.3e} "
          f"(threshold {c.threshold:+.1e})")
print("all passed" if report.all_passed else "FAILURES PRESENT")

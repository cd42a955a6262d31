"""Proportion of family members with a small first zero.

For each symmetric-power order r the second-moment argument gives a lower
bound, as a function of the zero-height cutoff beta, on the proportion of
members whose first zero falls below beta.  The bound is vacuous below a
threshold beta, rises steeply past it, and saturates below 1.  This script
prints the thresholds and saturation levels and writes the r = 1..4 curves
plus the sign-split comparison for r = 1 and r = 3 to CSV.

Run:  python3 demos/proportion_curves.py
"""

import csv

import numpy as np

from lowzero import (
    beta_pole,
    beta_threshold,
    proportion_bound_limit,
    sym_power_proportion,
    sym_power_proportion_signed,
)

print("=== Full families: threshold and saturation by power r ===")
thresholds = {}
for r in range(1, 5):
    threshold, _ = sym_power_proportion(r, 1.0)
    thresholds[r] = threshold
    sigma = (-1) ** (r + 1)
    R = 1 / (2 * r * r)
    print(
        f"  r={r}: pole={beta_pole(sigma, R):9.4f}  threshold={threshold:9.4f}"
        f"  saturation={proportion_bound_limit(sigma, R):.5f}"
    )

print()
print("=== Sign-restricted families (odd r) ===")
for r in (1, 3):
    for sigma, label in ((1, "even sign"), (-1, "odd sign ")):
        threshold, _ = sym_power_proportion_signed(r, sigma, 1.0)
        R = 1 / (4 * r * (r + 2))
        print(
            f"  r={r} {label}: threshold={threshold:9.4f}"
            f"  saturation={proportion_bound_limit(sigma, R):.5f}"
        )

with open("proportion_curves.csv", "w", newline="") as handle:
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(["beta_over_threshold", "r1", "r2", "r3", "r4"])
    for s in np.geomspace(1.0, 40.0, 60):
        row = [f"{s:.6f}"]
        for r in range(1, 5):
            _, lower = sym_power_proportion(r, float(s) * thresholds[r])
            row.append(f"{lower:.10f}")
        writer.writerow(row)
print()
print("wrote proportion_curves.csv (beta measured in units of each threshold)")

with open("proportion_sign_split.csv", "w", newline="") as handle:
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(["beta", "r1_any", "r1_even", "r1_odd", "r3_any", "r3_even", "r3_odd"])
    start, _ = sym_power_proportion_signed(1, -1, 1.0)
    for beta in np.geomspace(0.5, 400.0, 80):
        beta = float(beta)
        row = [f"{beta:.6f}"]
        for r in (1, 3):
            for value in (
                sym_power_proportion(r, beta)[1],
                sym_power_proportion_signed(r, 1, beta)[1],
                sym_power_proportion_signed(r, -1, beta)[1],
            ):
                row.append(f"{value:.10f}")
        writer.writerow(row)
print("wrote proportion_sign_split.csv (raw closed forms; only values past")
print("each family's threshold are meaningful lower bounds)")

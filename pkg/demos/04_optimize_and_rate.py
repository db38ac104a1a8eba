"""
Tuning the free parameters and the 1/sqrt(n) rate
=================================================

delta and delta' trade the chi-square shift against the two exponential
tails.  A grid search finds the best pair per n; the remaining slack then
decays like h / sqrt(n).
"""

import numpy as np

import wilksbound as wb

m = wb.new_model([0.4, 0.6])

for n in (10**6, 10**8, 10**10):
    up = wb.optimize_theorem(m, n, 1.0, "upper-min")
    lo = wb.optimize_theorem(m, n, 1.0, "lower-max")
    print(f"n={n:.0e}: best bracket [{max(lo.objective, 0):.5f}, {min(up.objective, 1):.5f}]"
          f"  delta*={up.delta:.2e} delta'*={up.delta_prime:.4f}")

prof = wb.rate_probe(m, np.geomspace(1e6, 1e10, 9).astype(np.int64))
print("log-log slope of optimized mu:", round(prof.slope, 4), " dominant term:", set(prof.dominant))

"""
Two upper-gap curves
====================

T1 is the gap between the optimized upper bound (without the h/sqrt(n) term)
and F(1, a); T2 is the gap of a bracketing bound with exponent k.  The same
rows are what ``wilksbound compare`` emits as CSV.
"""

import numpy as np

import wilksbound as wb

m = wb.new_model([0.4, 0.6])
print(f"{'n':>14} {'T1':>10} {'T2':>10} {'k':>6}")
for n in np.geomspace(3e3, 1e12, 12).astype(np.int64):
    n = int(n)
    opt = wb.optimize_theorem(m, n, 1.0)
    k, _ = wb.optimize_k(1, n, 1.0)
    cmp = wb.comparator_t1_t2(m, n, 1.0, opt.delta, opt.delta_prime, k)
    mark = "  <- T2 < T1" if cmp.t2 < cmp.t1 else ""
    print(f"{n:>14} {cmp.t1:>10.5f} {cmp.t2:>10.5f} {k:>6.3f}{mark}")

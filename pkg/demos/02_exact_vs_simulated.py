"""
Exact and simulated CDF of the likelihood ratio
===============================================

For small n the distribution of Lambda_n can be enumerated outright.  The
Monte Carlo estimate carries a DKW band; both should agree, and for large n
the empirical CDF should sit close to chi-square with r degrees of freedom.
"""

import numpy as np

import wilksbound as wb

m = wb.new_model([0.4, 0.6])

exact = wb.exact_cdf(m, 20, 1.0)
mc = wb.mc_cdf(m, 20, 1.0, trials=10**6, seed=7)
print(f"Pr(Lambda_20 < 1): exact {exact.value:.6f}, MC {mc.value:.6f} +/- {mc.half_width:.1e}")

# Lambda_n is discrete: the strict inequality matters at atoms.
lam, prob = wb.llr_distribution(m, 20)
atom = lam[5]
print(f"atom {atom:.4f}: P(< atom) = {prob[lam < atom].sum():.6f}, P(<= atom) = {prob[lam <= atom].sum():.6f}")

# Wilks: the CDF approaches chi-square(1).
for n in (30, 300, 30_000):
    rows = wb.wilks_curve(m, n, 100_000, seed=1, a_grid=np.linspace(0.05, 8, 80))
    gap = max(abs(r.empirical - r.chi2) for r in rows)
    print(f"n = {n:>6}: sup |F_hat - F| = {gap:.4f}")

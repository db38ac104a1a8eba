"""
Fisher information and the likelihood ratio for a categorical model
===================================================================

A categorical model with r + 1 outcomes has r free parameters.  Its Fisher
matrix is a diagonal plus a rank-one term and its inverse is known in closed
form, so nothing here calls a matrix inverse except the final sanity check.
"""

import numpy as np

import wilksbound as wb

m = wb.new_model([0.25, 0.25, 0.5])
print("r =", m.r, " theta_min =", m.theta_min)

# diag(1/theta) + 11^T / theta_last
print("Fisher:\n", wb.fisher(m))
print("inverse (closed form):\n", wb.fisher_inverse(m))
print("product:\n", wb.fisher(m) @ wb.fisher_inverse(m))

# The likelihood ratio of a count vector is 2 n KL(empirical || theta).
c = wb.counts([30, 20, 50])
print("Lambda_n =", wb.llr(m, c))
print("score t_n =", wb.score(m, c))

# Per-draw diagnostics: Lambda_n against its quadratic approximation.
d = wb.diagnostics(m, c)
print(f"quadratic form {d.quad_form:.6f}, residual {d.residual:.2e} <= bound {d.remainder_bound:.2e}")

# Same thing over many simulated draws.
k = next(wb.sample_counts_batch(m, 2000, 500, seed=1))
ratios = []
for row in k:
    d = wb.diagnostics(m, wb.counts(row))
    ratios.append(d.residual / d.remainder_bound)
print("largest residual / bound over 500 draws:", max(ratios))

"""
Weakly singular quadrature
==========================

int_0^t u^(a-1) g(u) du with small a.  The Jacobi rule absorbs u^(a-1) into
its weight and converges spectrally; the graded composite rule needs many
panels but shares no code with it, so it serves as the oracle.
"""

import mpmath
import numpy as np

from memvel import QuadratureSpec, integrate_singular, oracle_integrate

a, t = 0.15, 1.7
g = lambda u: u * np.exp(-u)
exact = float(mpmath.gammainc(a + 1, 0, t))  # lower incomplete gamma

for order in (4, 8, 16, 32):
    v, err = integrate_singular(g, a, t, QuadratureSpec(order=order, target_rel_err=1e-3))
    print(f"jacobi order {2 * order:3d}: rel. error {abs(v - exact) / exact:.2e}")

for panels in (4, 16, 64):
    v, _ = integrate_singular(g, a, t, QuadratureSpec(scheme="graded_composite", order=8, panels=panels,
                                                      target_rel_err=1e-3))
    print(f"graded {2 * panels:4d} panels: rel. error {abs(v - exact) / exact:.2e}")

print("oracle:", abs(oracle_integrate(g, a, t) - exact) / exact)

"""
Weighted bounds and the three exponent-difference cases
=======================================================

min(1, t^(beta-alpha)) |V(t)| <= C_W ||x||_C1, with C_W built from Gamma at
the extreme exponents.  The sign of beta - alpha picks a sharper envelope.
"""

import numpy as np

from memvel import bound_context, check_case_envelopes, check_weighted_bound, make_schedule, make_trajectory
from memvel.bounds import weighted_constant

print("C_W(0.5, 1) =", weighted_constant(0.5, 1.0))

for x_src, a, b, T in [("sin(t)", 0.9, 0.4, 2.0), ("t", 0.4, 0.9, 1.0), ("t", 0.6, "0.6+0.3*sin(4*t)", 2.0)]:
    x = make_trajectory(x_src, T)
    alpha, beta = make_schedule(a, T), make_schedule(b, T)
    ctx = bound_context(alpha, beta)
    ts = np.linspace(T / 50, T, 50)
    print(f"\nx={x_src}, alpha={a}, beta={b}: case {ctx.case}, delta in [{ctx.delta_min:.3f}, {ctx.delta_max:.3f}]")
    for report in (check_weighted_bound(x, alpha, beta, ts), check_case_envelopes(x, alpha, beta, ts)):
        for line in report.summary_lines():
            print("  ", line)

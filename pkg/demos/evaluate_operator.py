"""
Evaluating the memory-weighted velocity
=======================================

V[x](t) compares the increments x(t) - x(tau), weighted by a power-law
memory kernel of exponent alpha(t), against the elapsed time weighted by a
kernel of exponent beta(t).  Everything is driven by plain expression strings.
"""

import numpy as np

from memvel import make_schedule, make_trajectory, velocity, velocity_grid

T = 2.0
x = make_trajectory("exp(-t)*sin(3*t)", T)
alpha = make_schedule("0.5 + 0.4*sin(t)", T)
beta = make_schedule(0.7, T)
print("alpha bounds m, M:", alpha.m, alpha.M)

# one evaluation, with its pieces: V = coefficient * integral
b = velocity(x, alpha, beta, 0.8)
print(f"V(0.8) = {b.value:.12f}  coefficient={b.coefficient:.6f}  integral={b.integral:.6f}  err~{b.quad_err:.1e}")

# at t = 0 the operator is the ordinary derivative
print("V(0) =", velocity(x, alpha, beta, 0.0).value, "= xdot(0)")

# with alpha = beta the straight line t has velocity exactly 1
line = make_trajectory("t", T)
grid = velocity_grid(line, alpha, alpha, np.linspace(0.1, T, 5))
print("identity check:", np.round(grid.values, 14))

# a sweep, the same numbers the CLI writes as CSV
for t, r in velocity_grid(x, alpha, beta, np.linspace(0.0, T, 6)).points:
    print(f"{t:4.1f}  {r.value: .10f}")

"""
Elementary inequalities behind the estimates
============================================

|ln x| <= x^-delta/(delta e) on (0, 1], ln x <= x^a/a for x >= 1, and
u^gamma <= 1 + u.  The first one is sharp at x = exp(-1/delta).
"""

import math

import numpy as np

from memvel import inequalities

rng = np.random.default_rng(0)
for name in inequalities.NAMES:
    count, worst = inequalities.violations(name, 100_000, rng)
    print(f"{name:13s} violations={count}  smallest slack={worst:.3e}")

for delta in (0.1, 0.5, 1.0, 2.0):
    lhs, rhs = inequalities.log_power_bound(delta, math.exp(-1 / delta))
    print(f"delta={delta}: at the maximiser lhs={lhs:.15f} rhs={rhs:.15f}")

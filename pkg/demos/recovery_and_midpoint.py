"""
Small-time behaviour
====================

With uniform memory (alpha = beta = 1) the velocity tends to xdot(0), and
the deviation is certified by 3 eps(t), where eps is the error-control
function of the Taylor remainder.  The mean-value point of x on [0, t]
drifts to the midpoint when xdot(0) != 0.
"""

from memvel import error_control, make_trajectory, mean_value_point, recovery_curve

x = make_trajectory("sin(t)", 1.0)

print("   t          V11 - 1        3 eps(t)")
for p in recovery_curve(x, [0.1 * 2.0**-k for k in range(9)]):
    print(f"{p.t:.6f}  {p.v11 - 1: .6e}  {p.certificate:.6e}  {'ok' if p.holds else 'VIOLATED'}")

print("\neps along s = 10^-k:", [f"{error_control(x, 10.0**-k):.2e}" for k in range(1, 7)])

print("\ntheta(t) = xi/t for sin, t and t^2")
for t in (0.5, 0.1, 0.01, 0.001):
    thetas = [mean_value_point(make_trajectory(s, 1.0), t).theta for s in ("sin(t)", "t", "t^2")]
    print(f"{t:6.3f}  " + "  ".join(f"{th:.10f}" for th in thetas))
# t^2 has xdot(0) = 0 and stays at 1/sqrt(3)

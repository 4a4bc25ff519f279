"""
Dependence on the memory exponent
=================================

Perturb alpha by 0.2 sin(t)/n and watch the velocity converge on [0.1, 1].
The integral part obeys the explicit bound L_x C_F T sup|alpha_n - alpha|.
"""

from memvel import dependence_experiment, make_schedule, make_trajectory

x = make_trajectory("sin(t)", 1.0)
alpha, beta = make_schedule(0.5, 1.0), make_schedule(0.8, 1.0)
results = dependence_experiment(x, alpha, beta, "0.2*sin(t)", [2, 4, 8, 16, 32], eps_lo=0.1)

print(" n   sup|V_n - V|   sup|I_n - I|   bound")
for r in results:
    print(f"{r.n:2d}   {r.sup_dev:.6e}   {r.sup_integral_dev:.6e}   {r.integral_bound:.6e}")
print("ratio last/first:", results[-1].sup_dev / results[0].sup_dev)

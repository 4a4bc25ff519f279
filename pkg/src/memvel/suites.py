"""Named verification suites, each producing a :class:`VerificationReport`.

Sizes default to quick runs suitable for the command line; the acceptance
tests call the same functions with the full sample counts.
"""

from __future__ import annotations

import math

import numpy as np

from . import inequalities
from .analysis import (
    EPS_INFLATION,
    dependence_experiment,
    error_control,
    midpoint_limit_check,
    recovery_curve,
    remainder,
)
from .bounds import bound_context, check_case_envelopes, check_weighted_bound
from .errors import MemvelError
from .kernel import denominator, kernel_mass
from .operator import velocity
from .quadrature import DEFAULT_SPEC, oracle_integrate
from .report import Check, SlackTracker, VerificationReport
from .schedule import make_schedule
from .specfun import gamma
from .trajectory import linear_combination, make_trajectory

# CLI names; "appendix" covers the elementary inequalities and the error-control checks
SUITES = ("linearity", "kernel-mass", "weighted-bound", "envelopes", "recovery", "midpoint", "dependence", "appendix")

# smooth trajectories on [0, 2] used by the randomised suites
EXPRESSION_POOL = (
    "t",
    "t^2",
    "sin(t)",
    "cos(t)",
    "exp(t)",
    "t^3 - 2*t",
    "sqrt(t + 1)",
    "log(1 + t)",
    "exp(-t)*sin(3*t)",
    "1/(1 + t^2)",
)


def _times(T, count):
    # strictly positive, evenly spaced, ending at T
    return np.linspace(T / count, T, count)


def linearity(T=2.0, triples=20, times=20, seed=0, spec=DEFAULT_SPEC, pool=EXPRESSION_POOL):
    """V(c1 x1 + c2 x2) against c1 V(x1) + c2 V(x2) for random pool members and schedules."""
    rng = np.random.default_rng(seed)
    trajs = [make_trajectory(e, T) for e in pool]
    schedules = [make_schedule(d, T) for d in (0.3, 0.7, 1.0, "0.5+0.4*sin(t)", "0.6+0.3*cos(2*t)")]
    ts = _times(T, times)
    tracker = SlackTracker()
    for _ in range(triples):
        i, j = rng.choice(len(trajs), size=2)
        c1, c2 = rng.uniform(-5.0, 5.0, size=2)
        alpha = schedules[rng.integers(len(schedules))]
        beta = schedules[rng.integers(len(schedules))]
        combo = linear_combination(c1, trajs[i], c2, trajs[j])
        for t in ts:
            try:
                v = velocity(combo, alpha, beta, t, spec).value
                v1 = velocity(trajs[i], alpha, beta, t, spec).value
                v2 = velocity(trajs[j], alpha, beta, t, spec).value
            except MemvelError as exc:
                tracker.error(t, exc)
                continue
            tol = 1e-8 * (1 + abs(c1) + abs(c2)) * max(1.0, abs(v1), abs(v2))
            slack = tol - abs(v - c1 * v1 - c2 * v2)
            tracker.record(float(t), slack, slack >= 0)
    report = VerificationReport("linearity")
    report.add(tracker.check("superposition", triples * times))
    return report


def kernel_mass_suite(T=2.0, samples=100, seed=0):
    """Closed-form kernel mass and denominator against the brute-force oracle."""
    rng = np.random.default_rng(seed)
    mass = SlackTracker()
    denom = SlackTracker()
    for _ in range(samples):
        rho = float(rng.uniform(0.1, 1.0))
        t = float(T * (1.0 - rng.uniform(0.0, 1.0)))  # (0, T]
        s = make_schedule(rho, T)
        # g = 1 does not vanish at 0, so the oracle needs a much stronger grading
        q = max(2.0, 6.0 / rho)
        brute_mass = oracle_integrate(np.ones_like, rho, t, panels=1024, grading=q) / gamma(rho)
        brute_denom = oracle_integrate(lambda u: u, rho, t) / gamma(rho)
        closed_mass = kernel_mass(s, t)
        closed_denom = denominator(s, t)
        rel_m = abs(brute_mass - closed_mass) / closed_mass
        rel_d = abs(brute_denom - closed_denom) / closed_denom
        mass.record(t, 1e-10 - rel_m, rel_m <= 1e-10 and closed_mass > 0)
        denom.record(t, 1e-10 - rel_d, rel_d <= 1e-10 and closed_denom > 0)
    report = VerificationReport("kernel-mass")
    report.add(mass.check("kernel_mass_closed_form", samples))
    report.add(denom.check("denominator_closed_form", samples))
    return report


def weighted_bound_suite(configs=50, times=20, seed=0, horizons=(0.5, 1.0, 2.0), spec=DEFAULT_SPEC,
                         pool=EXPRESSION_POOL):
    """Randomised constant-exponent configurations against the weighted estimate."""
    rng = np.random.default_rng(seed)
    tracker = SlackTracker()
    cache = {}
    for _ in range(configs):
        T = float(rng.choice(horizons))
        expr = pool[rng.integers(len(pool))]
        a, b = (float(v) for v in rng.uniform(0.2, 1.0, size=2))
        x = cache.get((expr, T)) or cache.setdefault((expr, T), make_trajectory(expr, T))
        alpha, beta = make_schedule(a, T), make_schedule(b, T)
        ts = np.concatenate(([0.0], _times(T, times - 1)))
        sub = check_weighted_bound(x, alpha, beta, ts, spec).checks[0]
        tracker.record(sub.witness_t, sub.worst_slack, sub.passed)
        if not sub.passed:
            tracker.errors.append((sub.witness_t, f"{expr!r}, alpha={a}, beta={b}, T={T}: {sub.detail}"))
    report = VerificationReport("weighted-bound")
    check = tracker.check("weighted_inequality", configs * times)
    check.detail = f"{configs} configurations x {times} times; " + check.detail
    report.add(check)
    return report


ENVELOPE_CASES = (
    # (x, alpha, beta, T): one configuration per sign case
    ("sin(t)", 0.9, 0.4, 2.0),
    ("t", 0.4, 0.9, 1.0),
    ("t", 0.6, "0.6+0.3*sin(4*t)", 2.0),
)


def envelopes_suite(times=50, spec=DEFAULT_SPEC, cases=ENVELOPE_CASES):
    report = VerificationReport("envelopes")
    for x_src, a, b, T in cases:
        x = make_trajectory(x_src, T)
        alpha, beta = make_schedule(a, T), make_schedule(b, T)
        sub = check_case_envelopes(x, alpha, beta, _times(T, times), spec)
        report.extend(sub)
    return report


def recovery_suite(x_src="sin(t)", T=1.0, t0=0.1, levels=9, spec=DEFAULT_SPEC):
    """V_{1,1} along t0 2^-k: the 3 eps_t certificate and monotone decay of the deviation."""
    x = make_trajectory(x_src, T)
    ts = [t0 * 2.0**-k for k in range(levels)]
    curve = recovery_curve(x, ts, spec)
    report = VerificationReport("recovery")
    tracker = SlackTracker()
    for p in curve:
        slack = p.certificate * (1 + EPS_INFLATION) + 1e-10 - p.deviation
        tracker.record(p.t, slack, p.holds)
    for t, exc in curve.failures:
        tracker.error(t, exc)
    report.add(tracker.check("three_eps_certificate", len(ts)))
    devs = [p.deviation for p in curve]
    steps = [(p.t, a - b) for p, a, b in zip(curve.points[1:], devs, devs[1:])]
    worst_t, worst = min(steps, key=lambda s: s[1]) if steps else (None, math.inf)
    report.add(Check("deviation_decreasing", worst > 0 or (not steps), worst, worst_t,
                     "deviation strictly decreasing as t -> 0"))
    return report


def midpoint_suite(x_src="sin(t)", T=1.0, ts=(0.1, 0.01, 0.001), tol_final=1e-3):
    return midpoint_limit_check(make_trajectory(x_src, T), ts, tol_final)


def dependence_suite(x_src="sin(t)", alpha=0.5, beta=0.8, perturbation="0.2*sin(t)", T=1.0, eps_lo=0.1,
                     ns=(2, 4, 8, 16, 32), spec=DEFAULT_SPEC):
    x = make_trajectory(x_src, T)
    results = dependence_experiment(x, make_schedule(alpha, T), make_schedule(beta, T), perturbation, ns,
                                    eps_lo, spec)
    report = VerificationReport("dependence")
    devs = [r.sup_dev for r in results]
    steps = [(r.n, a - b) for r, a, b in zip(results[1:], devs, devs[1:])]
    n_w, worst = min(steps, key=lambda s: s[1])
    report.add(Check("sup_dev_strictly_decreasing", worst > 0, worst, None,
                     f"sup_dev by n: {', '.join(f'{r.n}:{r.sup_dev:.6g}' for r in results)}; worst step at n={n_w}"))
    ratio = devs[-1] / devs[0] if devs[0] > 0 else 0.0
    report.add(Check("decay_ratio", ratio <= 0.2, 0.2 - ratio, None, f"final/initial = {ratio:.6g}"))
    slack = min(r.integral_bound - r.sup_integral_dev for r in results)
    report.add(Check("integral_part_bound", all(r.integral_bound_holds for r in results), slack, None,
                     "|I_n - I| <= L_x C_F T |alpha_n - alpha| pointwise"))
    return report


def inequalities_suite(samples=100_000, seed=0):
    """Random samples of the three logarithm/power inequalities, plus the sharpness witness."""
    rng = np.random.default_rng(seed)
    report = VerificationReport("appendix")
    for name in inequalities.NAMES:
        count, worst = inequalities.violations(name, samples, rng)
        report.add(Check(f"{name}_inequality", count == 0, worst, None, f"{samples} samples, {count} violations"))
    worst = math.inf
    for delta in inequalities.PARAMETERS["log_power"]:
        lhs, rhs = inequalities.log_power_bound(delta, math.exp(-1.0 / delta))
        worst = min(worst, 1e-12 - abs(rhs / lhs - 1.0))
    report.add(Check("log_power_sharpness", worst >= 0, worst, None, "rhs/lhs = 1 at x = exp(-1/delta)"))
    return report


def error_control_suite(T=1.0, pool=EXPRESSION_POOL, pairs=100, seed=0):
    """Monotonicity and vanishing of eps(s), and the uniform remainder bound."""
    rng = np.random.default_rng(seed)
    report = VerificationReport("error-control")
    mono = SlackTracker()
    vanish = SlackTracker()
    uniform = SlackTracker()
    for src in pool:
        x = make_trajectory(src, T)
        ss = np.sort(rng.uniform(0.0, T, 20))
        eps = [error_control(x, s) for s in ss]
        for s, e1, e2 in zip(ss[1:], eps, eps[1:]):
            mono.record(float(s), e2 + 1e-12 - e1, e1 <= e2 + 1e-12)
        seq = [error_control(x, 10.0**-k) for k in range(1, 7)]
        for k, (e1, e2) in enumerate(zip(seq, seq[1:]), start=2):
            vanish.record(10.0**-k, e1 - e2, e2 <= e1)
        vanish.record(1e-6, 1e-4 - seq[-1], seq[-1] <= 1e-4)
        for _ in range(pairs):
            t = float(rng.uniform(0.0, T))
            tau = float(rng.uniform(0.0, t))
            bound = (error_control(x, t) * (1 + EPS_INFLATION) + 1e-12) * tau
            slack = bound - abs(remainder(x, tau))
            uniform.record(tau, slack, slack >= 0)
    report.add(mono.check("eps_monotone", len(pool) * 19))
    report.add(vanish.check("eps_vanishing", len(pool) * 6))
    report.add(uniform.check("uniform_remainder_bound", len(pool) * pairs))
    return report


def run_suite(name, **kwargs) -> VerificationReport:
    """Run one suite by its CLI name.  ``appendix`` runs the inequality and error-control checks together."""
    if name == "linearity":
        return linearity(**kwargs)
    if name == "kernel-mass":
        return kernel_mass_suite(**kwargs)
    if name == "weighted-bound":
        return weighted_bound_suite(**kwargs)
    if name == "envelopes":
        return envelopes_suite(**kwargs)
    if name == "recovery":
        return recovery_suite(**kwargs)
    if name == "midpoint":
        return midpoint_suite(**kwargs)
    if name == "dependence":
        return dependence_suite(**kwargs)
    if name == "appendix":
        report = inequalities_suite(**kwargs)
        report.extend(error_control_suite())
        return report
    raise KeyError(f"unknown suite {name!r}; expected one of {SUITES}")

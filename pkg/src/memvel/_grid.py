"""Grid search with local refinement, used for certified-by-sampling extrema."""

import numpy as np
from scipy.optimize import minimize_scalar

GRID_POINTS = 10_000


def _refine(f, grid, values, i, sign):
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, len(grid) - 1)]
    best_x, best_v = grid[i], values[i]
    if hi <= lo:
        return best_x, best_v
    res = minimize_scalar(
        lambda s: sign * float(f(s)), bounds=(lo, hi), method="bounded",
        options={"xatol": 1e-14 * max(1.0, abs(hi))},
    )
    if res.success:
        v = sign * res.fun
        if sign * v < sign * best_v:
            return float(res.x), v
    return best_x, best_v


def grid_extrema(f, a, b, n=GRID_POINTS, refine=True):
    """Return ``(min, argmin, max, argmax)`` of a vectorised ``f`` on ``[a, b]``."""
    grid = np.linspace(a, b, n)
    values = np.asarray(f(grid), dtype=float)
    i_min = int(np.argmin(values))
    i_max = int(np.argmax(values))
    x_min, v_min = grid[i_min], values[i_min]
    x_max, v_max = grid[i_max], values[i_max]
    if refine:
        x_min, v_min = _refine(f, grid, values, i_min, +1)
        x_max, v_max = _refine(f, grid, values, i_max, -1)
    return float(v_min), float(x_min), float(v_max), float(x_max)


def grid_sup_abs(f, a, b, n=GRID_POINTS):
    """Sup of ``|f|`` on ``[a, b]`` by grid search plus refinement."""
    v_min, _, v_max, _ = grid_extrema(f, a, b, n)
    return max(abs(v_min), abs(v_max))

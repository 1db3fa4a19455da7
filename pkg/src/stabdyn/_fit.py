"""Slope-fitting helpers shared by the growth estimators.

All estimators work on a declared tail window of the sample schedule; the
window is returned so reports can document it.
"""

import numpy as np


def tail_indices(ns, fraction=8, min_points=3):
    """Indices of the geometric tail {n >= n_max/fraction} of a sorted schedule."""
    ns = np.asarray(ns, dtype=float)
    cut = ns[-1] / fraction
    idx = np.nonzero(ns >= cut)[0]
    if len(idx) < min_points:
        idx = np.arange(max(0, len(ns) - min_points), len(ns))
    return idx


def joint_rate_fit(ns, ys, fraction=8):
    """Least-squares fit y ~ a*n + b*log n + c on the tail window.

    Separating the log n regressor keeps the linear rate `a` clean when the
    stream carries a polynomial factor (e.g. ||A^n|| ~ n^s rho^n).  Returns
    (a, b, c, rms_residual, window) where window = (n_lo, n_hi).
    """
    ns = np.asarray(ns, dtype=float)
    ys = np.asarray(ys, dtype=float)
    idx = tail_indices(ns, fraction)
    n = ns[idx]
    y = ys[idx]
    if len(n) < 3:
        # under-determined: fall back to a plain slope
        a = 0.0 if len(n) < 2 else (y[-1] - y[0]) / (n[-1] - n[0])
        return a, 0.0, float(y[-1] - a * n[-1]), 0.0, (float(n[0]), float(n[-1]))
    design = np.column_stack([n, np.log(n), np.ones_like(n)])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    rms = float(np.sqrt(np.mean(resid**2)))
    return float(coef[0]), float(coef[1]), float(coef[2]), rms, (float(n[0]), float(n[-1]))


def theil_sen_slope(xs, ys):
    """Median of pairwise slopes; robust against bounded periodic wobble."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    slopes = []
    for i in range(len(xs)):
        dx = xs[i + 1 :] - xs[i]
        dy = ys[i + 1 :] - ys[i]
        keep = np.abs(dx) > 1e-12
        slopes.extend((dy[keep] / dx[keep]).tolist())
    if not slopes:
        return 0.0
    return float(np.median(slopes))


def _thin_logspaced(idx, ns, max_points=64):
    """Subset of indices roughly uniform in log n (Theil-Sen is quadratic)."""
    if len(idx) <= max_points:
        return idx
    targets = np.geomspace(ns[idx[0]], ns[idx[-1]], max_points)
    chosen = sorted({int(idx[np.argmin(np.abs(ns[idx] - t))]) for t in targets})
    return np.array(chosen)


def log_slope_fit(ns, ys, fraction=8):
    """Slope of y against log n over the tail window (Theil-Sen median).

    Used for polynomial rates, where least squares against log n is easily
    thrown off by bounded oscillation sampled at geometric points.  Returns
    (slope, window, max_window_slope) where the last entry is the largest
    suffix-window least-squares slope, kept as a limsup-flavoured diagnostic.
    """
    ns = np.asarray(ns, dtype=float)
    ys = np.asarray(ys, dtype=float)
    idx = tail_indices(ns, fraction)
    idx = _thin_logspaced(idx, ns)
    x = np.log(ns[idx])
    y = ys[idx]
    slope = theil_sen_slope(x, y)
    max_slope = -np.inf
    for start in range(0, max(1, len(x) - 2)):
        xs, yw = x[start:], y[start:]
        if len(xs) < 3 or xs[-1] - xs[0] < 1e-9:
            break
        a = np.polyfit(xs, yw, 1)[0]
        max_slope = max(max_slope, float(a))
    if not np.isfinite(max_slope):
        max_slope = slope
    return slope, (float(ns[idx][0]), float(ns[idx][-1])), max_slope


def geometric_schedule(n_max, points_per_octave=4, n_min=1):
    """Sorted integer schedule ~ uniformly spaced in log n up to n_max."""
    if n_max < n_min:
        raise ValueError("n_max below n_min")
    out = set()
    k = 0
    while True:
        base = 2.0**k
        if base > n_max:
            break
        for j in range(points_per_octave):
            n = int(round(base * 2.0 ** (j / points_per_octave)))
            if n_min <= n <= n_max:
                out.add(n)
        k += 1
    out.add(int(n_max))
    return sorted(out)


def linear_schedule(n_max, count=64, n_min=1):
    ns = np.unique(np.linspace(n_min, n_max, min(count, n_max - n_min + 1)).astype(int))
    return [int(n) for n in ns if n >= n_min]

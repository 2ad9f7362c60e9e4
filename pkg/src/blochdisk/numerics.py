"""Quadrature, supremum-search, and extrapolation primitives shared across modules."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

TWO_PI = 2.0 * math.pi
INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class QuadratureError(RuntimeError):
    """A self-refining quadrature failed to stabilize.

    Carries the last two partial values so callers can surface them.
    """

    def __init__(self, message, last_values=None):
        super().__init__(message)
        self.last_values = last_values


def refine_circle_mean(values_at, start_nodes=256, rel_tol=1e-6,
                       max_nodes=2 ** 20, post=None):
    """Trapezoid mean of a 2*pi-periodic sample with node doubling.

    ``values_at(theta)`` maps an angle array to real values.  ``post`` maps the
    raw mean to the reported quantity; refinement stops once two successive
    reports agree to ``rel_tol`` (relative).  Node counts double with full
    reuse of previous samples.  Returns ``(report, nodes_used)``.
    """
    if post is None:
        post = lambda m: m
    n = 1 << max(3, (int(start_nodes) - 1).bit_length())
    theta = np.arange(n) * (TWO_PI / n)
    total = float(np.sum(values_at(theta)))
    report = post(total / n)
    while True:
        fresh = (np.arange(n) + 0.5) * (TWO_PI / n)
        total += float(np.sum(values_at(fresh)))
        n *= 2
        new_report = post(total / n)
        if abs(new_report - report) <= rel_tol * max(1.0, abs(new_report)):
            return new_report, n
        if n >= max_nodes:
            raise QuadratureError(
                f"circle mean failed to stabilize within {n} nodes",
                last_values=(report, new_report))
        report = new_report


@lru_cache(maxsize=None)
def _leggauss(n):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def gl_panel(fn, a, b, nodes=16):
    """Gauss-Legendre integral of ``fn`` over [a, b] with a fixed node count."""
    x, w = _leggauss(nodes)
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return half * float(np.dot(w, np.asarray(fn(mid + half * x), dtype=float)))


def gl_panel_columns(fn2, a, b, nodes=16):
    """Column-wise Gauss-Legendre panel for a two-argument integrand.

    ``fn2(r)`` must return an array of shape (nodes, m); the integral over
    r in [a, b] is returned per column as an (m,) array.
    """
    x, w = _leggauss(nodes)
    half = 0.5 * (b - a)
    r = 0.5 * (a + b) + half * x
    vals = np.asarray(fn2(r), dtype=float)
    return half * (w @ vals)


def golden_max(fn, a, b, iters=40):
    """Golden-section maximum of a scalar function on [a, b].

    Assumes unimodality on the bracket; returns ``(x, fn(x), width)`` where
    width is the final bracket size.
    """
    c = b - INV_GOLDEN * (b - a)
    d = a + INV_GOLDEN * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_GOLDEN * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_GOLDEN * (b - a)
            fd = fn(d)
    x = 0.5 * (a + b)
    return x, fn(x), b - a


def aitken_limit(values):
    """Aitken delta-squared limit from the last three terms of a sequence.

    Falls back to the final term when increments are degenerate or the
    acceleration step would extrapolate wildly.
    """
    if len(values) < 3:
        return float(values[-1])
    x0, x1, x2 = values[-3], values[-2], values[-1]
    d1, d2 = x1 - x0, x2 - x1
    denom = d2 - d1
    if denom == 0.0 or not math.isfinite(denom):
        return float(x2)
    acc = x2 - d2 * d2 / denom
    if not math.isfinite(acc) or abs(acc - x2) > 10.0 * abs(d2):
        return float(x2)
    return float(acc)


def extrapolate_to_zero(us, vals):
    """Neville polynomial extrapolation of samples ``(u_i, v_i)`` to u = 0."""
    us = list(map(float, us))
    t = list(map(float, vals))
    n = len(t)
    for m in range(1, n):
        for i in range(n - m):
            t[i] = (us[i + m] * t[i] - us[i] * t[i + 1]) / (us[i + m] - us[i])
    return t[0]


def fit_slope(xs, ys):
    """Least-squares slope of ys against xs."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    xm, ym = x.mean(), y.mean()
    denom = float(np.sum((x - xm) ** 2))
    if denom == 0.0:
        return 0.0
    return float(np.sum((x - xm) * (y - ym)) / denom)


def dyadic_radius(k):
    """Truncation radius 1 - 2**(-k)."""
    return 1.0 - 0.5 ** k


def tanh_radii(n, r_max):
    """n radii in [0, r_max] clustering toward the boundary (tanh-spaced)."""
    return np.tanh(np.linspace(0.0, math.atanh(r_max), int(n)))


def area_uniform_points(rng, n):
    """n points distributed uniformly w.r.t. area on the unit disk."""
    radius = np.sqrt(rng.random(n))
    angle = TWO_PI * rng.random(n)
    return radius * np.exp(1j * angle)


def _grid_local_maxima(vals):
    """Indices of grid cells that beat their 4-neighbors (angle wraps)."""
    up = np.roll(vals, 1, axis=1)
    down = np.roll(vals, -1, axis=1)
    inner = np.pad(vals, ((1, 1), (0, 0)), constant_values=-np.inf)
    above = inner[2:, :]
    below = inner[:-2, :]
    mask = (vals >= up) & (vals >= down) & (vals >= above) & (vals >= below)
    return np.argwhere(mask)


def sup_search(objective, radii, angles, golden_iters=40, refine_top=4):
    """Grid maximum of ``objective(z)`` over polar samples plus local refinement.

    The strongest few grid-local maxima are each refined by golden-section
    sweeps alternating radius and angle, which guards against near-tied peaks
    resolving differently off-grid.  ``objective`` must accept complex ndarray
    input (scalars included).  Returns ``(value, argmax_z,
    (radius_width, angle_width))``.
    """
    r = np.asarray(radii, dtype=float)
    th = np.asarray(angles, dtype=float)
    zgrid = r[:, None] * np.exp(1j * th)[None, :]
    vals = np.asarray(objective(zgrid), dtype=float)
    peaks = _grid_local_maxima(vals)
    order = np.argsort(vals[peaks[:, 0], peaks[:, 1]])[::-1]
    peaks = peaks[order[:refine_top]]
    dth = TWO_PI / len(th)

    best_val = float(np.max(vals))
    best_z = complex(zgrid[np.unravel_index(int(np.argmax(vals)), vals.shape)])
    best_res = (float(r[1] - r[0]) if len(r) > 1 else 0.0, dth)
    for i, j in peaks:
        r_lo = r[i - 1] if i > 0 else 0.0
        r_hi = r[i + 1] if i + 1 < len(r) else r[-1]
        r_best, t_best = float(r[i]), float(th[j])
        wr = wa = float(r_hi - r_lo)
        for _ in range(2):
            r_best, _, wr = golden_max(
                lambda s: float(objective(s * np.exp(1j * t_best))),
                r_lo, r_hi, golden_iters)
            t_best, _, wa = golden_max(
                lambda t: float(objective(r_best * np.exp(1j * t))),
                t_best - dth, t_best + dth, golden_iters)
            r_lo = max(0.0, r_best - 2.0 * wr)
            r_hi = min(float(r[-1]), r_best + 2.0 * wr)
        z_star = r_best * math.cos(t_best) + 1j * r_best * math.sin(t_best)
        refined = float(objective(z_star))
        if refined > best_val:
            best_val, best_z, best_res = refined, z_star, (wr, wa)
    return best_val, best_z, best_res

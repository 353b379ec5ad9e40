"""Shared Gauss panel quadrature primitives."""

from __future__ import annotations

import math

import numpy as np

INF = math.inf

G15_X, G15_W = np.polynomial.legendre.leggauss(15)


def gauss15(f, a: float, b: float) -> float:
    """15-node Gauss-Legendre rule on [a, b]; non-finite samples yield inf."""
    h = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    total = 0.0
    for x, w in zip(G15_X, G15_W):
        v = f(mid + h * x)
        if not math.isfinite(v):
            return INF
        total += w * v
    return total * h


def quad_interval(f, a: float, b: float, rel: float = 1e-10, depth: int = 14,
                  abs_floor: float = 0.0) -> float:
    """Adaptive bisection of the panel rule with a relative stop.

    ``abs_floor`` is an absolute error budget for the whole interval; it
    halves with each split so that panels whose contribution is negligible
    against the full integral stop refining (flat tails of smooth bumps
    otherwise grind at full depth).
    """
    whole = gauss15(f, a, b)
    if whole == INF:
        return INF
    if abs_floor == 0.0:
        abs_floor = rel * (abs(whole) + 1e-300)
    mid = 0.5 * (a + b)
    left = gauss15(f, a, mid)
    right = gauss15(f, mid, b)
    if left == INF or right == INF:
        return INF
    halves = left + right
    err = abs(halves - whole)
    if err <= rel * abs(halves) + abs_floor or depth <= 0:
        return halves
    return (quad_interval(f, a, mid, rel, depth - 1, 0.5 * abs_floor)
            + quad_interval(f, mid, b, rel, depth - 1, 0.5 * abs_floor))

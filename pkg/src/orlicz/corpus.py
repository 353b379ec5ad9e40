"""Named fields, sequences, and derivative specs for experiments and the CLI.

Everything here is analytic: values come with exact gradients, so quadrature
is the only source of numerical error in the experiments.
"""

from __future__ import annotations

import math
from typing import Callable, Dict

import numpy as np

from .modular import BoxDomain, TestFunction
from .nemytskii import (
    LipschitzSpec,
    abs_shift_spec,
    identity_spec,
    signed_square_spec,
    singular_log_field,
)
from .young import YoungError


def coordinate_field(dim: int, axis: int = 0) -> TestFunction:
    def grad(x, _a=axis, _d=dim):
        g = np.zeros(_d)
        g[_a] = 1.0
        return g

    return TestFunction(lambda x: float(x[axis]), grad, label=f"x{axis + 1}")


def product_sine(dim: int) -> TestFunction:
    def val(x):
        out = 1.0
        for i in range(dim):
            out *= math.sin(math.pi * float(x[i]))
        return out

    def grad(x):
        g = np.zeros(dim)
        for i in range(dim):
            g[i] = math.pi
            for j in range(dim):
                s = float(x[j])
                g[i] *= math.cos(math.pi * s) if j == i else math.sin(math.pi * s)
        return g

    return TestFunction(val, grad, label="product_sine")


def radial_bump(center, width: float, height: float = 1.0) -> TestFunction:
    """Smooth compactly supported bump exp(1 - 1/(1 - s^2)) on |x-c| < width."""
    c = np.asarray(center, dtype=float)
    dim = len(c)

    def profile(s: float) -> float:
        if s >= 1.0:
            return 0.0
        return math.exp(1.0 - 1.0 / (1.0 - s * s))

    def val(x):
        s = float(np.linalg.norm(np.asarray(x) - c)) / width
        return height * profile(s)

    def grad(x):
        d = np.asarray(x, dtype=float) - c
        r = float(np.linalg.norm(d))
        s = r / width
        if s >= 1.0 or r == 0.0:
            return np.zeros(dim)
        dp = profile(s) * (-2.0 * s / (1.0 - s * s) ** 2)
        return height * dp * d / (r * width)

    return TestFunction(val, grad, label=f"bump(w={width:g})")


def interval_vanishing_corpus():
    """Fields on (0, 1) vanishing at both endpoints, with exact derivatives."""
    fns = []
    fns.append(TestFunction(lambda x: float(x[0]) * (1 - float(x[0])),
                            lambda x: np.array([1 - 2 * float(x[0])]),
                            label="parabola"))
    fns.append(TestFunction(lambda x: math.sin(math.pi * float(x[0])),
                            lambda x: np.array([math.pi * math.cos(math.pi * float(x[0]))]),
                            label="sine"))
    fns.append(TestFunction(lambda x: float(x[0]) ** 2 * (1 - float(x[0])),
                            lambda x: np.array([2 * float(x[0]) - 3 * float(x[0]) ** 2]),
                            label="skew_cubic"))
    fns.append(TestFunction(lambda x: float(x[0]) * (1 - float(x[0])) ** 2,
                            lambda x: np.array([(1 - float(x[0])) * (1 - 3 * float(x[0]))]),
                            label="skew_cubic_mirror"))
    fns.append(TestFunction(lambda x: min(float(x[0]), 1 - float(x[0])),
                            lambda x: np.array([1.0 if float(x[0]) < 0.5 else -1.0]),
                            label="tent"))
    fns.append(radial_bump([0.5], 0.5))
    return [(u, BoxDomain.interval(0.0, 1.0)) for u in fns]


def bump_corpus(n: int, count: int = 5):
    """Bumps of assorted widths and centers on the unit box, vanishing on the
    boundary; used by the conjugate-modular calibration probe."""
    box = BoxDomain.unit(n)
    specs = [
        ((0.5,) * n, 0.45, 1.0),
        ((0.5,) * n, 0.30, 1.0),
        ((0.35,) * n, 0.30, 2.0),
        ((0.6,) * n, 0.35, 0.5),
        ((0.45,) * n, 0.20, 3.0),
    ]
    return [(radial_bump(c, w, h), box) for c, w, h in specs[:count]]


def unit_ball_corpus():
    """Twelve (field, domain) pairs exercising norms in dimensions 1 and 2."""
    out = []
    i1 = BoxDomain.interval(0.0, 1.0)
    b2 = BoxDomain.unit(2)
    out.append((TestFunction(lambda x: 1.0, lambda x: np.zeros(1), "one"), i1))
    out.append((TestFunction(lambda x: 0.25, lambda x: np.zeros(1), "quarter"), i1))
    out.append((TestFunction(lambda x: 3.0, lambda x: np.zeros(1), "three"), i1))
    out.append((coordinate_field(1), i1))
    out.append((TestFunction(lambda x: float(x[0]) * (1 - float(x[0])),
                             lambda x: np.array([1 - 2 * float(x[0])]), "parabola"), i1))
    out.append((TestFunction(lambda x: math.sin(math.pi * float(x[0])),
                             lambda x: np.array([math.pi * math.cos(math.pi * float(x[0]))]),
                             "sine"), i1))
    out.append((radial_bump([0.5], 0.4), i1))
    out.append((coordinate_field(2), b2))
    out.append((TestFunction(lambda x: float(x[0]) + float(x[1]),
                             lambda x: np.ones(2), "x_plus_y"), b2))
    out.append((product_sine(2), b2))
    out.append((TestFunction(
        lambda x: 16.0 * x[0] * (1 - x[0]) * x[1] * (1 - x[1]),
        lambda x: 16.0 * np.array([(1 - 2 * x[0]) * x[1] * (1 - x[1]),
                                   x[0] * (1 - x[0]) * (1 - 2 * x[1])]),
        "poly_bump"), b2))
    out.append((TestFunction(lambda x: 2.0 * float(x[0]) * float(x[1]),
                             lambda x: np.array([2 * float(x[1]), 2 * float(x[0])]),
                             "saddle"), b2))
    return out


def shifted_sequence(base: TestFunction, ks, offset: Callable[[int], float]):
    return [TestFunction(
        value=lambda x, _k=k: base.value(x) + offset(_k),
        gradient=base.gradient,
        label=f"{base.label}+{offset(k):g}") for k in ks]


FIELDS: Dict[str, Callable[[int], TestFunction]] = {
    "x1": coordinate_field,
    "product_sine": lambda dim: product_sine(dim),
    "one_plus_xlogx": singular_log_field,
    "bump": lambda dim: radial_bump([0.5] * dim, 0.45),
}

SPECS: Dict[str, Callable[[], LipschitzSpec]] = {
    "identity": identity_spec,
    "abs_shift": abs_shift_spec,
    "signed_square": signed_square_spec,
}

SEQUENCES = {
    "shift_inv": lambda k: 1.0 / k,
    "shift_log": lambda k: (math.log(k) + 1.0) / k,
}


def get_field(name: str, dim: int) -> TestFunction:
    if name not in FIELDS:
        raise YoungError(f"unknown field {name!r}; have {sorted(FIELDS)}")
    return FIELDS[name](dim)


def get_spec(name: str) -> LipschitzSpec:
    if name not in SPECS:
        raise YoungError(f"unknown derivative spec {name!r}; have {sorted(SPECS)}")
    return SPECS[name]()

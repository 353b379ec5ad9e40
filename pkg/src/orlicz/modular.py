"""Modular integrals, Luxemburg norms, and convergence diagnostics.

Scalar fields live on axis-aligned boxes in dimension 1 to 3 and are supplied
with analytic gradients.  Integration uses nested adaptive Gauss panels with
geometric refinement toward faces declared singular; a panel trend that stops
decaying is reported as a divergent integral (+inf) rather than ground
through endless refinement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from ._quad import G15_W, G15_X, gauss15, quad_interval
from .young import INF, YoungError, YoungFunction


class QuadratureError(RuntimeError):
    """Quadrature failed without a clean convergence or divergence signature."""


class DomainError(ValueError):
    """Unsupported or inconsistent integration domain."""


# ---------------------------------------------------------------------------
# Domains and test functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoxDomain:
    """Axis-aligned box with optional log-refined quadrature faces.

    ``singular_faces`` lists (axis, side) pairs, side in {"lower", "upper"},
    toward which the integrand may blow up or oscillate sharply.
    """

    lower: tuple
    upper: tuple
    singular_faces: tuple = ()

    def __post_init__(self):
        if len(self.lower) != len(self.upper) or not self.lower:
            raise DomainError("lower/upper must be nonempty and equally long")
        if len(self.lower) > 3:
            raise DomainError("quadrature supports dimensions 1 to 3")
        for lo, hi in zip(self.lower, self.upper):
            if not lo < hi:
                raise DomainError("need lower < upper on every axis")
        for axis, side in self.singular_faces:
            if not (0 <= axis < len(self.lower)) or side not in ("lower", "upper"):
                raise DomainError(f"bad singular face ({axis}, {side})")

    @property
    def n(self) -> int:
        return len(self.lower)

    @property
    def measure(self) -> float:
        m = 1.0
        for lo, hi in zip(self.lower, self.upper):
            m *= hi - lo
        return m

    @property
    def finite(self) -> bool:
        return all(math.isfinite(lo) and math.isfinite(hi)
                   for lo, hi in zip(self.lower, self.upper))

    @classmethod
    def interval(cls, a: float, b: float, singular: tuple = ()) -> "BoxDomain":
        return cls((a,), (b,), singular)

    @classmethod
    def unit(cls, n: int, singular: tuple = ()) -> "BoxDomain":
        return cls((0.0,) * n, (1.0,) * n, singular)


@dataclass(frozen=True)
class TestFunction:
    """Scalar field with analytically supplied gradient."""

    value: Callable[[np.ndarray], float]
    gradient: Callable[[np.ndarray], np.ndarray]
    label: str = ""

    def __sub__(self, other: "TestFunction") -> "TestFunction":
        return TestFunction(
            value=lambda x: self.value(x) - other.value(x),
            gradient=lambda x: np.asarray(self.gradient(x)) - np.asarray(other.gradient(x)),
            label=f"{self.label}-{other.label}",
        )

    def scaled(self, c: float) -> "TestFunction":
        return TestFunction(
            value=lambda x: c * self.value(x),
            gradient=lambda x: c * np.asarray(self.gradient(x)),
            label=f"{c:g}*{self.label}",
        )

    def gradient_consistent(self, box: BoxDomain, points: int = 32,
                            rel_tol: float = 1e-4, seed: int = 7,
                            margin: float = 0.05) -> bool:
        """Central-difference probe at random interior points, kept away from
        singular faces by a relative margin."""
        rng = np.random.default_rng(seed)
        lo = np.array(box.lower, dtype=float)
        hi = np.array(box.upper, dtype=float)
        width = hi - lo
        ok = True
        for _ in range(points):
            x = lo + width * (margin + (1 - 2 * margin) * rng.random(box.n))
            g = np.asarray(self.gradient(x), dtype=float)
            h = 1e-5 * np.maximum(width, 1.0)
            fd = np.zeros(box.n)
            for i in range(box.n):
                xp, xm = x.copy(), x.copy()
                xp[i] += h[i]
                xm[i] -= h[i]
                fd[i] = (self.value(xp) - self.value(xm)) / (2 * h[i])
            scale = max(np.linalg.norm(g), np.linalg.norm(fd), 1e-8)
            if np.linalg.norm(fd - g) > rel_tol * scale * 10:
                ok = False
        return ok


def constant_function(c: float, n: int) -> TestFunction:
    return TestFunction(lambda x: c, lambda x: np.zeros(n), label=f"const{c:g}")


def sup_norm(u: TestFunction, box: BoxDomain, samples_per_axis: int = 2049) -> float:
    """Grid supremum of |u|; adequate for the analytic corpus functions."""
    axes = [np.linspace(lo, hi, samples_per_axis if box.n == 1 else 129)
            for lo, hi in zip(box.lower, box.upper)]
    # trim exact face hits to dodge declared singularities
    axes = [ax[1:-1] for ax in axes]
    best = 0.0
    if box.n == 1:
        for x in axes[0]:
            best = max(best, abs(u.value(np.array([x]))))
        return best
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=-1)
    for p in pts:
        best = max(best, abs(u.value(p)))
    return best


# ---------------------------------------------------------------------------
# Adaptive integration on boxes
# ---------------------------------------------------------------------------

_MAX_PANELS = 900
_MAG_CAP = 1e12


def _toward_face(f, a: float, b: float, rel_tol: float) -> float:
    """Integral over (a, b] with a possible singularity at a.

    Geometric panels shrink toward the face; the series of panel integrals
    must eventually decay geometrically, in which case the tail is summed by
    ratio extrapolation.  A non-decaying trend certifies divergence and
    returns +inf.
    """
    w = b - a
    total = 0.0
    panel_vals = []
    prev_extrapolated = None
    for j in range(_MAX_PANELS):
        hi = a + w * 2.0 ** (-j)
        lo = a + w * 2.0 ** (-j - 1)
        if lo <= a or hi <= lo:
            break
        I = quad_interval(f, lo, hi, rel=rel_tol * 0.1)
        if I == INF:
            return INF
        total += I
        panel_vals.append(I)
        if j < 4:
            continue
        recent = panel_vals[-3:]
        if all(v == 0.0 for v in recent):
            return total
        prev = panel_vals[-2]
        if prev > 0.0 and I > 0.0:
            rho = I / prev
            if rho >= 1.0 - 1e-6 and j >= 6:
                return INF  # panels stopped decaying: divergent trend
            if rho < 1.0:
                tail = I * rho / (1.0 - rho)
                est = total + tail
                if prev_extrapolated is not None:
                    if abs(est - prev_extrapolated) <= rel_tol * abs(est) + 1e-300:
                        return est
                prev_extrapolated = est
        elif I == 0.0 and prev == 0.0:
            return total
    raise QuadratureError("no convergence or divergence signature at singular face")


def _int1d(f, a: float, b: float, sing_lo: bool, sing_hi: bool,
           rel_tol: float) -> float:
    if sing_lo and sing_hi:
        mid = 0.5 * (a + b)
        left = _toward_face(f, a, mid, rel_tol)
        if left == INF:
            return INF
        right = _toward_face(lambda x: f(a + b - x), a, mid, rel_tol)
        return INF if right == INF else left + right
    if sing_lo:
        return _toward_face(f, a, b, rel_tol)
    if sing_hi:
        return _toward_face(lambda x: f(a + b - x), a, b, rel_tol)
    return quad_interval(f, a, b, rel=rel_tol)


def integrate_box(fn: Callable[[np.ndarray], float], box: BoxDomain,
                  rel_tol: float = 1e-8,
                  truncation_radius: Optional[float] = None) -> float:
    """Nested adaptive integration of fn over the box; +inf on certified
    divergence toward a singular face.

    Half-infinite boxes are refused unless a truncation radius is supplied;
    the result is then the integral over the clipped box (a lower bound for
    nonnegative integrands), with the tail left to the caller's decay bound.
    """
    if not box.finite:
        if truncation_radius is None:
            raise DomainError(
                "infinite boxes need a truncation radius and decay envelope")
        box = BoxDomain(
            tuple(max(lo, -truncation_radius) for lo in box.lower),
            tuple(min(hi, truncation_radius) for hi in box.upper),
            box.singular_faces)
    n = box.n
    sing = set(box.singular_faces)

    def level(i: int, coords: tuple) -> float:
        if i == n:
            return fn(np.array(coords))
        return _int1d(
            lambda x: level(i + 1, coords + (x,)),
            box.lower[i], box.upper[i],
            (i, "lower") in sing, (i, "upper") in sing,
            rel_tol,
        )

    return level(0, ())


def integrate_box_tensor(fn_vec: Callable[[np.ndarray], np.ndarray],
                         box: BoxDomain, nodes_per_axis: int = 32) -> float:
    """Fixed tensor Gauss rule with a vectorized integrand (smooth fields)."""
    if not box.finite:
        raise DomainError("tensor rule needs a finite box")
    xs, ws = [], []
    for lo, hi in zip(box.lower, box.upper):
        h = 0.5 * (hi - lo)
        mid = 0.5 * (lo + hi)
        order = max(nodes_per_axis, 4)
        gx, gw = np.polynomial.legendre.leggauss(order)
        xs.append(mid + h * gx)
        ws.append(h * gw)
    mesh = np.meshgrid(*xs, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=-1)
    w = ws[0]
    for arr in ws[1:]:
        w = np.multiply.outer(w, arr)
    vals = np.asarray(fn_vec(pts), dtype=float)
    return float(np.dot(w.ravel(), vals))


# ---------------------------------------------------------------------------
# Modulars and Luxemburg norms
# ---------------------------------------------------------------------------

def modular_integral(u: TestFunction, y: YoungFunction, lam: float,
                     box: BoxDomain, rel_tol: float = 1e-8,
                     truncation_radius: Optional[float] = None) -> float:
    """int_box A(|u(x)| / lambda) dx, +inf allowed."""
    if lam <= 0:
        raise YoungError("modular scale lambda must be positive")
    return integrate_box(lambda x: y(abs(u.value(x)) / lam), box, rel_tol,
                         truncation_radius=truncation_radius)


def modular_integral_gradient(u: TestFunction, y, lam: float,
                              box: BoxDomain, rel_tol: float = 1e-8) -> float:
    """Gradient modular; isotropic A acts on |grad u|, an n-dimensional
    Young function acts on the full gradient vector."""
    if lam <= 0:
        raise YoungError("modular scale lambda must be positive")
    from .aniso import NDimYoung  # local import avoids a hard dependency
    if isinstance(y, NDimYoung):
        return integrate_box(
            lambda x: y(np.asarray(u.gradient(x)) / lam), box, rel_tol)
    return integrate_box(
        lambda x: y(float(np.linalg.norm(u.gradient(x))) / lam), box, rel_tol)


def luxemburg_norm(u: TestFunction, y: YoungFunction, box: BoxDomain,
                   gradient: bool = False, rel_tol: float = 1e-8,
                   lam_cap: float = 1e12) -> float:
    """inf{lambda > 0 : modular(u/lambda) <= 1} by bisection on log lambda."""
    def m(lam: float) -> float:
        if gradient:
            return modular_integral_gradient(u, y, lam, box, rel_tol)
        return modular_integral(u, y, lam, box, rel_tol)

    hi = 1.0
    doubles = 0
    while m(hi) > 1.0:
        hi *= 2.0
        doubles += 1
        if hi > lam_cap:
            return INF
    if m(min(1e-12, hi)) <= 1.0:
        return 0.0
    lo = hi / 2.0 if doubles else None
    if lo is None:
        lo = hi
        while m(lo / 2.0) <= 1.0:
            lo /= 2.0
            if lo < 1e-12:
                return 0.0
        lo /= 2.0
    for _ in range(80):
        mid = math.sqrt(lo * hi)
        if m(mid) <= 1.0:
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1e-11 * hi:
            break
    return hi


@dataclass(frozen=True)
class W1AQuantities:
    norm_value: float
    norm_gradient: float
    modular_value: Callable[[float], float]
    modular_gradient: Callable[[float], float]

    @property
    def norm_w1a(self) -> float:
        return self.norm_value + self.norm_gradient


def w1a_quantities(u: TestFunction, y, box: BoxDomain,
                   rel_tol: float = 1e-8) -> W1AQuantities:
    """Both Luxemburg norms plus modular evaluators for a field and its
    gradient (vector Young functions act on the full gradient)."""
    from .aniso import NDimYoung
    y_val = y.scalar_profile() if isinstance(y, NDimYoung) else y
    return W1AQuantities(
        norm_value=luxemburg_norm(u, y_val, box, rel_tol=rel_tol),
        norm_gradient=luxemburg_norm(u, y, box, gradient=True, rel_tol=rel_tol),
        modular_value=lambda lam: modular_integral(u, y_val, lam, box, rel_tol),
        modular_gradient=lambda lam: modular_integral_gradient(u, y, lam, box, rel_tol),
    )


# ---------------------------------------------------------------------------
# Convergence reports
# ---------------------------------------------------------------------------

def trajectory_converges(values: Sequence[float], tail_tol: float = 1e-3) -> bool:
    """Finite-index proxy for a vanishing limit: the tail must be monotone
    non-increasing and the final value at most tail_tol of the initial one."""
    vals = list(values)
    if not vals:
        return False
    initial, final = vals[0], vals[-1]
    if not math.isfinite(final):
        return False
    if initial == 0.0:
        return all(v == 0.0 for v in vals)
    if not math.isfinite(initial):
        return False
    if final > tail_tol * initial:
        return False
    tail = vals[len(vals) // 2:]
    if not all(math.isfinite(v) for v in tail):
        return False
    return all(tail[i + 1] <= tail[i] * (1 + 1e-9) + 1e-300
               for i in range(len(tail) - 1))


@dataclass(frozen=True)
class ModularReport:
    lambda_grid: tuple
    indices: tuple
    value_modulars: np.ndarray          # index x lambda
    gradient_modulars: Optional[np.ndarray]
    modular_values: np.ndarray          # combined trajectory per (index, lambda)
    converging_lambdas: tuple
    norm_convergence: bool
    smallest_converging_lambda: float

    def rows_non_increasing_in_lambda(self, slack: float = 1e-7) -> bool:
        m = self.modular_values
        for row in m:
            finite_prev = None
            for v in row:
                if finite_prev is not None and math.isfinite(finite_prev):
                    if math.isfinite(v) and v > finite_prev * (1 + slack) + 1e-300:
                        return False
                finite_prev = v
        return True


def default_indices(k_max: int = 1024) -> tuple:
    ks = []
    k = 2
    while k <= k_max:
        ks.append(k)
        k *= 2
    return tuple(ks)


def modular_convergence(seq: Sequence[TestFunction], limit: TestFunction,
                        y: YoungFunction, box: BoxDomain,
                        lambda_grid: Sequence[float],
                        indices: Optional[Sequence[int]] = None,
                        include_gradient: bool = True,
                        rel_tol: float = 1e-8,
                        tail_tol: float = 1e-3) -> ModularReport:
    """Evaluate difference modulars along a sequence and decide per lambda
    whether the trajectory vanishes; norm convergence means every lambda in
    the grid converges."""
    lams = tuple(float(l) for l in lambda_grid)
    if not lams or any(l <= 0 for l in lams) or list(lams) != sorted(lams):
        raise YoungError("lambda grid must be positive and increasing")
    idx = tuple(indices) if indices is not None else tuple(range(1, len(seq) + 1))
    if len(idx) != len(seq):
        raise YoungError("indices must align with the sequence")

    diffs = [u - limit for u in seq]
    K, L = len(seq), len(lams)
    value_m = np.zeros((K, L))
    grad_m = np.zeros((K, L)) if include_gradient else None
    for i, d in enumerate(diffs):
        for j, lam in enumerate(lams):
            value_m[i, j] = modular_integral(d, y, lam, box, rel_tol)
            if include_gradient:
                grad_m[i, j] = modular_integral_gradient(d, y, lam, box, rel_tol)
    combined = value_m + grad_m if include_gradient else value_m.copy()

    converging = tuple(lams[j] for j in range(L)
                       if trajectory_converges(combined[:, j], tail_tol))
    return ModularReport(
        lambda_grid=lams,
        indices=idx,
        value_modulars=value_m,
        gradient_modulars=grad_m,
        modular_values=combined,
        converging_lambdas=converging,
        norm_convergence=len(converging) == L,
        smallest_converging_lambda=min(converging) if converging else INF,
    )

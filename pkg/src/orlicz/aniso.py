"""n-dimensional Young functions and their anisotropic conjugates.

An n-dimensional Young function is convex, even, lower semicontinuous,
vanishes at the origin, and blows up along every ray.  The radial function
with the same sublevel-set measures reduces everything one needs for Sobolev
conjugation to the one-dimensional machinery; orthotropic sums admit the
closed-form reduction through the geometric mean of the component inverses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import conjugate as conj_mod
from .conjugate import IntegralClass, SobolevConjugate, sobolev_conjugate
from .young import (
    INF,
    ConstructionError,
    Custom,
    FromInverse,
    GrowthOrder,
    Power,
    YoungError,
    YoungFunction,
)


class NDimYoung:
    """Base class for Young functions of a vector argument."""

    n: int

    def __call__(self, xi) -> float:  # pragma: no cover - abstract
        raise NotImplementedError

    def scalar_profile(self) -> YoungFunction:
        raise YoungError(f"{type(self).__name__} has no scalar reduction")

    def nondegenerate(self, probe_radius: float = 1e-3) -> bool:
        for i in range(self.n):
            e = np.zeros(self.n)
            e[i] = probe_radius
            if self(e) <= 0.0:
                return False
        return True


@dataclass(frozen=True, eq=False)
class Isotropic(NDimYoung):
    """A(|xi|)."""

    a: YoungFunction
    n: int = 2

    def __call__(self, xi) -> float:
        xi = np.asarray(xi, dtype=float)
        if np.any(np.isinf(xi)):
            return INF
        return self.a(float(np.linalg.norm(xi)))

    def scalar_profile(self) -> YoungFunction:
        return self.a


@dataclass(frozen=True, eq=False)
class Orthotropic(NDimYoung):
    """sum_i A_i(|xi_i|), splitting along the coordinate axes."""

    components: tuple

    @property
    def n(self) -> int:
        return len(self.components)

    def __call__(self, xi) -> float:
        xi = np.asarray(xi, dtype=float)
        total = 0.0
        for a, x in zip(self.components, xi):
            if math.isinf(x):
                return INF
            v = a(abs(float(x)))
            if v == INF:
                return INF
            total += v
        return total

    def scalar_profile(self) -> YoungFunction:
        return orthotropic_bar(self.components)


@dataclass(frozen=True, eq=False)
class LinearImage(NDimYoung):
    """sum_i A_i(|M_i xi|), each M_i a nonsingular matrix."""

    terms: tuple  # of (matrix, YoungFunction)
    n: int

    def __post_init__(self):
        for m, _ in self.terms:
            m = np.asarray(m, dtype=float)
            if m.shape != (self.n, self.n) or abs(np.linalg.det(m)) < 1e-14:
                raise YoungError("linear-image matrices must be square and nonsingular")

    def __call__(self, xi) -> float:
        xi = np.asarray(xi, dtype=float)
        if np.any(np.isinf(xi)):
            return INF
        total = 0.0
        for m, a in self.terms:
            v = a(float(np.linalg.norm(np.asarray(m) @ xi)))
            if v == INF:
                return INF
            total += v
        return total


@dataclass(frozen=True, eq=False)
class BlackBox(NDimYoung):
    """Opaque evaluator; only volume-based machinery applies."""

    fn: Callable[[np.ndarray], float]
    n: int

    def __call__(self, xi) -> float:
        xi = np.asarray(xi, dtype=float)
        if np.any(np.isinf(xi)):
            return INF
        return float(self.fn(xi))


# ---------------------------------------------------------------------------
# Orthotropic reduction
# ---------------------------------------------------------------------------

def orthotropic_bar(components: Sequence[YoungFunction]) -> YoungFunction:
    """The Young function whose inverse is the geometric mean of the
    component inverses."""
    comps = tuple(components)
    if not comps:
        raise YoungError("need at least one component")
    n = len(comps)
    for a in comps:
        if a.inverse(1e6) <= 0.0 or a.inverse(1e-6) == INF:
            raise ConstructionError("a component inverse is degenerate")

    def inv(t: float) -> float:
        if t <= 0.0:
            return 0.0
        acc = 0.0
        for a in comps:
            v = a.inverse(t)
            if v == INF:
                return INF
            if v <= 0.0:
                return 0.0
            acc += math.log(v)
        return math.exp(acc / n)

    zero = None
    inf_ = None
    orders_z = [a.zero_order for a in comps]
    orders_i = [a.inf_order for a in comps]
    if all(o is not None and o.family == "poly" and o.log_exp == 0 and o.loglog_exp == 0
           for o in orders_z):
        zero = GrowthOrder(bar_p([o.power for o in orders_z]))
    if all(o is not None and o.family == "poly" and o.log_exp == 0 and o.loglog_exp == 0
           for o in orders_i):
        inf_ = GrowthOrder(bar_p([o.power for o in orders_i]))
    return FromInverse(inv_fn=inv, zero=zero, inf_=inf_, label="orthotropic-mean")


def bar_p(ps: Sequence[float]) -> float:
    """Exponent mean: 1/pbar = (1/n) sum 1/p_i."""
    ps = list(ps)
    if not ps or any(p < 1 for p in ps):
        raise YoungError("exponents must satisfy p_i >= 1")
    return len(ps) / sum(1.0 / p for p in ps)


# ---------------------------------------------------------------------------
# Sublevel-set volumes and the measure rearrangement
# ---------------------------------------------------------------------------

def _unit_directions(n: int, count: int) -> np.ndarray:
    if n == 1:
        return np.array([[1.0]])
    if n == 2:
        ang = np.linspace(0.0, math.pi, count, endpoint=False)
        return np.stack([np.cos(ang), np.sin(ang)], axis=-1)
    golden = (1 + 5 ** 0.5) / 2
    k = np.arange(count)
    z = (k + 0.5) / count
    phi = 2 * math.pi * k / golden
    s = np.sqrt(1 - z ** 2)
    return np.stack([s * np.cos(phi), s * np.sin(phi), z], axis=-1)


def _ray_extent(phi: NDimYoung, d: np.ndarray, level: float) -> float:
    """sup{s : phi(s d) <= level}; rays from the origin are monotone."""
    s = 1.0
    doubles = 0
    while phi(s * d) <= level:
        s *= 2.0
        doubles += 1
        if doubles > 200:
            raise YoungError("unbounded sublevel set along a direction")
    lo = 0.0 if doubles == 0 else s / 2.0
    hi = s
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if phi(mid * d) <= level:
            lo = mid
        else:
            hi = mid
    return hi


def sublevel_volume(phi: NDimYoung, level: float, max_depth: int = 12,
                    rel_tol: float = 1e-3, method: str = "grid",
                    mc_samples: int = 1_000_000, seed: int = 0):
    """Lebesgue measure of {phi <= level} for n <= 3.

    Grid method: adaptive refinement of boundary cells inside a bounding box
    found by directional extent search (convexity makes the all-corners test
    exact on the inside).  Monte Carlo fallback reports a standard error.
    Returns (volume, error_estimate).
    """
    n = phi.n
    if n > 3:
        raise YoungError("volume computation supports n <= 3")
    if level <= 0.0:
        return 0.0, 0.0
    dirs = list(_unit_directions(n, 64 if n == 2 else 160))
    dirs.extend(np.eye(n))  # exact axis probes catch split degeneracies
    rho = 0.0
    for d in dirs:
        rho = max(rho, _ray_extent(phi, d, level))
        if rho > 1e10:
            raise YoungError("sublevel set is unbounded at this level")
    rho *= 1.05

    if method == "mc":
        rng = np.random.default_rng(seed)
        pts = rng.uniform(-rho, rho, size=(mc_samples, n))
        hits = np.fromiter((phi(p) <= level for p in pts), bool, count=mc_samples)
        frac = hits.mean()
        box_vol = (2 * rho) ** n
        vol = frac * box_vol
        se = box_vol * math.sqrt(max(frac * (1 - frac), 1e-12) / mc_samples)
        return vol, se

    corners_cache = {}

    def inside(pt: tuple) -> bool:
        v = corners_cache.get(pt)
        if v is None:
            v = phi(np.array(pt)) <= level
            corners_cache[pt] = v
        return v

    def corner_pts(lo: tuple, size: float):
        out = []
        for mask in range(2 ** n):
            out.append(tuple(lo[i] + size * ((mask >> i) & 1) for i in range(n)))
        return out

    inside_vol = 0.0
    mixed = [(tuple([-rho] * n), 2 * rho)]
    for depth in range(max_depth + 1):
        cell_vol = mixed[0][1] ** n if mixed else 0.0
        mixed_vol = cell_vol * len(mixed)
        if inside_vol > 0 and mixed_vol <= 2 * rel_tol * inside_vol:
            break
        if depth == max_depth or not mixed:
            break
        nxt = []
        half_all_in = []
        for lo, size in mixed:
            h = size / 2.0
            for mask in range(2 ** n):
                clo = tuple(lo[i] + h * ((mask >> i) & 1) for i in range(n))
                flags = [inside(p) for p in corner_pts(clo, h)]
                center = tuple(c + h / 2.0 for c in clo)
                if all(flags):
                    half_all_in.append(h ** n)
                elif any(flags) or inside(center):
                    nxt.append((clo, h))
        inside_vol += sum(half_all_in)
        mixed = nxt
    mixed_vol = (mixed[0][1] ** n if mixed else 0.0) * len(mixed)
    return inside_vol + 0.5 * mixed_vol, 0.5 * mixed_vol


_OMEGA = {1: 2.0, 2: math.pi, 3: 4.0 * math.pi / 3.0}


def phi_circ(phi: NDimYoung, t: float, method: str = "auto", **vol_kwargs) -> float:
    """Inverse of the radial rearrangement: the radius whose ball has the
    sublevel-set volume of {phi <= t}.

    Isotropic and orthotropic forms use their scalar reductions directly;
    anything else goes through the volume computation (n <= 3).
    """
    if t < 0:
        raise YoungError("level must be nonnegative")
    if method != "volume":
        if isinstance(phi, Isotropic):
            return phi.a.inverse(t)
        if isinstance(phi, Orthotropic):
            return phi.scalar_profile().inverse(t)
    if t == 0.0:
        return 0.0
    vol, _ = sublevel_volume(phi, t, **vol_kwargs)
    return (vol / _OMEGA[phi.n]) ** (1.0 / phi.n)


def _phi_circ_young(phi: NDimYoung, t_lo: float = 1e-3, t_hi: float = 1e4,
                    points: int = 25, **vol_kwargs) -> YoungFunction:
    """Tabulated radial rearrangement as a Young function (volume route)."""
    ts = np.geomspace(t_lo, t_hi, points)
    rs = np.array([phi_circ(phi, float(t), method="volume", **vol_kwargs) for t in ts])
    if np.any(rs <= 0) or np.any(np.diff(np.log(rs)) <= 0):
        raise ConstructionError("volume table is not strictly increasing")
    lts, lrs = np.log(ts), np.log(rs)
    lo_slope = (lrs[1] - lrs[0]) / (lts[1] - lts[0])
    hi_slope = (lrs[-1] - lrs[-2]) / (lts[-1] - lts[-2])

    def inv(t: float) -> float:
        if t <= 0.0:
            return 0.0
        lt = math.log(t)
        if lt < lts[0]:
            return math.exp(lrs[0] + lo_slope * (lt - lts[0]))
        if lt > lts[-1]:
            return math.exp(lrs[-1] + hi_slope * (lt - lts[-1]))
        return math.exp(float(np.interp(lt, lts, lrs)))

    zero = GrowthOrder(1.0 / lo_slope) if lo_slope > 1e-9 else None
    inf_ = GrowthOrder(1.0 / hi_slope) if hi_slope > 1e-9 else None
    return FromInverse(inv_fn=inv, zero=zero, inf_=inf_, label="radial-rearrangement")


def phi_n(phi: NDimYoung, n: Optional[int] = None, method: str = "auto",
          **vol_kwargs) -> SobolevConjugate:
    """One-dimensional Sobolev conjugate driven by the radial rearrangement.

    Orthotropic inputs reduce through the geometric-mean function; the volume
    route serves black-box or cross-validation use.
    """
    n = phi.n if n is None else n
    if n != phi.n:
        raise YoungError("conjugate exponent must match the dimension")
    if method != "volume":
        if isinstance(phi, Isotropic):
            return sobolev_conjugate(phi.a, n)
        if isinstance(phi, Orthotropic):
            return sobolev_conjugate(phi.scalar_profile(), n)
    circ = _phi_circ_young(phi, **vol_kwargs)
    return sobolev_conjugate(circ, n)


# ---------------------------------------------------------------------------
# The implicit coupling with a derivative envelope
# ---------------------------------------------------------------------------

class ThetaSolver:
    """Root of Phi_n(theta) = Phi(xi / E(theta)) for each xi.

    The left side is continuous and strictly increasing from 0 to infinity
    (this needs the defining integral to diverge at infinity), the right side
    is non-increasing in theta, so the root is unique.
    """

    def __init__(self, phi: NDimYoung, envelope: Callable[[float], float],
                 n: Optional[int] = None, conj: Optional[SobolevConjugate] = None):
        if not phi.nondegenerate():
            raise YoungError("theta needs a nondegenerate vector Young function")
        self.phi = phi
        self.envelope = envelope
        self.conj = conj if conj is not None else phi_n(phi, n)
        if self.conj.h_limit != INF:
            raise YoungError(
                "conjugate saturates at a finite level; theta is not defined")
        # smallest scale at which the envelope is positive
        t = 0.0
        if envelope(0.0) <= 0.0:
            t = 1e-12
            while envelope(t) <= 0.0 and t < 1e12:
                t *= 2.0
            if envelope(t) <= 0.0:
                raise YoungError("envelope is identically zero")
        self._t_pos = t

    def _rhs(self, xi: np.ndarray, t: float) -> float:
        e = self.envelope(t)
        if e <= 0.0:
            return 0.0 if not np.any(xi) else INF
        return self.phi(xi / e)

    def solve(self, xi, rel_tol: float = 1e-8) -> float:
        xi = np.asarray(xi, dtype=float)
        if not np.any(xi):
            return 0.0
        an = self.conj.an_value
        lo = self._t_pos
        if self._rhs(xi, lo) <= an(lo) and lo > 0.0:
            # root sits inside the zero-envelope plateau edge
            return lo
        hi = max(lo, 1.0)
        expansions = 0
        while an(hi) < self._rhs(xi, hi):
            hi *= 2.0
            expansions += 1
            if expansions > 120:
                raise YoungError("failed to bracket the theta root")
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if an(mid) < self._rhs(xi, mid):
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-13 * max(hi, 1.0):
                break
        theta = 0.5 * (lo + hi)
        lhs, rhs = an(theta), self._rhs(xi, theta)
        if math.isfinite(lhs) and math.isfinite(rhs):
            if abs(lhs - rhs) > max(1e-6, 100 * rel_tol) * (1.0 + lhs):
                raise YoungError(
                    f"theta residual too large at xi={xi!r}: {lhs} vs {rhs}")
        return theta


def solve_theta(phi: NDimYoung, envelope: Callable[[float], float], n: int,
                xi, conj: Optional[SobolevConjugate] = None,
                rel_tol: float = 1e-8) -> float:
    """One-shot theta solve; build a ThetaSolver for repeated queries."""
    return ThetaSolver(phi, envelope, n, conj=conj).solve(xi, rel_tol)

"""Sobolev conjugates of Young functions.

The conjugate of A with exponent n is A(H^{-1}(t)) where
H(s) = (int_0^s (t/A(t))^{1/(n-1)} dt)^{(n-1)/n}.  The defining integral is
classified at both endpoints; when it diverges at the origin the function is
first replaced near zero by a linear segment (which leaves the conjugate's
behaviour near infinity unchanged up to equivalence).

H is tabulated once on a geometric grid at build time (panel Gauss rule on a
log axis, exponent-fit extrapolation at the improper endpoint) and wrapped in
a monotone cubic interpolant, so conjugate evaluations inside modular
integrals stay cheap and the result is safe to share across threads.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.interpolate import PchipInterpolator

from ._quad import gauss15 as _gauss15
from ._quad import quad_interval as _quad_interval
from .young import (
    INF,
    ConstructionError,
    Custom,
    Glued,
    GrowthOrder,
    IndeterminateError,
    YoungError,
    YoungFunction,
    modify_near_zero,
)


class IntegralClass(enum.Enum):
    CONVERGES = "converges"
    DIVERGES = "diverges"
    INDETERMINATE = "indeterminate"


# ---------------------------------------------------------------------------
# Integrand and endpoint classification
# ---------------------------------------------------------------------------

def _integrand(y: YoungFunction, nexp: float):
    e = 1.0 / (nexp - 1.0)

    def g(t: float) -> float:
        if t <= 0.0:
            return 0.0
        a = y(t)
        if a == INF:
            return 0.0
        if a <= 0.0:
            return INF
        lg = e * (math.log(t) - math.log(a))
        return INF if lg > 709.0 else math.exp(lg)

    return g


def _fit_slope(g, ts) -> Optional[float]:
    """Local log-log slopes over consecutive points; None when unstable."""
    vals = []
    for t in ts:
        v = g(float(t))
        if v == INF:
            return INF
        if v <= 0.0:
            return -INF
        vals.append(math.log(v))
    xs = [math.log(float(t)) for t in ts]
    slopes = [(vals[i + 1] - vals[i]) / (xs[i + 1] - xs[i]) for i in range(len(ts) - 1)]
    for i in range(len(slopes) - 2):
        window = slopes[i:i + 3]
        if max(window) - min(window) <= 0.02:
            return window[-1]
    return None


def classify_integral_zero(y: YoungFunction, n: float) -> IntegralClass:
    """Convergence of the conjugate-defining integral at the origin."""
    if n < 2:
        raise YoungError("exponent must satisfy n >= 2")
    o = y.zero_order
    if o is not None:
        if o.family == "flat":
            return IntegralClass.DIVERGES
        if o.family == "exp_neg_inv":
            return IntegralClass.DIVERGES
        q = o.power
        if q < n:
            return IntegralClass.CONVERGES
        if q > n:
            return IntegralClass.DIVERGES
        return (IntegralClass.CONVERGES
                if o.log_exp > n - 1.0 else IntegralClass.DIVERGES)
    g = _integrand(y, n)
    m = _fit_slope(g, [10.0 ** (-k) for k in range(2, 9)])
    if m == INF:
        return IntegralClass.DIVERGES
    if m == -INF:
        return IntegralClass.CONVERGES
    if m is None:
        return IntegralClass.INDETERMINATE
    if m > -1.0 + 1e-3:
        return IntegralClass.CONVERGES
    if m < -1.0 - 1e-3:
        return IntegralClass.DIVERGES
    return IntegralClass.INDETERMINATE


def classify_integral_inf(y: YoungFunction, n: float) -> IntegralClass:
    """Convergence of the conjugate-defining integral at infinity."""
    if n < 2:
        raise YoungError("exponent must satisfy n >= 2")
    if y.finite_jump is not None:
        return IntegralClass.CONVERGES
    o = y.inf_order
    if o is not None:
        if o.family in ("exp", "jump"):
            return IntegralClass.CONVERGES
        q = o.power
        if q > n:
            return IntegralClass.CONVERGES
        if q < n:
            return IntegralClass.DIVERGES
        return (IntegralClass.CONVERGES
                if o.log_exp > n - 1.0 else IntegralClass.DIVERGES)
    g = _integrand(y, n)
    m = _fit_slope(g, [10.0 ** k for k in range(2, 10)])
    if m == -INF:
        return IntegralClass.CONVERGES
    if m == INF:
        return IntegralClass.DIVERGES
    if m is None:
        return IntegralClass.INDETERMINATE
    if m > -1.0 + 1e-3:
        return IntegralClass.DIVERGES
    if m < -1.0 - 1e-3:
        return IntegralClass.CONVERGES
    return IntegralClass.INDETERMINATE


# ---------------------------------------------------------------------------
# Panel quadrature helpers
# ---------------------------------------------------------------------------

def _head_integral(g, s_min: float) -> tuple:
    """(integral of g over (0, s_min], fitted local exponent)."""
    v1 = g(s_min)
    v2 = g(0.5 * s_min)
    if v1 <= 0.0 and v2 <= 0.0:
        return 0.0, 0.0
    if v1 <= 0.0 or v2 <= 0.0 or v1 == INF or v2 == INF:
        raise IndeterminateError("integrand not power-like at the origin")
    m = math.log2(v1 / v2)
    if m <= -1.0 + 1e-3:
        raise YoungError("integral diverges at the origin; modify near zero first")
    return v1 * s_min / (m + 1.0), m


# ---------------------------------------------------------------------------
# Tabulated H with monotone interpolation
# ---------------------------------------------------------------------------

class HnTable:
    """Forward map H(s) and its inverse, built once from the integrand.

    ``diverges_at_inf`` comes from the upstream classification and pins the
    limit of H to +inf even where float overflow of the base function makes
    the tail integrand evaluate to zero.
    """

    def __init__(self, y: YoungFunction, nexp: float,
                 diverges_at_inf: bool = False):
        self.nexp = float(nexp)
        self.nprime = nexp / (nexp - 1.0)
        self._g = _integrand(y, nexp)
        g = self._g
        # knots in x = ln t: dense core, coarser far tail
        core_step = math.log(10.0) / 32.0
        tail_step = math.log(10.0) / 8.0
        x0 = math.log(1e-10)
        s_min = 1e-10
        head, m0 = _head_integral(g, s_min)
        self._m0 = m0
        xs = [x0]
        lnI = []
        acc = head
        if acc <= 0.0:
            # integrand vanished below s_min (cannot happen after the upstream
            # classification, kept as a guard)
            acc = 1e-300
        lnI.append(math.log(acc))
        x = x0
        in_tail = False
        zero_panels = 0
        while True:
            step = tail_step if in_tail else core_step
            xn = x + step
            inc = _gauss15(lambda u: g(math.exp(u)) * math.exp(u), x, xn)
            if inc == INF:
                raise IndeterminateError("integrand blow-up inside the table range")
            acc += inc
            xs.append(xn)
            lnI.append(math.log(acc))
            x = xn
            if x >= math.log(1e10):
                in_tail = True
            if inc <= 0.0 or g(math.exp(xn)) == 0.0:
                zero_panels += 1
            else:
                zero_panels = 0
            lnH = math.log(acc) / self.nprime
            if zero_panels >= 3 or lnH > math.log(1e12) or x > 690.0:
                break
        self._xs = np.array(xs)
        self._lnI = np.array(lnI)
        self._lnH = self._lnI / self.nprime
        self._pchip = PchipInterpolator(self._xs, self._lnH, extrapolate=False)
        self._dpchip = self._pchip.derivative()
        # total integral and limit of H at infinity
        if diverges_at_inf:
            self._I_total = INF
        else:
            t_max = math.exp(self._xs[-1])
            tail = 0.0
            # fit the tail exponent at the last point where the integrand is
            # still positive (the base may overflow to inf before any jump)
            t_fit = t_max
            while t_fit > 1.0 and g(t_fit) <= 0.0:
                t_fit *= 0.5
            g_end = g(t_fit)
            if g_end > 0.0:
                v2 = g(0.5 * t_fit)
                if v2 > 0.0:
                    m_inf = math.log2(g_end / v2)
                    if m_inf < -1.0 - 1e-6:
                        tail = g_end * t_fit / (-1.0 - m_inf)
            self._I_total = math.exp(self._lnI[-1]) + tail
        self.limit = (self._I_total ** (1.0 / self.nprime)
                      if self._I_total != INF else INF)
        self._h_lo = math.exp(self._lnH[0])
        self._h_hi = math.exp(self._lnH[-1])
        self._s_lo = math.exp(self._xs[0])
        self._s_hi = math.exp(self._xs[-1])

    # -- forward -----------------------------------------------------------
    def __call__(self, s: float) -> float:
        if s <= 0.0:
            return 0.0
        x = math.log(s)
        if x < self._xs[0]:
            # head power law: I ~ c s^{m0+1}
            lnI = self._lnI[0] + (self._m0 + 1.0) * (x - self._xs[0])
            return math.exp(lnI / self.nprime)
        if x > self._xs[-1]:
            return self.refined(s)
        return float(math.exp(self._pchip(x)))

    def refined(self, s: float) -> float:
        """H(s) from the cumulative table plus an exact local panel."""
        if s <= 0.0:
            return 0.0
        x = math.log(s)
        if x < self._xs[0]:
            return self(s)
        j = int(np.searchsorted(self._xs, x, side="right")) - 1
        j = min(j, len(self._xs) - 1)
        base = math.exp(self._lnI[j])
        inc = _quad_interval(lambda u: self._g(math.exp(u)) * math.exp(u),
                             float(self._xs[j]), x, rel=1e-11)
        if inc == INF:
            return INF
        total = base + inc
        if self._I_total != INF:
            total = min(total, self._I_total)
        return total ** (1.0 / self.nprime)

    # -- inverse -----------------------------------------------------------
    def inverse(self, t: float) -> float:
        if t <= 0.0:
            return 0.0
        if self.limit != INF and t >= self.limit:
            return INF
        lt = math.log(t)
        if lt < self._lnH[0]:
            # head power law inverts in closed form
            x = self._xs[0] + (lt - self._lnH[0]) * self.nprime / (self._m0 + 1.0)
            return math.exp(x)
        if lt > self._lnH[-1]:
            lo, hi = self._lnH[-5], self._lnH[-1]
            xlo, xhi = self._xs[-5], self._xs[-1]
            slope = (hi - lo) / (xhi - xlo)
            if slope <= 1e-12:
                return INF
            x = xhi + (lt - hi) / slope
            return INF if x > 700.0 else math.exp(x)
        x = float(np.interp(lt, self._lnH, self._xs))
        for _ in range(12):
            fx = float(self._pchip(x)) - lt
            dfx = float(self._dpchip(x))
            if dfx <= 0.0:
                break
            step = fx / dfx
            x -= step
            x = min(max(x, self._xs[0]), self._xs[-1])
            if abs(step) < 1e-14 * max(1.0, abs(x)):
                break
        return math.exp(x)

    def inverse_many(self, ts: np.ndarray) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        out = np.empty_like(ts)
        for i, t in enumerate(ts.ravel()):
            out.ravel()[i] = self.inverse(float(t))
        return out


# ---------------------------------------------------------------------------
# Conjugate results
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SobolevConjugate:
    """Conjugate bundle: the (possibly modified) base function, the monotone
    map hn with its inverse, the conjugate an, and endpoint classifications."""

    base: YoungFunction
    modified: YoungFunction
    nexp: float
    hn: HnTable
    an: YoungFunction
    h_limit: float
    classification_zero: IntegralClass
    classification_inf: IntegralClass

    def an_value(self, t: float) -> float:
        if t <= 0.0:
            return 0.0
        if self.h_limit != INF and t > self.h_limit:
            return INF
        s = self.hn.inverse(t)
        return INF if s == INF else self.modified(s)

    def an_values(self, ts) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        return np.array([self.an_value(float(t)) for t in ts.ravel()]).reshape(ts.shape)


def _an_orders(y: YoungFunction, nexp: float, was_modified: bool):
    """Growth descriptors of the conjugate when the base is a pure power."""
    zero = None
    inf_ = None
    o = y.inf_order
    if o is not None and o.family == "poly" and o.log_exp == 0 and o.loglog_exp == 0:
        q = o.power
        if q < nexp:
            inf_ = GrowthOrder(nexp * q / (nexp - q))
        elif q == nexp:
            inf_ = GrowthOrder(nexp / (nexp - 1.0), family="exp")
        else:
            inf_ = GrowthOrder(0.0, family="jump")
    elif o is not None and o.family in ("exp", "jump"):
        inf_ = GrowthOrder(0.0, family="jump")
    zo = y.zero_order
    if was_modified:
        zero = GrowthOrder(nexp / (nexp - 1.0))
    elif zo is not None and zo.family == "poly" and zo.log_exp == 0 and zo.loglog_exp == 0:
        q0 = zo.power
        if q0 < nexp:
            zero = GrowthOrder(nexp * q0 / (nexp - q0))
    return zero, inf_


def sobolev_conjugate(y: YoungFunction, n: float) -> SobolevConjugate:
    """Build the conjugate with exponent n, applying the near-zero linear
    replacement first whenever the defining integral diverges at the origin."""
    if n < 2:
        raise YoungError("exponent must satisfy n >= 2")
    cz = classify_integral_zero(y, n)
    ci = classify_integral_inf(y, n)
    if cz is IntegralClass.INDETERMINATE or ci is IntegralClass.INDETERMINATE:
        raise IndeterminateError(
            "endpoint classification is indeterminate; supply growth descriptors")
    was_modified = cz is IntegralClass.DIVERGES
    base_mod = modify_near_zero(y, max(2, int(math.ceil(n)))) if was_modified else y
    table = HnTable(base_mod, n,
                    diverges_at_inf=ci is IntegralClass.DIVERGES)
    h_limit = table.limit
    zero_o, inf_o = _an_orders(y, n, was_modified)
    jump = h_limit if h_limit != INF else None

    def an_fn(t: float, _table=table, _mod=base_mod, _lim=h_limit) -> float:
        if t <= 0.0:
            return 0.0
        if _lim != INF and t > _lim:
            return INF
        s = _table.inverse(t)
        return INF if s == INF else _mod(s)

    def an_inv(v: float, _table=table, _mod=base_mod) -> float:
        s = _mod.inverse(v)
        return INF if s == INF else _table.refined(s)

    an = Custom(fn=an_fn, inverse_fn=an_inv, zero=zero_o, inf_=inf_o,
                jump=jump, label=f"conjugate[{n:g}]")
    return SobolevConjugate(
        base=y, modified=base_mod, nexp=float(n), hn=table, an=an,
        h_limit=h_limit, classification_zero=cz, classification_inf=ci)


def sobolev_conjugate_sigma(y: YoungFunction, sigma: float, n: float = 2.0) -> SobolevConjugate:
    """Conjugate with the dimension exponent replaced by sigma >= n >= 2."""
    if n < 2:
        raise YoungError("dimension must satisfy n >= 2")
    if sigma < n:
        raise YoungError("the relative isoperimetric exponent needs sigma >= n")
    return sobolev_conjugate(y, sigma)


def h_n(y: YoungFunction, n: float, s: float) -> float:
    """Accurate single evaluation of H(s); relative error target 1e-8.

    Requires the defining integral to converge at the origin; apply
    modify_near_zero first otherwise.
    """
    if s < 0:
        raise YoungError("H is defined on [0, inf)")
    if s == 0.0:
        return 0.0
    cz = classify_integral_zero(y, n)
    if cz is IntegralClass.DIVERGES:
        raise YoungError("integral diverges at the origin; modify near zero first")
    if cz is IntegralClass.INDETERMINATE:
        raise IndeterminateError("origin behaviour of the integrand is unclear")
    g = _integrand(y, n)
    s_min = min(1e-10, s * 1e-6)
    total, _ = _head_integral(g, s_min)
    x0, x1 = math.log(s_min), math.log(s)
    steps = max(1, int(math.ceil((x1 - x0) / (math.log(10.0) / 16.0))))
    edges = np.linspace(x0, x1, steps + 1)
    for a, b in zip(edges[:-1], edges[1:]):
        inc = _quad_interval(lambda u: g(math.exp(u)) * math.exp(u),
                             float(a), float(b), rel=1e-11)
        if inc == INF:
            return INF
        total += inc
    return total ** ((n - 1.0) / n)


def hat_an(y: YoungFunction, n: float) -> Glued:
    """Two-regime function equal to the base near zero and to a scalar
    multiple of its conjugate near infinity.

    The glue point is the smallest dyadic t >= 1 where the local log-slope of
    the conjugate dominates; the scalar keeps the function continuous, which
    preserves convexity and leaves both equivalence classes untouched.
    """
    conj = sobolev_conjugate(y, n)

    def log_slope(f, t: float, h: float = 1e-5) -> float:
        v0, v1 = f(t), f(t * (1.0 + h))
        if v0 == INF or v1 == INF or v0 <= 0.0 or v1 <= 0.0:
            return INF
        return (math.log(v1) - math.log(v0)) / math.log1p(h)

    t = 1.0
    for _ in range(64):
        ls_base = log_slope(y, t)
        ls_conj = log_slope(conj.an_value, t)
        if ls_conj == INF and conj.h_limit != INF and t > conj.h_limit:
            raise ConstructionError("conjugate jumps to +inf before a glue point")
        if ls_base <= ls_conj * (1 + 1e-9):
            an_t = conj.an_value(t)
            if 0.0 < an_t < INF:
                return Glued(y, conj.an, t, hi_scale=y(t) / an_t)
        t *= 2.0
    raise ConstructionError("no slope-compatible glue point found")

"""Admissibility checkers for the growth conditions behind composition
continuity, plus the closed-form exponent tables they reproduce.

Each check decides an inequality between Young functions up to the usual
equivalence freedom (constants inside arguments), so boundary cases hold.
Parametric families are decided by exponent algebra on (power, log, loglog)
growth triples; everything else falls back to geometric grids whose required
comparison constant must stay stable as the grid span widens, which is what
separates a true asymptotic failure from a missing constant.

The published borderline rows with exponential envelopes at the critical
power are encoded as stated; the verbatim inequality at those rows needs an
extra constant inside the argument (see the notes carried on the verdicts).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .aniso import NDimYoung, ThetaSolver, bar_p, orthotropic_bar, phi_n
from .conjugate import (
    IntegralClass,
    SobolevConjugate,
    classify_integral_inf,
    sobolev_conjugate,
)
from .nemytskii import Envelope, parse_envelope
from .young import INF, IndeterminateError, YoungError, YoungFunction

_TOL = 1e-9


@dataclass(frozen=True)
class ConditionVerdict:
    holds: bool
    worst_margin: float
    witness: Optional[object]
    grid: str
    analytic: bool
    constant: float = 1.0
    indeterminate: bool = False
    note: str = ""

    def __bool__(self):
        return self.holds


# ---------------------------------------------------------------------------
# Growth triples
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Triple:
    power: float
    log: float = 0.0
    loglog: float = 0.0

    def scale(self, c: float) -> "_Triple":
        return _Triple(c * self.power, c * self.log, c * self.loglog)

    def plus(self, other: "_Triple") -> "_Triple":
        return _Triple(self.power + other.power, self.log + other.log,
                       self.loglog + other.loglog)

    def compare(self, other: "_Triple", tol: float = 1e-12):
        """(first nonzero signed gap other - self, slot name); <= means holds."""
        for slot in ("power", "log", "loglog"):
            gap = getattr(other, slot) - getattr(self, slot)
            if abs(gap) > tol:
                return gap, slot
        return 0.0, "equal"


def _inf_triple(y: YoungFunction) -> Optional[_Triple]:
    o = y.inf_order
    if o is None or o.family != "poly":
        return None
    return _Triple(o.power, o.log_exp, o.loglog_exp)


def _h_triple(p: float, alog: float, aloglog: float, n: float) -> Optional[_Triple]:
    """Near-infinity growth of the monotone map H built from A ~ t^p L^a."""
    if p < n:
        return _Triple((n - p) / n, -alog / n, -aloglog / n)
    if p == n:
        if alog > n - 1:
            return None  # convergent regime, handled upstream
        if alog < n - 1:
            return _Triple(0.0, (n - 1 - alog) / n, -aloglog / n)
        return _Triple(0.0, 0.0, (n - 1 - aloglog) / n)
    return None


def _log_of(triple: _Triple) -> _Triple:
    """Leading behaviour of log(1 + X) for X with the given triple."""
    if triple.power > 0:
        return _Triple(0.0, 1.0, 0.0)
    if triple.log > 0:
        return _Triple(0.0, 0.0, 1.0)
    return _Triple(0.0, 0.0, 0.0)  # slower than any log power: negligible


def _env_on(env: Envelope, h: _Triple, n: float):
    """Effect of the envelope composed with H.

    Returns ("triple", t) for power-scale results, or a marker among
    "superpoly", "subpoly" (unbounded but slower than any power),
    "critical" (a polynomial factor with a constant-dependent exponent),
    "polylog_c" (a log power with constant-dependent exponent), or None.
    """
    kind = env.kind
    if kind == "one":
        return ("triple", _Triple(0.0))
    if kind in ("power", "log_power"):
        if kind == "log_power":
            r, gamma, second = 0.0, env.params["r"], "log"
        else:
            r = env.params["r"]
            gamma = env.params.get("gamma", 0.0)
            second = env.params.get("second", "log")
        t = h.scale(r)
        if gamma != 0.0:
            lg = _log_of(h)
            if second == "log":
                t = t.plus(lg.scale(gamma))
            else:
                t = t.plus(_log_of(lg).scale(gamma))
        return ("triple", t)
    if kind in ("exp_power", "exp_exp"):
        a = env.params["a"]
        x = h.scale(a)
        if kind == "exp_power":
            le = env.params.get("log_exp", 0.0)
            if le != 0.0:
                x = x.plus(_log_of(h).scale(le))
        # classify exp(X) by the growth triple of the exponent X
        def classify_exp(xt: _Triple):
            eps = 1e-12
            if xt.power > eps:
                return ("superpoly",)
            if xt.power < -eps:
                return ("triple", _Triple(0.0))
            if xt.log > 1 + eps:
                return ("superpoly",)
            if abs(xt.log - 1.0) <= eps:
                if xt.loglog > eps:
                    return ("superpoly",)
                if xt.loglog < -eps:
                    return ("subpoly",)
                return ("critical",)
            if xt.log > eps:
                return ("subpoly",)
            if xt.log < -eps:
                return ("triple", _Triple(0.0))
            # log slot empty: decide on the loglog slot
            if xt.loglog > 1 + eps:
                return ("subpoly",)
            if abs(xt.loglog - 1.0) <= eps:
                return ("polylog_c",)
            if xt.loglog > eps:
                return ("sublog",)
            return ("triple", _Triple(0.0))

        inner = classify_exp(x)
        if kind == "exp_power":
            return inner
        # exp_exp: exponentiate once more
        if inner[0] == "triple":
            return ("triple", _Triple(0.0))
        if inner[0] == "sublog":
            return ("subpoly",)
        if inner[0] == "polylog_c":
            # a log power with a constant-dependent exponent; its exponential
            # is the published double-exponential borderline
            return ("critical",)
        return ("superpoly",)
    return None


def _ass2_analytic(a: YoungFunction, b: YoungFunction, env: Envelope,
                   n: float) -> Optional[tuple]:
    """(holds, exponent-space margin, note) or None when no rule applies.

    Assumes the divergent regime at infinity (checked by the caller).
    """
    ta = _inf_triple(a)
    tb = _inf_triple(b)
    if ta is None or tb is None:
        return None
    if ta.log != 0.0 and ta.loglog != 0.0:
        return None
    if tb.log != 0.0 and tb.loglog != 0.0:
        return None
    p, q = ta.power, tb.power
    h = _h_triple(p, ta.log, ta.loglog, n)
    if h is None:
        return None
    effect = _env_on(env, h, n)
    if effect is None:
        return None

    if effect[0] == "triple":
        arg = _Triple(1.0).plus(effect[1])
        lhs = arg.scale(q).plus(_Triple(0.0, tb.log, tb.loglog))
        gap, slot = lhs.compare(ta)
        return (gap >= -1e-12, gap, f"exponent algebra, decisive slot {slot}")
    if effect[0] == "superpoly":
        return (False, -INF,
                "envelope composed with the conjugate scale grows faster than any power")
    if effect[0] == "subpoly":
        if q < p - 1e-12:
            return (True, p - q, "sub-polynomial envelope factor, strict power gap")
        return (False, min(p - q, -1e-12),
                "sub-polynomial unbounded factor defeats equal powers")
    if effect[0] == "sublog":
        if q < p - 1e-12:
            return (True, p - q, "sub-logarithmic envelope factor, strict power gap")
        if q > p + 1e-12:
            return (False, p - q, "power excess")
        gap, slot = _Triple(0.0, tb.log, tb.loglog).compare(
            _Triple(0.0, ta.log, ta.loglog))
        return (gap > 1e-12, gap,
                f"sub-logarithmic factor needs a strict {slot} gap")
    if effect[0] == "polylog_c":
        if q < p - 1e-12:
            return (True, p - q, "poly-logarithmic envelope factor, strict power gap")
        if q > p + 1e-12:
            return (False, p - q, "power excess")
        if p == n and abs(ta.log - (n - 1)) <= 1e-12 and env.kind == "exp_power" \
                and env.params["a"] <= n / (n - 1) + 1e-12:
            # published row at the critical correction order: strictly smaller
            # target correction is admissible
            holds = tb.log < n - 1 - 1e-12
            return (holds, (n - 1) - tb.log,
                    "published borderline row (strict correction order)")
        return None  # remaining ties depend on integration constants
    if effect[0] == "critical":
        # the envelope exactly matches the conjugate growth; the published
        # rows admit every strictly smaller target power
        if p == n and q < n - 1e-12:
            return (True, n - q,
                    "published borderline row; the verbatim inequality needs a "
                    "constant inside the argument")
        return (False, min(p - q, -1e-12), "critical envelope with no admissible row")
    return None


# ---------------------------------------------------------------------------
# Grid path with constant-trend detection
# ---------------------------------------------------------------------------

def _min_constant(lhs: np.ndarray, ts: np.ndarray, a: YoungFunction,
                  c_max: float = 1e8) -> Optional[float]:
    """Smallest c >= 1 with lhs <= A(c t) on the grid, or None."""

    def ok(c: float) -> bool:
        for t, l in zip(ts, lhs):
            if l == INF:
                return False
            if l > a(c * float(t)) * (1 + _TOL) + 1e-300:
                return False
        return True

    if not ok(c_max):
        return None
    if ok(1.0):
        return 1.0
    lo, hi = 1.0, c_max
    for _ in range(60):
        mid = math.sqrt(lo * hi)
        if ok(mid):
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1e-6 * hi:
            break
    return hi


def _ass2_grid(a: YoungFunction, b: YoungFunction, env: Envelope, n: float,
               t0: float, conj: Optional[SobolevConjugate] = None,
               points: int = 512, t_hi: float = 1e6):
    conj = conj if conj is not None else sobolev_conjugate(a, n)
    t_lo = max(t0, 1e-6)
    ts = np.geomspace(t_lo, t_hi, points)
    lhs = np.empty(len(ts))
    for i, t in enumerate(ts):
        t = float(t)
        e = env(conj.hn(t))
        lhs[i] = b(t * e) if e != INF else INF
    spans = [t for t in (1e2, 1e4, t_hi) if t > t_lo]
    cs = []
    for span in spans:
        mask = ts <= span * (1 + 1e-12)
        c = _min_constant(lhs[mask], ts[mask], a)
        if c is None:
            worst_i = int(np.argmax([l if l != INF else INF for l in lhs]))
            return ConditionVerdict(
                False, -INF, float(ts[worst_i]),
                grid=f"log grid [{t_lo:g}, {span:g}], {points} points",
                analytic=False, constant=INF,
                note="no admissible constant up to 1e8")
        cs.append(c)
    growing = all(cs[i + 1] > cs[i] * 1.05 for i in range(len(cs) - 1)) \
        and cs[-1] > cs[0] * 1.1 and len(cs) >= 2
    c = cs[-1]
    margin = INF
    witness = None
    for t, l in zip(ts, lhs):
        rhs = a(c * float(t))
        if rhs == INF:
            continue
        m = rhs - (l if l != INF else INF)
        if m < margin:
            margin, witness = m, float(t)
    if growing:
        return ConditionVerdict(
            False, margin, float(ts[-1]),
            grid=f"log grid [{t_lo:g}, {t_hi:g}], {points} points",
            analytic=False, constant=c,
            note="required constant grows with the grid span: asymptotic failure")
    return ConditionVerdict(
        True, margin, witness,
        grid=f"log grid [{t_lo:g}, {t_hi:g}], {points} points",
        analytic=False, constant=c)


def check_inq_ass2(a: YoungFunction, b: YoungFunction, envelope, n: float,
                   t0: float = 0.0,
                   conj: Optional[SobolevConjugate] = None) -> ConditionVerdict:
    """Target-growth condition B(t E(H(t))) <= A(t) near infinity, up to the
    equivalence constant in the argument of A."""
    if n < 2:
        raise YoungError("dimension must satisfy n >= 2")
    env = parse_envelope(envelope)
    ci = classify_integral_inf(a, n)
    if ci is IntegralClass.INDETERMINATE:
        raise IndeterminateError(
            "cannot classify the conjugate integral at infinity; refusing")
    if ci is IntegralClass.CONVERGES:
        return ConditionVerdict(
            True, INF, None, grid="not needed", analytic=True,
            note="vacuous: the source space already embeds into bounded functions")
    ana = _ass2_analytic(a, b, env, n)
    if ana is not None:
        holds, margin, note = ana
        return ConditionVerdict(holds, margin, None,
                                grid="exponent algebra", analytic=True, note=note)
    return _ass2_grid(a, b, env, n, t0, conj=conj)


# ---------------------------------------------------------------------------
# Near-zero pair for extension domains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AssDVerdict:
    inequality: ConditionVerdict
    limsup: ConditionVerdict
    holds: bool
    indeterminate: bool

    def __bool__(self):
        return self.holds


def _zero_power(y: YoungFunction) -> Optional[float]:
    o = y.zero_order
    if o is None or o.log_exp or o.loglog_exp:
        return None
    if o.family in ("poly", "exp_neg_inv"):
        return o.power
    return None


def _assd_analytic(a, b, env, f_young) -> Optional[tuple]:
    """Near-zero inequality decided from zero descriptors; the flat scale of
    exp(-t^-alpha) families sits far below float resolution, so grids cannot
    decide them."""
    if env.kind == "one":
        r = 0.0
    elif env.kind == "power" and env.params.get("gamma", 0.0) == 0.0:
        r = env.params["r"]
    else:
        return None
    fams = {y.zero_order.family if y.zero_order is not None else None
            for y in (a, b, f_young)}
    if None in fams or len(fams) != 1:
        return None
    pa, qb, pf = (_zero_power(y) for y in (a, b, f_young))
    if pa is None or qb is None or pf is None:
        return None
    fam = fams.pop()
    if fam == "exp_neg_inv":
        # A ~ exp(-t^-pa): the composed argument scales like t^{1 + r pa / pf}
        # and the condition compares flatness orders
        lhs_order = qb * (1.0 + r * pa / pf)
        margin = lhs_order - pa
        return (margin >= -1e-12, margin, "flatness-order algebra")
    if fam == "poly":
        lhs_power = qb * (1.0 + r * pa / pf)
        margin = lhs_power - pa
        return (margin >= -1e-12, margin, "near-zero exponent algebra")
    return None


def _assd_grid(a, b, env, f_young, t1: float, points: int = 512):
    cutoffs = (t1 * 1e-3, t1 * 1e-6, t1 * 1e-9)
    cs = []
    master = np.geomspace(t1 * 1e-9, t1, points)
    lhs = np.empty(len(master))
    for i, t in enumerate(master):
        t = float(t)
        at = a(t)
        arg = env(f_young.inverse(at))
        lhs[i] = b(t * arg) if arg != INF else INF
    for cutoff in cutoffs:
        mask = master >= cutoff * (1 - 1e-12)
        c = _min_constant(lhs[mask], master[mask], a)
        if c is None:
            worst = float(master[int(np.argmax(lhs))])
            return ConditionVerdict(False, -INF, worst,
                                    grid=f"log grid near zero, {points} points",
                                    analytic=False, constant=INF)
        cs.append(c)
    growing = all(cs[i + 1] > cs[i] * 1.05 for i in range(len(cs) - 1)) \
        and cs[-1] > cs[0] * 1.1
    c = cs[-1]
    margin, witness = INF, None
    for t, l in zip(master, lhs):
        rhs = a(c * float(t))
        if rhs == INF or l == INF:
            continue
        m = rhs - l
        if m < margin:
            margin, witness = m, float(t)
    return ConditionVerdict(not growing, margin, witness,
                            grid=f"log grid (0, {t1:g}], {points} points",
                            analytic=False, constant=c,
                            note="constant trend over shrinking spans" if growing else "")


def _limsup_analytic(f_young: YoungFunction, a: YoungFunction) -> Optional[tuple]:
    """Bounded F(lambda t)/A(t) as t -> 0, decided from zero descriptors."""
    fo = f_young.zero_order
    ao = a.zero_order
    if fo is None or ao is None:
        return None
    if fo.family == "flat":
        return (True, "numerator vanishes near zero")
    if ao.family == "flat":
        return (False, "denominator vanishes near zero while the numerator does not")
    if fo.family == "poly" and ao.family == "poly":
        if fo.log_exp or ao.log_exp or fo.loglog_exp or ao.loglog_exp:
            return None
        if fo.power >= ao.power - 1e-12:
            return (True, "numerator decays at least as fast")
        return (False, "numerator decays strictly slower")
    if fo.family == "exp_neg_inv" and ao.family == "poly":
        return (True, "numerator is infinitely flat at zero")
    if fo.family == "poly" and ao.family == "exp_neg_inv":
        return (False, "denominator is infinitely flat at zero")
    if fo.family == "exp_neg_inv" and ao.family == "exp_neg_inv":
        if fo.power > ao.power + 1e-12:
            return (True, "numerator flatness order dominates for every lambda")
        return (False, "flatness order too small; large lambda defeats the ratio")
    return None


def _limsup_probe(f_young: YoungFunction, a: YoungFunction,
                  lambdas=(1.0, 10.0, 100.0), lo: float = 1e-8,
                  hi: float = 1e-2, points: int = 64) -> ConditionVerdict:
    ana = _limsup_analytic(f_young, a)
    if ana is not None:
        holds, note = ana
        return ConditionVerdict(holds, 0.0 if holds else -INF, None,
                                grid="zero-growth descriptors", analytic=True,
                                note=note)
    ts = np.geomspace(lo, hi, points)
    worst_bound = 0.0
    for lam in lambdas:
        ratios = []
        for t in ts:
            at = a(float(t))
            ft = f_young(lam * float(t))
            if at == 0.0:
                # below the representable range of the denominator; the trend
                # detector on the remaining window carries the decision
                continue
            ratios.append(ft / at)
        if not ratios:
            return ConditionVerdict(False, 0.0, None, grid="ratio probe near zero",
                                    analytic=False, indeterminate=True,
                                    note="no usable probe points")
        half = len(ratios) // 2
        lo_max = max(ratios[:half]) if ratios[:half] else 0.0
        hi_max = max(ratios[half:]) if ratios[half:] else 0.0
        if not math.isfinite(lo_max) or (hi_max > 0 and lo_max > 100.0 * hi_max):
            return ConditionVerdict(False, -INF, float(ts[0]),
                                    grid="ratio probe near zero", analytic=False,
                                    note=f"growing trend toward zero at lambda={lam:g}")
        if hi_max > 0 and lo_max > 1.5 * hi_max:
            return ConditionVerdict(False, 0.0, float(ts[0]),
                                    grid="ratio probe near zero", analytic=False,
                                    indeterminate=True,
                                    note="non-monotone trend at the window edge")
        worst_bound = max(worst_bound, lo_max, hi_max)
    return ConditionVerdict(True, worst_bound, None, grid="ratio probe near zero",
                            analytic=False, note=f"sup ratio {worst_bound:.6g}")


def check_inq_assD(a: YoungFunction, b: YoungFunction, envelope,
                   f_young: YoungFunction, t1: float = 1.0) -> AssDVerdict:
    """Near-zero condition pair: B(t E(F^{-1}(A(t)))) <= A(t) on (0, t1] and a
    bounded ratio F(lambda t)/A(t) as t -> 0 for lambda in {1, 10, 100}."""
    env = parse_envelope(envelope)
    if f_young.finite_jump is not None:
        raise YoungError("the splitting function must be finite-valued")
    ana = _assd_analytic(a, b, env, f_young)
    if ana is not None:
        holds, margin, note = ana
        ineq = ConditionVerdict(holds, margin, None, grid="exponent algebra",
                                analytic=True, note=note)
    else:
        ineq = _assd_grid(a, b, env, f_young, t1)
    lims = _limsup_probe(f_young, a)
    return AssDVerdict(inequality=ineq, limsup=lims,
                       holds=ineq.holds and lims.holds,
                       indeterminate=ineq.indeterminate or lims.indeterminate)


# ---------------------------------------------------------------------------
# Orthotropic condition
# ---------------------------------------------------------------------------

def check_ortho(a_list: Sequence[YoungFunction], b_list: Sequence[YoungFunction],
                envelope, n: int, t0: float = 0.0) -> ConditionVerdict:
    """Per-component condition B_i(A_i^{-1}(M(t)) E(H(t))) <= M(t) where M is
    the geometric-mean reduction of the components."""
    env = parse_envelope(envelope)
    if len(a_list) != len(b_list) or len(a_list) != n:
        raise YoungError("need n source and n target components")
    bar = orthotropic_bar(a_list)
    ci = classify_integral_inf(bar, n)
    if ci is IntegralClass.INDETERMINATE:
        raise IndeterminateError("cannot classify the reduced function at infinity")
    if ci is IntegralClass.CONVERGES:
        return ConditionVerdict(True, INF, None, grid="not needed", analytic=True,
                                note="vacuous: bounded-function embedding regime")

    ps = [getattr(a, "inf_order", None) for a in a_list]
    qs = [getattr(b, "inf_order", None) for b in b_list]
    pure = all(o is not None and o.family == "poly" and o.log_exp == 0
               and o.loglog_exp == 0 for o in ps + qs)
    if pure and env.kind in ("one", "power", "exp_power"):
        p_i = [o.power for o in ps]
        q_i = [o.power for o in qs]
        pbar = bar_p(p_i)
        if env.kind in ("one", "power"):
            r = env.params.get("r", 0.0) if env.kind == "power" else 0.0
            gamma = env.params.get("gamma", 0.0) if env.kind == "power" else 0.0
            if gamma == 0.0:
                if pbar < n:
                    margins = [pbar * n * pi / (n * pbar + pi * r * (n - pbar)) - qi
                               for pi, qi in zip(p_i, q_i)]
                    worst = min(margins)
                    return ConditionVerdict(worst >= -1e-12, worst,
                                            None if worst >= -1e-12 else
                                            int(np.argmin(margins)),
                                            grid="exponent algebra", analytic=True)
                # pbar == n (the convergent case returned above)
                if r == 0.0:
                    worst = min(pi - qi for pi, qi in zip(p_i, q_i))
                    return ConditionVerdict(worst >= -1e-12, worst, None,
                                            grid="exponent algebra", analytic=True)
                worst = min(pi - qi for pi, qi in zip(p_i, q_i))
                return ConditionVerdict(worst > 1e-12, worst, None,
                                        grid="exponent algebra", analytic=True,
                                        note="critical mean power with a power envelope")
        else:  # exp_power
            aexp = env.params["a"]
            if pbar == n and aexp <= n / (n - 1) + 1e-12:
                worst = min(pi - qi for pi, qi in zip(p_i, q_i))
                return ConditionVerdict(worst > 1e-12, worst, None,
                                        grid="exponent algebra", analytic=True,
                                        note="published borderline row")
            return ConditionVerdict(False, -INF, None, grid="exponent algebra",
                                    analytic=True,
                                    note="envelope too strong for the mean power")

    conj = sobolev_conjugate(bar, n)
    ts = np.geomspace(max(t0, 1e-6), 1e6, 256)
    worst = INF
    witness = None
    consts = []
    for i, (ai, bi) in enumerate(zip(a_list, b_list)):
        lhs = np.empty(len(ts))
        for j, t in enumerate(ts):
            t = float(t)
            m = bar(t)
            e = env(conj.hn(t))
            lhs[j] = bi(ai.inverse(m) * e) if e != INF else INF
        c = _min_constant(lhs, ts, bar)
        if c is None:
            return ConditionVerdict(False, -INF, i, grid="log grid per component",
                                    analytic=False, constant=INF,
                                    note=f"component {i} admits no constant")
        consts.append(c)
        for t, l in zip(ts, lhs):
            rhs = bar(c * float(t))
            if rhs == INF or l == INF:
                continue
            m = rhs - l
            if m < worst:
                worst, witness = m, (i, float(t))
    return ConditionVerdict(True, worst, witness, grid="log grid per component",
                            analytic=False, constant=max(consts))


# ---------------------------------------------------------------------------
# Anisotropic condition via the implicit coupling
# ---------------------------------------------------------------------------

def check_aniso(phi: NDimYoung, psi: NDimYoung, envelope, n: Optional[int] = None,
                with_constant: bool = True) -> ConditionVerdict:
    """Sample Psi(xi) <= c + Phi(xi / E(theta(xi))) over direction-radius
    grids; with the additive constant the verdict requires the grid maximum
    of the excess to stay stable under refinement."""
    env = parse_envelope(envelope)
    n = phi.n if n is None else n
    conj = phi_n(phi, n)
    solver = ThetaSolver(phi, env, n, conj=conj)

    def excess(directions: int, radii: int, r_hi: float):
        from .aniso import _unit_directions
        dirs = _unit_directions(phi.n, directions)
        rs = np.geomspace(1e-2, r_hi, radii)
        worst = 0.0
        worst_xi = None
        rhs_max = 1.0
        for d in dirs:
            for r in rs:
                xi = r * d
                try:
                    theta = solver.solve(xi)
                except YoungError as exc:
                    raise YoungError(f"theta solver failed at xi={xi!r}") from exc
                rhs = conj.an_value(theta)
                lhs = psi(xi)
                if lhs == INF and rhs == INF:
                    continue
                if rhs != INF:
                    rhs_max = max(rhs_max, rhs)
                e = (lhs - rhs) if lhs != INF else INF
                if e > worst:
                    worst, worst_xi = e, xi
        return worst, worst_xi, rhs_max

    c1, xi1, scale1 = excess(32, 64, 1e2)
    c2, xi2, scale2 = excess(32, 96, 4e2)
    noise = 1e-6 * max(1.0, scale1)
    if not with_constant:
        holds = c1 <= noise and c2 <= 1e-6 * max(1.0, scale2)
        return ConditionVerdict(holds, -max(c1, c2), xi2 if not holds else None,
                                grid="direction-radius sampling", analytic=False,
                                constant=0.0)
    stable = math.isfinite(c2) and c2 <= c1 * 1.05 + noise
    return ConditionVerdict(stable, -(c2 - c1), None if stable else xi2,
                            grid="direction-radius sampling (refined x2 span)",
                            analytic=False, constant=c2,
                            note="" if stable else
                            "excess keeps growing with the sampling radius")


# ---------------------------------------------------------------------------
# Zygmund-scale admissibility tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZygmundRow:
    variant: str
    n: float
    p: float
    alpha: float
    envelope_kind: str
    r: float
    gamma: float
    a: float
    log_exp: float
    q_max: Optional[float]
    q_strict: bool
    beta_max: Optional[float]
    beta_strict: bool
    unconditional: bool
    empty: bool
    note: str


def _validate_zygmund_params(p: float, alpha: float):
    if p < 1 or (p == 1 and alpha < 0):
        raise YoungError("need p > 1 with any alpha, or p = 1 with alpha >= 0")


def zygmund_table(p: float, alpha: float, n: float, envelope,
                  variant: str = "log") -> ZygmundRow:
    """Closed-form admissible (q, beta) region for targets on the same
    logarithmic scale, one row per (p, alpha, envelope) input."""
    if variant not in ("log", "loglog"):
        raise YoungError("variant must be log or loglog")
    if n < 2:
        raise YoungError("dimension must satisfy n >= 2")
    _validate_zygmund_params(p, alpha)
    env = parse_envelope(envelope)
    r = env.params.get("r", 0.0)
    gamma = env.params.get("gamma", env.params.get("r", 0.0)
                           if env.kind == "log_power" else 0.0)
    if env.kind == "log_power":
        r = 0.0
    a = env.params.get("a", 0.0)
    log_exp = env.params.get("log_exp", 0.0)
    nprime = n / (n - 1.0)

    def row(**kw):
        base = dict(variant=variant, n=n, p=p, alpha=alpha,
                    envelope_kind=env.kind, r=r, gamma=gamma, a=a,
                    log_exp=log_exp, q_max=None, q_strict=False,
                    beta_max=None, beta_strict=False, unconditional=False,
                    empty=False, note="")
        base.update(kw)
        return ZygmundRow(**base)

    # regimes with a bounded-function embedding: unconditional continuity
    if variant == "log" and (p > n or (p == n and alpha > n - 1)):
        return row(q_max=p, beta_max=alpha, unconditional=True,
                   note="locally Lipschitz suffices; q = p, beta = alpha")
    if variant == "loglog" and p > n:
        return row(q_max=p, beta_max=alpha, unconditional=True,
                   note="locally Lipschitz suffices; q = p, beta = alpha")

    if p < n:
        if env.kind in ("one", "power", "log_power"):
            q_max = n * p / (n + r * (n - p))
            beta_max = n * (alpha * (1 + r) - gamma * p) / (n + r * (n - p))
            return row(q_max=q_max, beta_max=beta_max,
                       note="beta bound applies at q = q_max; q < q_max is free")
        return row(empty=True, note="no admissible targets for this envelope")

    # p == n
    if variant == "log":
        if alpha < n - 1:
            if env.kind == "exp_power" and log_exp == 0.0:
                bound = n / (n - 1 - alpha)
                if a <= bound + 1e-12:
                    return row(q_max=n, q_strict=True,
                               note="q < n, beta unrestricted")
                return row(empty=True, note="envelope beyond the critical exponent")
            if env.kind in ("one", "power") and gamma == 0.0:
                return row(q_max=n, beta_max=alpha * (1 + r) - r * (n - 1),
                           note="beta bound applies at q = n")
            if env.kind == "power" and gamma > 0.0:
                return row(q_max=n, q_strict=True,
                           note="q < n only; the q = n row is stated for "
                                "power envelopes without log correction")
            return row(empty=True, note="no stated row for this envelope")
        # alpha == n - 1
        if env.kind == "exp_exp" and a <= nprime + 1e-12:
            return row(q_max=n, q_strict=True, note="q < n, beta unrestricted")
        if env.kind == "exp_power" and a <= nprime + 1e-12 and log_exp == 0.0:
            return row(q_max=n, beta_max=n - 1, beta_strict=True,
                       note="q = n admissible with beta < n - 1")
        if env.kind in ("one", "power") and gamma == 0.0:
            return row(q_max=n, beta_max=alpha * (1 + r) - r * (n - 1),
                       note="beta bound applies at q = n")
        return row(empty=True, note="no stated row for this envelope")

    # loglog variant, p == n (the defining integral always diverges here)
    if env.kind == "exp_power":
        if a <= nprime + 1e-12 and log_exp <= alpha / (n - 1) + 1e-12:
            return row(q_max=n, q_strict=True, note="q < n, beta unrestricted")
        return row(empty=True, note="envelope beyond the critical exponent")
    if env.kind == "log_power" and gamma > 0.0:
        return row(q_max=n, beta_max=alpha - n * gamma,
                   note="beta bound applies at q = n")
    if env.kind == "one":
        return row(q_max=n, beta_max=alpha, note="identity row")
    if env.kind == "power" and r > 0.0:
        return row(q_max=n, q_strict=True,
                   note="q < n only; no q = n row for power envelopes on the "
                        "double-log scale")
    return row(empty=True, note="no stated row for this envelope")

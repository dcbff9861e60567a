"""Numerical membership tests for the nonlinearity classes.

Each test turns an asymptotic or integral condition into a finite probe:

* mean-value order test -- f(t)/(alpha+1) >= mean of f on [a, t] on a
  geometric grid of a user-chosen window (asymptotic conditions are
  undecidable numerically, so every verdict is window-relative);
* nondecreasing-ratio test -- mean(t) / (t-a)^alpha monotone on the window;
* midpoint/endpoint mean bracket for convex entries;
* h-convexity by seeded random sampling;
* regular-variation index by log-log regression across decades;
* Keller-Osserman integrability of F^{-1/p} by truncated integrals,
  a local decay-exponent fit, and a log-correction exponent fit inside
  the undecidable band around exponent -1;
* N-function axioms and the doubling constant M(2x) <= k M(x).

Verdicts are holds / fails / inconclusive with a witness point and the
signed normalized margin at the witness. Margins within ``eq_snap`` of
zero are snapped to zero so exact equality cases (pure powers at their
frontier order) do not flip on roundoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import defaults
from .defaults import TOLERANCES
from .errors import (
    InvalidH,
    InvalidWindow,
    NonPositivePrimitive,
    NonPositiveValue,
)
from .nonlinearity import (
    Nonlinearity,
    log_primitive_F,
    mean_value,
    primitive_F,
)
from .quadrature import integrate

HOLDS = "holds"
FAILS = "fails"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: Optional[float]
    margin: float
    window: tuple
    detail: str

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "witness": self.witness,
            "margin": self.margin,
            "window": list(self.window),
            "detail": self.detail,
        }


@dataclass(frozen=True)
class RVEstimate:
    sigma_hat: float
    residual: float
    probe_points: tuple
    is_rv: bool

    def to_dict(self) -> dict:
        return {
            "sigma_hat": self.sigma_hat,
            "residual": self.residual,
            "probe_points": list(self.probe_points),
            "is_rv": self.is_rv,
        }


def _snap(margins: np.ndarray, eq_snap: float) -> np.ndarray:
    out = np.asarray(margins, dtype=float).copy()
    out[np.abs(out) <= eq_snap] = 0.0
    return out


# ---------------------------------------------------------------------------
# mean-value (generalized convexity) tests


def gc_alpha_test(
    nl: Nonlinearity,
    alpha: float,
    t_min: float = defaults.GC_WINDOW[0],
    t_max: float = defaults.GC_WINDOW[1],
    n_grid: int = defaults.GC_NGRID,
    eq_snap: float = TOLERANCES["eq_snap"],
) -> Verdict:
    """Does f(t)/(alpha+1) dominate the mean of f over [a, t] on the window?

    Margins are normalized by max(1, f(t)/(alpha+1), |mean|) per point.
    The verdict is window-relative: the underlying condition only needs
    to hold for t large enough.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if n_grid < 16:
        raise ValueError("n_grid must be at least 16")
    if t_min <= nl.a:
        raise InvalidWindow(f"t_min={t_min} must exceed domain start a={nl.a}")
    if not t_min < t_max:
        raise InvalidWindow(f"need t_min < t_max, got [{t_min}, {t_max}]")

    ts = np.geomspace(t_min, t_max, n_grid)
    margins = np.empty(n_grid)
    for i, t in enumerate(ts):
        ft = float(nl.eval(t)) / (alpha + 1.0)
        mv = mean_value(nl, float(t))
        margins[i] = (ft - mv) / max(1.0, abs(ft), abs(mv))
    margins = _snap(margins, eq_snap)
    i = int(np.argmin(margins))
    status = HOLDS if margins[i] >= 0.0 else FAILS
    return Verdict(
        status=status,
        witness=float(ts[i]),
        margin=float(margins[i]),
        window=(t_min, t_max),
        detail=f"window-relative; alpha={alpha:g}, {n_grid} geometric points",
    )


def gc_ratio_monotone_test(
    nl: Nonlinearity,
    alpha: float,
    t_min: float = defaults.GC_WINDOW[0],
    t_max: float = defaults.GC_WINDOW[1],
    n_grid: int = defaults.GC_NGRID,
    monotone_slack: float = TOLERANCES["monotone_slack"],
) -> Verdict:
    """Is R(t) = mean(t) / (t-a)^alpha nondecreasing on the window?

    Consecutive decreases up to monotone_slack * |R| are tolerated
    (quadrature noise on flat ratios).
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if n_grid < 16:
        raise ValueError("n_grid must be at least 16")
    if t_min <= nl.a:
        raise InvalidWindow(f"t_min={t_min} must exceed domain start a={nl.a}")
    if not t_min < t_max:
        raise InvalidWindow(f"need t_min < t_max, got [{t_min}, {t_max}]")

    ts = np.geomspace(t_min, t_max, n_grid)
    R = np.array([mean_value(nl, float(t)) / (t - nl.a) ** alpha for t in ts])
    rises = R[1:] - R[:-1] + monotone_slack * np.abs(R[:-1])
    norm = np.maximum(1.0, np.abs(R[:-1]))
    margins = rises / norm
    i = int(np.argmin(margins))
    status = HOLDS if margins[i] >= 0.0 else FAILS
    return Verdict(
        status=status,
        witness=float(ts[i]),
        margin=float(margins[i]),
        window=(t_min, t_max),
        detail=f"ratio R(t)=mean/(t-a)^{alpha:g}; slack {monotone_slack:g}",
    )


def hh_check(
    nl: Nonlinearity,
    a: float,
    b: float,
    eq_snap: float = TOLERANCES["eq_snap"],
) -> Verdict:
    """Midpoint <= interval mean <= endpoint average (convexity bracket)."""
    if not a < b:
        raise InvalidWindow(f"need a < b, got [{a}, {b}]")
    if a < nl.a:
        raise InvalidWindow(f"a={a} below domain start {nl.a}")
    mean = (primitive_F(nl, b) - primitive_F(nl, a)) / (b - a)
    mid = float(nl.eval(0.5 * (a + b)))
    ends = 0.5 * (float(nl.eval(a)) + float(nl.eval(b)))
    scale = max(1.0, abs(mean), abs(mid), abs(ends))
    margins = _snap(np.array([(mean - mid) / scale, (ends - mean) / scale]), eq_snap)
    m = float(margins.min())
    status = HOLDS if m >= 0.0 else FAILS
    return Verdict(
        status=status,
        witness=0.5 * (a + b) if margins[0] <= margins[1] else b,
        margin=m,
        window=(a, b),
        detail=f"mid={mid:.12g} mean={mean:.12g} ends={ends:.12g}",
    )


def h_convexity_test(
    nl: Nonlinearity,
    h: Callable[[float], float],
    n_pairs: int = 64,
    n_lambda: int = 33,
    seed: int = defaults.DEFAULT_SEED,
    span: float = 10.0,
    eq_snap: float = TOLERANCES["eq_snap"],
) -> Verdict:
    """Sampled check of f(lam x + (1-lam) y) <= h(lam) f(x) + h(1-lam) f(y).

    The premise h(lam) + h(1-lam) >= 1 is verified first on the lambda
    grid and raises InvalidH when violated. Sampling is seeded and the
    seed is recorded in the verdict detail.
    """
    lams = np.linspace(0.0, 1.0, n_lambda)
    hv = np.array([float(h(l)) for l in lams])
    premise = hv + hv[::-1]
    if np.any(premise < 1.0 - 1e-12):
        bad = lams[int(np.argmin(premise))]
        raise InvalidH(f"h(l)+h(1-l) = {premise.min():.6g} < 1 at l={bad:.6g}")

    rng = np.random.default_rng(seed)
    xs = nl.a + span * rng.random(n_pairs)
    ys = nl.a + span * rng.random(n_pairs)
    worst = math.inf
    witness = None
    for x, y in zip(xs, ys):
        fx, fy = float(nl.eval(x)), float(nl.eval(y))
        pts = lams * x + (1.0 - lams) * y
        lhs = np.asarray(nl.eval(pts), dtype=float)
        rhs = hv * fx + hv[::-1] * fy
        margins = _snap((rhs - lhs) / np.maximum(1.0, np.abs(rhs)), eq_snap)
        i = int(np.argmin(margins))
        if margins[i] < worst:
            worst = float(margins[i])
            witness = float(pts[i])
    status = HOLDS if worst >= 0.0 else FAILS
    return Verdict(
        status=status,
        witness=witness,
        margin=worst,
        window=(nl.a, nl.a + span),
        detail=f"{n_pairs} pairs x {n_lambda} lambdas, seed={seed:#x}",
    )


def hconvex_gc_premise(
    h: Callable[[float], float],
    alpha: float,
    quad_tol: float = TOLERANCES["quad_tol"],
) -> Verdict:
    """Does int_0^1 h <= 1/(alpha+1)? (the weight-mass premise)."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    q = integrate(h, 0.0, 1.0, quad_tol)
    bound = 1.0 / (alpha + 1.0)
    margin = (bound - q.value) / max(1.0, bound)
    status = HOLDS if q.value <= bound + quad_tol else FAILS
    return Verdict(
        status=status,
        witness=q.value,
        margin=margin,
        window=(0.0, 1.0),
        detail=f"int h = {q.value:.12g} vs 1/(alpha+1) = {bound:.12g}",
    )


# ---------------------------------------------------------------------------
# regular variation


def _fit_sigma(nl: Nonlinearity, x: float, t_probes: np.ndarray):
    """Least-squares slope of log f(tx) - log f(x) against log t (through 0)."""
    def logf(v):
        if nl.log_eval is not None:
            return float(nl.log_eval(v))
        y = float(nl.eval(v))
        if not y > 0.0:
            raise NonPositiveValue(f"{nl.id}: f({v:g}) = {y:g}, log undefined")
        return math.log(y)

    z = np.log(t_probes)
    with np.errstate(over="ignore", invalid="ignore"):
        y = np.array([logf(t * x) for t in t_probes]) - logf(x)
    if not np.all(np.isfinite(y)):
        return math.inf, math.inf
    slope = float(np.sum(y * z) / np.sum(z * z))
    rms = float(np.sqrt(np.mean((y - slope * z) ** 2)))
    return slope, rms


def rv_index_estimate(
    nl: Nonlinearity,
    x_probes: Sequence[float] = defaults.RV_X_PROBES,
    t_probes: Optional[Sequence[float]] = None,
    rv_fit_tol: float = TOLERANCES["rv_fit_tol"],
) -> RVEstimate:
    """Estimate the regular-variation index from f(tx)/f(x) across decades.

    sigma_hat is the fitted slope at the largest x probe; the residual
    combines the worst per-probe fit RMS with the drift between the two
    largest probes, so slowly varying corrections and genuinely non-RV
    growth both push is_rv to False.
    """
    xs = [float(x) for x in x_probes]
    if sorted(xs) != xs or len(xs) < 2:
        raise ValueError("x_probes must be increasing with at least two entries")
    if any(x <= nl.a for x in xs):
        raise ValueError("x_probes must lie above the domain start")
    if t_probes is None:
        t_probes = np.geomspace(*defaults.RV_T_RANGE, defaults.RV_T_COUNT)
    t_probes = np.asarray(t_probes, dtype=float)

    fits = [_fit_sigma(nl, x, t_probes) for x in xs]
    sigma_hat = fits[-1][0]
    residual = max(r for _, r in fits) + abs(fits[-1][0] - fits[-2][0])
    return RVEstimate(
        sigma_hat=sigma_hat,
        residual=residual,
        probe_points=tuple(xs),
        is_rv=bool(math.isfinite(residual) and residual <= rv_fit_tol),
    )


def rv_mean_ratio(nl: Nonlinearity, x: float) -> float:
    """F(x) / (x f(x)); tends to 1/(sigma+1) for index-sigma entries."""
    if x <= nl.a:
        raise ValueError(f"x={x} must exceed domain start a={nl.a}")
    denom = x * float(nl.eval(x))
    if denom == 0.0:
        raise ZeroDivisionError(f"{nl.id}: x f(x) = 0 at x={x:g}")
    return primitive_F(nl, x) / denom


# ---------------------------------------------------------------------------
# Keller-Osserman integrability and growth


def _finite_horizon(nl: Nonlinearity, t_max: float) -> float:
    """Largest t <= t_max with F(t) and f(t) finite, by bisection in log t."""
    def ok(t):
        try:
            with np.errstate(over="ignore", invalid="ignore"):
                return math.isfinite(log_primitive_F(nl, t)) and math.isfinite(
                    float(nl.eval(t))
                )
        except OverflowError:
            return False

    if ok(t_max):
        return t_max
    lo, hi = 1.0, t_max
    for _ in range(80):
        mid = math.sqrt(lo * hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


def _local_exponent(nl: Nonlinearity, p: float, T: float) -> float:
    """Slope of log F^{-1/p} vs log t on a short geometric stencil at T."""
    ts = T * np.array([0.25, 0.5, 1.0])
    z = np.log(ts)
    y = np.array([-log_primitive_F(nl, t) / p for t in ts])
    return float(np.polyfit(z, y, 1)[0])


def keller_osserman_test(
    nl: Nonlinearity,
    p: float,
    T_levels: Sequence[float] = defaults.KO_LEVELS,
    ko_margin: float = TOLERANCES["ko_margin"],
) -> Verdict:
    """Does int_1^oo F(t)^{-1/p} dt converge?

    Pipeline: truncated integrals I(T) at geometric levels, local decay
    exponent e of F^{-1/p} at the largest usable level, and -- when e
    falls inside the undecidable band around -1 -- a log-correction
    exponent fitted from the per-level increments (F^{-1/p} ~ t^{-1}
    (log t)^{-beta} converges iff beta > 1). A pure-harmonic signature
    (beta ~ 0 to fit precision) stays inconclusive: no finite probe can
    separate it from arbitrarily slow convergence.
    """
    if p <= 1:
        raise ValueError("p must exceed 1")
    levels = sorted(float(T) for T in T_levels)
    if len(levels) < 2 or levels[0] <= 1.0:
        raise ValueError("need at least two levels above 1")

    horizon = _finite_horizon(nl, levels[-1])
    usable = [T for T in levels if T <= horizon]
    if len(usable) < 3:
        usable = list(np.geomspace(min(levels[0], horizon / 4.0), horizon, 4))

    # monotonicity probe and F(1) > 0 precondition
    probes = np.geomspace(1.0, usable[-1], 33)
    fv = np.array([float(nl.eval(t)) for t in probes])
    if np.any(fv[1:] < fv[:-1] * (1.0 - 1e-9)):
        i = int(np.argmin(fv[1:] - fv[:-1]))
        raise ValueError(f"{nl.id}: not nondecreasing near t={probes[i]:.3g}")
    if not log_primitive_F(nl, 1.0) > -math.inf:
        raise NonPositivePrimitive(f"{nl.id}: F(1) <= 0")

    def integrand(t):
        lf = log_primitive_F(nl, t)
        if math.isnan(lf):
            raise NonPositivePrimitive(f"{nl.id}: F({t:g}) <= 0")
        return math.exp(-lf / p)

    I = []
    total = 0.0
    lo = 1.0
    for T in usable:
        seg = integrate(integrand, lo, T, tol=max(1e-12, 1e-10 * (1.0 + total)))
        total += seg.value
        I.append(total)
        lo = T
    J = np.diff(np.concatenate([[0.0], I]))

    e_last = _local_exponent(nl, p, usable[-1])
    e_prev = _local_exponent(nl, p, usable[-2])
    ratios = np.array(
        [
            0.0 if J[k] <= defaults.KO_TINY_INCREMENT else J[k] / max(J[k - 1], 1e-300)
            for k in range(1, len(J))
        ]
    )
    cauchy = bool(np.all(ratios <= defaults.KO_CAUCHY_RATIO))

    detail = (
        f"levels={[f'{T:.3g}' for T in usable]} I={[f'{v:.6g}' for v in I]} "
        f"J_ratios={[f'{r:.3g}' for r in ratios]} e_last={e_last:.4f} e_prev={e_prev:.4f}"
    )
    window = (usable[0], usable[-1])

    if e_last < -1.0 - ko_margin:
        status = HOLDS if cauchy else INCONCLUSIVE
        margin = (-1.0 - ko_margin) - e_last
        if not cauchy:
            detail += "; increments not geometrically decreasing"
        return Verdict(status, usable[-1], margin, window, detail)
    if e_last > -1.0 + ko_margin:
        return Verdict(FAILS, usable[-1], (-1.0 + ko_margin) - e_last, window, detail)

    # inside the band: fit J_k ~ (log T_k)^{-beta} over level midpoints
    mids = np.sqrt(np.concatenate([[1.0], usable[:-1]]) * np.asarray(usable))
    good = J > defaults.KO_TINY_INCREMENT
    if np.sum(good) >= 2:
        beta_hat = -float(
            np.polyfit(np.log(np.log(mids[good])), np.log(J[good]), 1)[0]
        )
    else:
        beta_hat = math.nan
    detail += f" beta_hat={beta_hat:.4f} (band refinement)"
    if defaults.KO_LOG_DETECT <= beta_hat <= 1.0 - defaults.KO_LOG_MARGIN:
        return Verdict(FAILS, usable[-1], beta_hat - 1.0, window, detail)
    if beta_hat >= 1.0 + defaults.KO_LOG_MARGIN:
        return Verdict(HOLDS, usable[-1], beta_hat - 1.0, window, detail)
    return Verdict(INCONCLUSIVE, usable[-1], -abs(e_last + 1.0), window, detail)


def growth_check(
    nl: Nonlinearity,
    p: float,
    T_levels: Sequence[float] = defaults.KO_LEVELS,
    growth_floor: float = TOLERANCES["growth_floor"],
) -> Verdict:
    """Is F(T)/T^p increasing across levels and above the floor at the top?

    Worked in log scale so overflow-prone entries can be probed up to
    their finiteness horizon.
    """
    if p <= 1:
        raise ValueError("p must exceed 1")
    levels = sorted(float(T) for T in T_levels)
    horizon = _finite_horizon(nl, levels[-1])
    usable = [T for T in levels if T <= horizon]
    if len(usable) < 2:
        usable = list(np.geomspace(min(levels[0], horizon / 4.0), horizon, 4))

    logr = np.array([log_primitive_F(nl, T) - p * math.log(T) for T in usable])
    increases = np.diff(logr)
    inc_ok = bool(np.all(increases > 0.0))
    floor_ok = bool(logr[-1] > math.log(growth_floor))
    margin = min(float(increases.min()), float(logr[-1] - math.log(growth_floor)))
    seq = ", ".join(f"{T:.3g}: {r:.6g}" for T, r in zip(usable, np.exp(np.minimum(logr, 700))))
    status = HOLDS if (inc_ok and floor_ok) else FAILS
    return Verdict(
        status=status,
        witness=usable[-1],
        margin=margin,
        window=(usable[0], usable[-1]),
        detail=f"F(T)/T^p: {seq}; floor {growth_floor:g}",
    )


# ---------------------------------------------------------------------------
# N-functions and the doubling condition


def n_function_check(
    M: Nonlinearity,
    seed: int = defaults.DEFAULT_SEED,
    eq_snap: float = TOLERANCES["eq_snap"],
) -> Verdict:
    """Probe the N-function axioms.

    Checks M(0) = 0; positivity on the large-x probes (N-functions from
    eventually-positive densities may vanish near 0, e.g. t (log t)^+);
    M(x)/x -> 0 at 0 and -> oo at oo on decade probes; and midpoint
    convexity on seeded random pairs.
    """
    failures = []
    witness = None
    margin = 0.0

    m0 = abs(float(M.eval(0.0)))
    if m0 > 1e-12:
        failures.append(f"M(0)={m0:g}")
        witness, margin = 0.0, -m0

    horizon = _finite_horizon(M, 1e6)
    up = [x for x in (1e2, 1e4, 1e6) if x <= horizon] or [horizon / 2.0]
    for x in up:
        v = float(M.eval(x))
        if not v > 0.0:
            failures.append(f"M({x:g})={v:g} not positive")
            witness, margin = x, -1.0

    down = np.array([1e-2, 1e-4, 1e-6])
    r0 = np.array([float(M.eval(x)) / x for x in down])
    if not (np.all(np.diff(r0) <= 1e-12) and r0[-1] <= 1e-2 * r0[0] + 1e-15):
        failures.append(f"M(x)/x near 0: {r0.tolist()}")
        witness, margin = float(down[-1]), -float(r0[-1])

    r1 = np.array([float(M.eval(x)) / x for x in up])
    if len(r1) >= 2 and not (np.all(np.diff(r1) > 0.0) and r1[-1] >= 2.0 * r1[0]):
        failures.append(f"M(x)/x at infinity: {r1.tolist()}")
        witness, margin = float(up[-1]), float(r1[-1] - 2.0 * r1[0])

    rng = np.random.default_rng(seed)
    hi = min(1e3, horizon)
    xs = hi * rng.random(64)
    ys = hi * rng.random(64)
    mids = 0.5 * (xs + ys)
    lhs = np.asarray(M.eval(mids), dtype=float)
    rhs = 0.5 * (np.asarray(M.eval(xs), dtype=float) + np.asarray(M.eval(ys), dtype=float))
    conv = _snap((rhs - lhs) / np.maximum(1.0, np.abs(rhs)), eq_snap)
    if conv.min() < 0.0:
        i = int(np.argmin(conv))
        failures.append(f"midpoint convexity at x={mids[i]:g}")
        witness, margin = float(mids[i]), float(conv.min())

    if failures:
        return Verdict(FAILS, witness, min(margin, -eq_snap), (0.0, float(up[-1])),
                       "; ".join(failures) + f"; seed={seed:#x}")
    return Verdict(HOLDS, None, 0.0, (0.0, float(up[-1])),
                   f"all axioms pass on probes; seed={seed:#x}")


def delta2_estimate(
    M: Nonlinearity,
    x0: float = 1.0,
    x_max: float = 1e6,
    n_grid: int = 129,
) -> tuple[float, Verdict]:
    """Estimate the doubling constant k = sup M(2x)/M(x) on [x0, x_max].

    Holds when the running max stabilizes (last-decade increase <= 1%);
    fails when the per-decade maxima keep growing (doubling violated).
    A doubling constant below 2 is impossible for N-functions, so
    k_hat < 2 is flagged as an evaluation anomaly in the detail.
    """
    horizon = _finite_horizon(M, 2.0 * x_max) / 2.0
    hi = min(x_max, horizon)
    xs = np.geomspace(x0, hi, n_grid)
    ratios = np.empty(n_grid)
    for i, x in enumerate(xs):
        mx = float(M.eval(x))
        if not mx > 0.0:
            raise NonPositiveValue(f"{M.id}: M({x:g}) = {mx:g} not positive")
        ratios[i] = float(M.eval(2.0 * x)) / mx
    runmax = np.maximum.accumulate(ratios)
    k_hat = float(runmax[-1])

    i_dec = int(np.searchsorted(xs, xs[-1] / 10.0))
    last_decade_inc = (runmax[-1] - runmax[i_dec]) / max(runmax[i_dec], 1e-300)

    n_dec = max(2, int(round(math.log10(hi / x0))) + 1)
    bounds = np.geomspace(x0, hi, n_dec + 1)
    dec_max = [
        float(ratios[(xs >= lo) & (xs <= up)].max()) for lo, up in zip(bounds[:-1], bounds[1:])
    ]
    grows = all(b > a * 1.01 for a, b in zip(dec_max[:-1], dec_max[1:]))

    detail = (
        f"running max stabilization: last-decade increase {last_decade_inc:.3g}; "
        f"decade maxima {[f'{v:.4g}' for v in dec_max]}"
    )
    if k_hat < 2.0:
        detail += f"; anomaly: k_hat={k_hat:.4g} < 2 (impossible for N-functions)"
    if grows:
        status, margin = FAILS, -float(dec_max[-1] / dec_max[0] - 1.0)
    elif last_decade_inc <= 0.01:
        status, margin = HOLDS, float(0.01 - last_decade_inc)
    else:
        status, margin = INCONCLUSIVE, -float(last_decade_inc)
    return k_hat, Verdict(status, float(xs[-1]), margin, (x0, float(xs[-1])), detail)


def delta2_gc_probe(
    M: Nonlinearity,
    k: float,
    alphas: Sequence[float],
    t_min: float = defaults.GC_WINDOW[0],
    t_max: float = defaults.GC_WINDOW[1],
) -> list[tuple[float, Verdict]]:
    """Empirical mean-value class frontier for a doubling N-function.

    Runs the order-alpha test for each candidate order; measures the
    frontier rather than assuming the theoretical doubling bound
    alpha < 2 log2 k, which overshoots already for M = x^2/2.
    """
    if k < 2.0:
        raise ValueError("doubling constant k must be >= 2")
    return [(float(al), gc_alpha_test(M, float(al), t_min, t_max)) for al in alphas]

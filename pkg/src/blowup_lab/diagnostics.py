"""Energy and auxiliary functionals along a run, and their inequality checks.

Quantities per accepted step (one TraceRecord each):

    E  = int ( |grad u|^p / p - Fhat(u) ) dx      (energy; nonincreasing)
    h  = (1/2) ||u||_2^2
    H  = int_0^t h(s) ds                          (trapezoid on the trace)
    ut_l2sq = || (u_{k+1} - u_k) / dt ||_2^2      (forward difference)

with Fhat(u) = sign(u) F(|u|), the odd primitive of the reaction.

The checks quantify, as signed normalized margins over the recorded
trajectory: the dissipation identity E(t) = E(0) - int ||u_t||^2; energy
monotonicity; the reaction/primitive/gradient sandwich that holds for
mean-value class reactions of order alpha with C = 1/(1+alpha); the
three h/H inequalities behind the blow-up argument (h' >= (1/C) int
||u_t||^2, h' >= 2 (1/(Cp) - p + 1) lambda h, and (1/(2C)) (H'(t) -
H'(0))^2 <= H H''); the exponential necessity bound h(t) <= (h(0) +
E(0) + C0) e^t; and concavity of G = H^{-q}. Derivatives of trace
quantities come from centered differences of the trace itself, so the
inequalities are tested as statements about the trajectory actually
computed, not about re-evaluated right-hand sides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional, Sequence

import numpy as np

from . import kernels
from .classtests import FAILS, HOLDS, INCONCLUSIVE, Verdict
from .defaults import CONC_MAX_POINTS, CONC_Q_SWEEP, TOLERANCES
from .errors import EmptyTrace, InsufficientTrace, PreconditionNotMet
from .grid import Field, make_grid, make_initial
from .nonlinearity import Nonlinearity, primitive_F, primitive_values

if TYPE_CHECKING:
    from .pde import ProblemSpec

TRACE_COLUMNS = ("t", "dt", "E", "h", "H", "mean_u", "l2", "linf", "ut_l2sq", "grad_p_norm")


@dataclass(frozen=True)
class TraceRecord:
    t: float
    dt: float
    E: float
    h: float
    H: float
    mean_u: float
    l2: float
    linf: float
    ut_l2sq: float
    grad_p_norm: float


def F_hat(nl: Nonlinearity, u: float) -> float:
    """Odd extension sign(u) F(|u|) of the reaction primitive."""
    return math.copysign(1.0, u) * primitive_F(nl, abs(u)) if u != 0.0 else 0.0


def F_hat_values(nl: Nonlinearity, values: np.ndarray) -> np.ndarray:
    # overflow to inf is acceptable here: an escaped state shows up as an
    # infinite energy, and the run is terminated by the blow-up checks
    with np.errstate(over="ignore", invalid="ignore"):
        return np.sign(values) * primitive_values(nl, np.abs(values))


def energy(u: Field, spec) -> float:
    """int ( |grad u|^p / p - Fhat(u) ) dx with the solver's quadratures."""
    dx = u.grid.dx
    grad_term = kernels.grad_p_norm(u.values, dx, spec.p) / spec.p
    fhat_term = float(np.sum(F_hat_values(spec.nl, u.values))) * dx
    return grad_term - fhat_term


class TraceBuilder:
    """Builds TraceRecords for a run, accumulating H by trapezoid."""

    def __init__(self, spec):
        self.spec = spec
        self._H = 0.0
        self._prev_t = None
        self._prev_h = None

    def make(self, t: float, dt: float, u: Field, ut_l2sq: float) -> TraceRecord:
        dx = u.grid.dx
        integral, l2, linf = kernels.field_stats(u.values, dx)
        h = 0.5 * l2 * l2
        if self._prev_t is not None:
            self._H += 0.5 * (h + self._prev_h) * (t - self._prev_t)
        self._prev_t, self._prev_h = t, h
        gp = kernels.grad_p_norm(u.values, dx, self.spec.p)
        fhat = float(np.sum(F_hat_values(self.spec.nl, u.values))) * dx
        return TraceRecord(
            t=t,
            dt=dt,
            E=gp / self.spec.p - fhat,
            h=h,
            H=self._H,
            mean_u=integral / (u.grid.b - u.grid.a),
            l2=l2,
            linf=linf,
            ut_l2sq=ut_l2sq,
            grad_p_norm=gp,
        )


# ---------------------------------------------------------------------------
# trace serialization (17 significant digits, reproducible byte for byte)


def write_trace_csv(records: Sequence[TraceRecord], path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(TRACE_COLUMNS) + "\n")
        for r in records:
            fh.write(",".join(f"{getattr(r, c):.17g}" for c in TRACE_COLUMNS) + "\n")


def read_trace_csv(path) -> list[TraceRecord]:
    with open(path, "r") as fh:
        header = fh.readline().strip().split(",")
        if tuple(header) != TRACE_COLUMNS:
            raise ValueError(f"unexpected trace header {header}")
        out = []
        for line in fh:
            vals = [float(v) for v in line.split(",")]
            out.append(TraceRecord(**dict(zip(TRACE_COLUMNS, vals))))
    return out


def _columns(trace: Sequence[TraceRecord]) -> dict:
    if not trace:
        raise EmptyTrace("empty trace")
    return {c: np.array([getattr(r, c) for r in trace]) for c in TRACE_COLUMNS}


def truncate_trace(trace: Sequence[TraceRecord], t_cut: float) -> list[TraceRecord]:
    return [r for r in trace if r.t <= t_cut]


# ---------------------------------------------------------------------------
# identity and monotonicity checks


def dissipation_cumsum(trace: Sequence[TraceRecord]) -> np.ndarray:
    c = _columns(trace)
    return np.cumsum(c["ut_l2sq"] * c["dt"])


def mean_conservation_max(trace: Sequence[TraceRecord]) -> float:
    """max_k |mean u| / max(1, |u|_inf): the conserved-integral drift."""
    c = _columns(trace)
    return float(np.max(np.abs(c["mean_u"]) / np.maximum(1.0, c["linf"])))


def energy_identity_residual(trace: Sequence[TraceRecord]) -> float:
    """max_k |E(t_k) - E(0) + sum_{j<=k} ||u_t||^2 dt_j|, scale-normalized.

    The normalization is max(1 + |E(0)|, |E(t_k)|, cum_k): on tame runs
    this reduces to the 1 + |E(0)| of the identity itself; on blow-up
    runs, where E sweeps many orders of magnitude before detection, the
    identity is tracked relative to the exploding energy scale (a fixed
    absolute accuracy there is not attainable by any explicit scheme at
    finite step count).
    """
    c = _columns(trace)
    cum = dissipation_cumsum(trace)
    raw = np.abs(c["E"] - c["E"][0] + cum)
    scale = np.maximum.reduce(
        [np.full_like(raw, 1.0 + abs(c["E"][0])), np.abs(c["E"]), cum]
    )
    return float(np.max(raw / scale))


def energy_monotone_check(
    trace: Sequence[TraceRecord],
    energy_slack: float = TOLERANCES["energy_slack"],
) -> Verdict:
    """E(t_{k+1}) <= E(t_k) + slack * (1 + |E(t_k)|) for every step."""
    c = _columns(trace)
    E = c["E"]
    if len(E) < 2:
        return Verdict(HOLDS, None, 0.0, (c["t"][0], c["t"][-1]), "single record")
    slack = energy_slack * (1.0 + np.abs(E[:-1]))
    margins = (E[:-1] + slack - E[1:]) / np.maximum(1.0, np.abs(E[:-1]))
    i = int(np.argmin(margins))
    status = HOLDS if margins[i] >= 0.0 else FAILS
    return Verdict(
        status=status,
        witness=float(c["t"][i + 1]),
        margin=float(margins[i]),
        window=(float(c["t"][0]), float(c["t"][-1])),
        detail=f"slack {energy_slack:g} per step over {len(E) - 1} steps",
    )


def ftinegmod_check(u: Field, spec, alpha: float) -> tuple[float, float]:
    """Margins of  C int u f(|u|) >= int Fhat(u) >= (1/p) int |grad u|^p.

    Returned as signed values (left, right); the left inequality needs
    the reaction in the order-alpha mean-value class, the right one is
    E(u) <= 0 rearranged. C = 1/(1+alpha).
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    C = 1.0 / (1.0 + alpha)
    dx = u.grid.dx
    uf = float(np.sum(u.values * np.asarray(spec.nl.eval(np.abs(u.values)), dtype=float))) * dx
    fhat = float(np.sum(F_hat_values(spec.nl, u.values))) * dx
    grad = kernels.grad_p_norm(u.values, dx, spec.p) / spec.p
    return (C * uf - fhat, fhat - grad)


# ---------------------------------------------------------------------------
# the h/H inequality suite


@dataclass
class LemmaReport:
    ft5_residual_max: float
    ft6_margin_min: float
    ft7_margin_min: float
    ft8_margin_min: float
    ftinegmod_margin_min: float
    necessity_margin_min: float
    g_concavity: Verdict
    C: float
    lam: float
    q: float
    coefficients: dict

    def to_dict(self) -> dict:
        out = {
            "ft5_residual_max": self.ft5_residual_max,
            "ft6_margin_min": self.ft6_margin_min,
            "ft7_margin_min": self.ft7_margin_min,
            "ft8_margin_min": self.ft8_margin_min,
            "ftinegmod_margin_min": self.ftinegmod_margin_min,
            "necessity_margin_min": self.necessity_margin_min,
            "g_concavity": self.g_concavity.to_dict(),
            "C": self.C,
            "lambda": self.lam,
            "q": self.q,
            "coefficients": self.coefficients,
        }
        return out


def _centered_derivative(t: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Second-order one-sided-weighted centered differences, interior points."""
    dp = t[2:] - t[1:-1]
    dm = t[1:-1] - t[:-2]
    return (dm / (dp + dm)) * (y[2:] - y[1:-1]) / dp + (dp / (dp + dm)) * (
        y[1:-1] - y[:-2]
    ) / dm


def lemma_checks(trace: Sequence[TraceRecord], spec, alpha: float) -> LemmaReport:
    """Margins of the dissipation identity and the h/H inequalities.

    h' and H'' come from centered differences of the recorded trace
    (H' = h exactly, by the trapezoid bookkeeping). The ft7 coefficient
    1/(Cp) - p + 1 is reported with its sign: it is positive for p = 2
    with alpha > 1 but turns negative for larger p near the admissible
    order threshold, in which case the corresponding bound is reported
    as computed rather than asserted.
    """
    if not trace:
        raise EmptyTrace("empty trace")
    if len(trace) < 5:
        raise InsufficientTrace(f"need at least 5 records, got {len(trace)}")
    if alpha <= 0:
        raise ValueError("alpha must be positive")

    c = _columns(trace)
    t, h, H, E, gradp = c["t"], c["h"], c["H"], c["E"], c["grad_p_norm"]
    cum = dissipation_cumsum(trace)
    C = 1.0 / (1.0 + alpha)
    p = spec.p
    lam = math.pi**2 / (spec.grid.b - spec.grid.a) ** 2
    coeff = 1.0 / (C * p) - p + 1.0

    hp = _centered_derivative(t, h)
    mid = slice(1, -1)

    rhs6 = cum[mid] / C
    ft6 = (hp - rhs6) / np.maximum.reduce([np.ones_like(hp), np.abs(hp), rhs6])

    rhs7 = 2.0 * coeff * lam * h[mid]
    ft7 = (hp - rhs7) / np.maximum.reduce([np.ones_like(hp), np.abs(hp), np.abs(rhs7)])

    lhs8 = (0.5 / C) * (h[mid] - h[0]) ** 2
    rhs8 = H[mid] * hp
    ft8 = (rhs8 - lhs8) / np.maximum(1.0, np.abs(rhs8))

    # C int u f - int Fhat, reconstructed through the exact discrete
    # identity h' = -int |grad u|^p + int u f (zero-mean state kills the
    # nonlocal term); zero for pure powers at matching order
    uf = hp + gradp[mid]
    fhat = gradp[mid] / p - E[mid]
    ineg = (C * uf - fhat) / np.maximum.reduce(
        [np.ones_like(uf), np.abs(C * uf), np.abs(fhat)]
    )

    necessity = necessity_bound_check(trace)
    gconc = g_concavity_sweep(trace)

    return LemmaReport(
        ft5_residual_max=energy_identity_residual(trace),
        ft6_margin_min=float(ft6.min()),
        ft7_margin_min=float(ft7.min()),
        ft8_margin_min=float(ft8.min()),
        ftinegmod_margin_min=float(ineg.min()),
        necessity_margin_min=necessity.margin,
        g_concavity=gconc,
        C=C,
        lam=lam,
        q=gconc.to_dict().get("witness") or CONC_Q_SWEEP[0],
        coefficients={
            "coeff_ft7": coeff,
            "E0": float(E[0]),
            "alpha": float(alpha),
            "p": float(p),
            "h0": float(h[0]),
        },
    )


def necessity_bound_check(
    trace: Sequence[TraceRecord],
    C0: Optional[float] = None,
) -> Verdict:
    """h(t) <= (h(0) + E(0) + C0) e^t whenever E stays above -C0.

    With the default C0 = max(0, -min_k E) the hypothesis holds by
    construction; an explicit C0 that E dips below raises
    PreconditionNotMet.
    """
    c = _columns(trace)
    t, h, E = c["t"], c["h"], c["E"]
    if C0 is None:
        C0 = max(0.0, -float(E.min()))
    elif float(E.min()) < -C0 * (1.0 + 1e-12) - 1e-300:
        raise PreconditionNotMet(
            f"E dips to {E.min():g}, below -C0 = {-C0:g}"
        )
    bound = (h[0] + E[0] + C0) * np.exp(t)
    margins = (bound * (1.0 + 1e-9) - h) / np.maximum(1.0, np.abs(bound))
    i = int(np.argmin(margins))
    status = HOLDS if margins[i] >= 0.0 else FAILS
    return Verdict(
        status=status,
        witness=float(t[i]),
        margin=float(margins[i]),
        window=(float(t[0]), float(t[-1])),
        detail=f"C0={C0:g}, prefactor h0+E0+C0={h[0] + E[0] + C0:g}",
    )


def g_concavity_probe(
    trace: Sequence[TraceRecord],
    q: float = CONC_Q_SWEEP[0],
    t0: float = 0.0,
    conc_slack: float = TOLERANCES["conc_slack"],
    max_points: int = CONC_MAX_POINTS,
) -> Verdict:
    """Is G = H^{-q} concave on the trace beyond t0?

    Centered second differences on a subsample of at most max_points
    records: consecutive accepted steps are far too close in time for
    second differences to clear roundoff, so the probe works on a
    uniformly thinned copy of the trace.
    """
    if q <= 0:
        raise ValueError("q must be positive")
    pts = [(r.t, r.H) for r in trace if r.t >= t0 and r.H > 0.0]
    if len(pts) < 5:
        raise InsufficientTrace(f"only {len(pts)} usable records beyond t0={t0:g}")
    idx = np.unique(np.linspace(0, len(pts) - 1, min(max_points, len(pts))).astype(int))
    t = np.array([pts[i][0] for i in idx])
    G = np.array([pts[i][1] for i in idx]) ** (-q)

    dp = t[2:] - t[1:-1]
    dm = t[1:-1] - t[:-2]
    second = 2.0 * (dm * G[2:] - (dp + dm) * G[1:-1] + dp * G[:-2]) / (dp * dm * (dp + dm))
    margins = (conc_slack * np.abs(G[1:-1]) - second) / np.maximum(1e-300, np.abs(G[1:-1]))
    i = int(np.argmin(margins))
    status = HOLDS if margins[i] >= 0.0 else FAILS
    return Verdict(
        status=status,
        witness=float(q),
        margin=float(margins[i]),
        window=(float(t[0]), float(t[-1])),
        detail=f"q={q:g}, t0={t0:g}, {len(t)} subsampled points, slack {conc_slack:g}",
    )


def g_concavity_sweep(
    trace: Sequence[TraceRecord],
    t0_fractions: Sequence[float] = (0.6, 0.7, 0.8),
    qs: Sequence[float] = CONC_Q_SWEEP,
) -> Verdict:
    """Probe with the default q and start point, sweeping both if it fails.

    The transient before blow-up asymptotics dominate H makes G = H^{-q}
    convex near t = 0, so the start point matters as much as q; the
    returned verdict records the first succeeding pair.
    """
    if not trace:
        raise EmptyTrace("empty trace")
    last = None
    for frac in t0_fractions:
        for q in qs:
            try:
                v = g_concavity_probe(trace, q=q, t0=frac * trace[-1].t)
            except InsufficientTrace:
                continue
            if v.status == HOLDS:
                return v
            last = v
    if last is None:
        # fewer than 5 records with H > 0 anywhere (e.g. the zero run)
        t_end = trace[-1].t
        return Verdict(
            INCONCLUSIVE, None, 0.0, (trace[0].t, t_end), "H not positive; probe inapplicable"
        )
    return last


# ---------------------------------------------------------------------------
# grid-refinement study of the detected blow-up time


def blowup_time_refine(spec, bracket: tuple, levels: int = 3) -> list[float]:
    """Rerun the scenario at n, 2n, 4n, ... and return detected t* per level.

    step_tol is scaled by (n_base/n)^2 per level so the time-integration
    error shrinks at the same second-order rate as the spatial error;
    without that the detected times stall at the time-accuracy floor
    instead of converging. Shrinking gaps between successive estimates
    certify the blow-up as a feature of the continuum problem rather
    than of one grid.
    """
    from .pde import BLEW_UP, ProblemSpec, advance  # deferred: pde imports this module

    if bracket is None:
        raise ValueError("refinement needs a blow-up bracket from a prior run")
    if spec.u0_profile is None:
        raise ValueError("refinement needs the initial-profile descriptor")
    if levels < 2:
        raise ValueError("need at least 2 levels")

    out = []
    for lvl in range(levels):
        factor = 2**lvl
        grid = make_grid(spec.grid.a, spec.grid.b, spec.grid.n * factor)
        u0 = make_initial(spec.u0_profile, grid)
        sub = ProblemSpec(
            p=spec.p,
            nl=spec.nl,
            grid=grid,
            u0=u0,
            t_end=spec.t_end,
            cfl=spec.cfl,
            blowup_linf=spec.blowup_linf,
            dt_min=spec.dt_min,
            step_tol=spec.step_tol / (factor * factor),
            u0_profile=spec.u0_profile,
        )
        outcome = advance(sub)
        if outcome.status != BLEW_UP:
            raise PreconditionNotMet(
                f"level n={grid.n}: outcome {outcome.status!r}, expected blow-up"
            )
        lo, hi = outcome.blowup_bracket
        out.append(0.5 * (lo + hi))
    return out

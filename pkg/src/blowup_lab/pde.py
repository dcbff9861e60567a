"""Conservative finite-volume solver for the nonlocal p-Laplacian problem.

Semidiscrete form on a uniform cell-centered grid over [a, b]:

    du_i/dt = (Phi_{i+1/2} - Phi_{i-1/2}) / dx + f(|u_i|) - mean_j f(|u_j|)

with face flux Phi = |g|^{p-2} g of the face gradient g and exactly zero
flux on the two boundary faces, which enforces the zero-flux boundary
condition for every p >= 2 and makes the discrete mean of the diffusion
term telescope to roundoff. The reaction subtracts its own discrete mean
computed with the same cell quadrature, so the discrete integral of u is
conserved along the evolution.

Time integration is explicit Euler with step-doubling error control: a
full step is compared against two half steps and accepted when they
agree to step_tol * (1 + |u|_inf) in the sup norm; the two-half-step
result is kept. The candidate step starts from a diffusion/reaction
stability bound and may grow by at most a fixed factor per accepted
step, which avoids rejection churn near blow-up where the stability
bound keeps overshooting the accuracy-limited step.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import diagnostics, kernels
from .defaults import (
    DT_GROWTH,
    GROWTH_FACTOR,
    GROWTH_WINDOW,
    MAX_REJECTIONS,
    TOLERANCES,
)
from .errors import EvaluationFailure, StallDetected
from .grid import Field, Grid1D
from .nonlinearity import Nonlinearity

_EPS0 = 1e-30  # division guard in the step-size bound


@dataclass
class ProblemSpec:
    p: float
    nl: Nonlinearity
    grid: Grid1D
    u0: Field
    t_end: float
    cfl: float = 0.45
    blowup_linf: float = TOLERANCES["blowup_linf"]
    dt_min: float = TOLERANCES["dt_min"]
    step_tol: float = TOLERANCES["step_tol"]
    u0_profile: Optional[dict] = None  # kept for grid-refinement reruns

    def __post_init__(self):
        if self.p < 2.0:
            raise ValueError(f"p must be >= 2, got {self.p}")
        if not 0.0 < self.cfl < 1.0:
            raise ValueError(f"cfl must lie in (0, 1), got {self.cfl}")
        if self.t_end <= 0.0:
            raise ValueError("t_end must be positive")
        if self.nl.a != 0.0:
            raise ValueError(
                f"reaction {self.nl.id!r} starts at a={self.nl.a}; the solver "
                "evaluates f(|u|), which requires domain start 0"
            )
        integral, _, linf = kernels.field_stats(self.u0.values, self.grid.dx)
        mean = integral / (self.grid.b - self.grid.a)
        if abs(mean) > 1e-13 * max(1.0, linf):
            raise ValueError(f"initial data must have zero mean, got {mean:g}")


@dataclass
class SolverState:
    t: float
    u: Field
    dt_last: float = 0.0
    steps_accepted: int = 0
    steps_rejected: int = 0


@dataclass
class RunOutcome:
    status: str  # completed | blew_up | stalled
    t_final: float
    blowup_bracket: Optional[tuple] = None
    trace_ref: str = ""

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "t_final": self.t_final,
            "blowup_bracket": list(self.blowup_bracket) if self.blowup_bracket else None,
            "trace_ref": self.trace_ref,
        }


COMPLETED = "completed"
BLEW_UP = "blew_up"
STALLED = "stalled"


# ---------------------------------------------------------------------------
# spatial operators (Field-level wrappers over the kernels)


def face_gradients(u: Field) -> np.ndarray:
    """All n+1 face gradients; boundary faces are exactly zero."""
    g = np.zeros(u.grid.n + 1)
    g[1:-1] = (u.values[1:] - u.values[:-1]) / u.grid.dx
    return g


def p_laplacian_apply(u: Field, p: float) -> Field:
    out = np.empty_like(u.values)
    kernels.plap_apply(u.values, u.grid.dx, p, out)
    return Field(u.grid, out)


def _reaction_values(values: np.ndarray, nl: Nonlinearity) -> np.ndarray:
    # overflow here is a legitimate signal (handled by finiteness checks)
    with np.errstate(over="ignore", invalid="ignore"):
        fu = np.ascontiguousarray(nl.eval(np.abs(values)), dtype=np.float64)
    return fu


def nonlocal_reaction(u: Field, nl: Nonlinearity) -> Field:
    fu = _reaction_values(u.values, nl)
    if not kernels.all_finite(fu):
        raise EvaluationFailure(f"{nl.id}: non-finite reaction value")
    return Field(u.grid, fu - np.sum(fu) / len(fu))


def rhs(u: Field, spec: ProblemSpec) -> Field:
    """Diffusion plus mean-free reaction; discrete mean zero to roundoff."""
    fu = _reaction_values(u.values, spec.nl)
    if not kernels.all_finite(fu):
        raise EvaluationFailure(f"{spec.nl.id}: non-finite reaction value")
    out = np.empty_like(u.values)
    kernels.rhs_into(u.values, fu, u.grid.dx, spec.p, out)
    return Field(u.grid, out)


def stable_dt(u: Field, spec: ProblemSpec, linf: Optional[float] = None) -> float:
    """cfl * min(diffusive bound, reaction Lipschitz bound).

    The diffusive bound linearizes the flux: dx^2 / (2 (p-1) |g|^{p-2})
    at the steepest face; the reaction bound is 1/L with L the largest
    secant slope of f over [0, |u|_inf].
    """
    dx = u.grid.dx
    gmax = kernels.max_abs_face_grad(u.values, dx)
    if spec.p == 2.0:
        dcoef = 1.0
    else:
        dcoef = (spec.p - 1.0) * gmax ** (spec.p - 2.0)
    dt_diff = dx * dx / (2.0 * dcoef + _EPS0)

    if linf is None:
        linf = kernels.field_stats(u.values, dx)[2]
    lips = 0.0
    if linf > 0.0:
        v = np.linspace(0.0, linf, 33)
        with np.errstate(over="ignore", invalid="ignore"):
            fv = np.asarray(spec.nl.eval(v), dtype=float)
        if not np.all(np.isfinite(fv)):
            raise EvaluationFailure(f"{spec.nl.id}: non-finite on [0, {linf:g}]")
        lips = float(np.max(np.abs(np.diff(fv)))) / (v[1] - v[0])
    dt_react = 1.0 / (lips + _EPS0)
    return spec.cfl * min(dt_diff, dt_react)


# ---------------------------------------------------------------------------
# time stepping


def step(state: SolverState, spec: ProblemSpec) -> SolverState:
    """One accepted step of explicit Euler with step-doubling control.

    Raises StallDetected when dt falls below spec.dt_min, and
    EvaluationFailure when the reaction is non-finite at the accepted
    state itself (value escape; the caller classifies it as blow-up).
    """
    u = state.u.values
    dx = spec.grid.dx
    p = spec.p
    linf = kernels.field_stats(u, dx)[2]
    tol = spec.step_tol * (1.0 + linf)

    dt = stable_dt(state.u, spec, linf)
    if state.dt_last > 0.0:
        dt = min(dt, DT_GROWTH * state.dt_last)
    dt = min(dt, spec.t_end - state.t)

    fu0 = _reaction_values(u, spec.nl)
    if not kernels.all_finite(fu0):
        raise EvaluationFailure(f"{spec.nl.id}: non-finite reaction at t={state.t:g}")

    u_full = np.empty_like(u)
    u_half = np.empty_like(u)
    u_two = np.empty_like(u)
    rejected = 0
    for _ in range(MAX_REJECTIONS + 1):
        if dt < spec.dt_min:
            raise StallDetected(dt)
        kernels.euler_step_into(u, fu0, dx, p, dt, u_full)
        kernels.euler_step_into(u, fu0, dx, p, 0.5 * dt, u_half)
        if kernels.all_finite(u_full) and kernels.all_finite(u_half):
            fu1 = _reaction_values(u_half, spec.nl)
            if kernels.all_finite(fu1):
                kernels.euler_step_into(u_half, fu1, dx, p, 0.5 * dt, u_two)
                if kernels.all_finite(u_two) and kernels.max_abs_diff(u_full, u_two) <= tol:
                    return SolverState(
                        t=state.t + dt,
                        u=Field(spec.grid, u_two.copy()),
                        dt_last=dt,
                        steps_accepted=state.steps_accepted + 1,
                        steps_rejected=state.steps_rejected + rejected,
                    )
        dt *= 0.5
        rejected += 1
    raise StallDetected(dt)


def advance(
    spec: ProblemSpec,
    observers: Sequence[Callable[[diagnostics.TraceRecord], None]] = (),
) -> RunOutcome:
    """Run to t_end, blow-up, or stall; observers see every accepted step.

    Blow-up is declared on (a) a non-finite state, (b) |u|_inf crossing
    spec.blowup_linf, or (c) dt collapsing below dt_min while |u|_inf
    grew tenfold over the trailing window of accepted steps; a collapse
    without growth is a stall. The bracket encloses the detection time
    within two accepted steps.
    """
    state = SolverState(t=0.0, u=spec.u0.copy())
    builder = diagnostics.TraceBuilder(spec)
    rec = builder.make(0.0, 0.0, state.u, 0.0)
    for obs in observers:
        obs(rec)
    ring = deque([rec.linf], maxlen=GROWTH_WINDOW + 1)

    status = COMPLETED
    bracket = None
    t_tiny = 1e-15 * max(1.0, spec.t_end)
    while spec.t_end - state.t > t_tiny:
        t_prev = state.t
        u_prev = state.u.values
        try:
            state = step(state, spec)
        except StallDetected:
            grew = (
                len(ring) == ring.maxlen
                and ring[-1] >= GROWTH_FACTOR * max(ring[0], 1e-300)
            )
            if grew:
                status = BLEW_UP
                width = 2.0 * max(state.dt_last, spec.dt_min)
                bracket = (state.t, state.t + width)
            else:
                status = STALLED
            break
        except EvaluationFailure:
            status = BLEW_UP
            bracket = (max(0.0, state.t - state.dt_last), state.t)
            break

        ut_l2sq = kernels.diff_l2sq(state.u.values, u_prev, 1.0 / state.dt_last, spec.grid.dx)
        rec = builder.make(state.t, state.dt_last, state.u, ut_l2sq)
        for obs in observers:
            obs(rec)
        ring.append(rec.linf)
        if not math.isfinite(rec.linf) or rec.linf > spec.blowup_linf:
            status = BLEW_UP
            bracket = (t_prev, state.t)
            break

    return RunOutcome(status=status, t_final=state.t, blowup_bracket=bracket)

"""Deterministic adaptive Simpson quadrature.

Recursive bisection with the classical |S2 - S1|/15 error estimate and
Richardson-corrected leaf values. No randomness, no global state:
identical inputs give bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .defaults import QUAD_DEPTH_CAP, TOLERANCES
from .errors import NonFiniteEvaluation

# roundoff floor added to every error estimate; keeps the estimate honest
# for integrands Simpson resolves exactly
_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float  # absolute; > tol flags a depth-cap truncation
    evaluations: int


def integrate(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = TOLERANCES["quad_tol"],
    depth_cap: int = QUAD_DEPTH_CAP,
) -> QuadResult:
    """Integrate f over [lo, hi] to absolute tolerance tol.

    Returns a QuadResult; if the recursion depth cap is reached the value
    is still returned, flagged by error_estimate > tol.

    Raises:
        ValueError: lo > hi or tol <= 0.
        NonFiniteEvaluation: f returned nan/inf inside [lo, hi].
    """
    if lo > hi:
        raise ValueError(f"need lo <= hi, got [{lo}, {hi}]")
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if lo == hi:
        return QuadResult(0.0, 0.0, 0)

    count = [0]

    def ev(x: float) -> float:
        count[0] += 1
        y = f(x)
        if not math.isfinite(y):
            raise NonFiniteEvaluation(f"integrand returned {y!r} at x={x!r}")
        return float(y)

    def simpson(fa: float, fm: float, fb: float, width: float) -> float:
        return width / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm = ev(lm)
        frm = ev(rm)
        left = simpson(fa, flm, fm, m - a)
        right = simpson(fm, frm, fb, b - m)
        delta = (left + right - whole) / 15.0
        if depth >= depth_cap or abs(delta) <= tol:
            return left + right + delta, abs(delta)
        lv, le = recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)
        rv, re = recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)
        return lv + rv, le + re

    fa = ev(lo)
    fb = ev(hi)
    fm = ev(0.5 * (lo + hi))
    whole = simpson(fa, fm, fb, hi - lo)
    value, err = recurse(lo, hi, fa, fm, fb, whole, tol, 0)
    err += _EPS * (1.0 + abs(value))
    return QuadResult(value, err, count[0])

"""Catalog of scalar nonlinearities f: [a, oo) -> [0, oo).

Entries are addressed by id strings of the form ``family:key=value:...``,
e.g. ``power:sigma=2`` or ``orlicz:xp:p=3``. Every entry is numpy-aware
(accepts scalars or arrays) and carries, when available in closed form,
its primitive F(x) = int_a^x f(s) ds normalized so that F(a) = 0, plus
log-scale evaluators for probes far beyond double overflow of f itself.

Entries without a closed-form primitive fall back to adaptive quadrature
memoized on a per-instance ladder of (x, F(x)) anchors, so repeated calls
with increasing x only pay for the increment.
"""

from __future__ import annotations

import math
import threading
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .defaults import TOLERANCES
from .errors import DegenerateInterval, UnknownCatalogId
from .quadrature import integrate

_LADDER_REL_TOL = 1e-13


@dataclass
class Nonlinearity:
    """A catalog nonlinearity; immutable after construction.

    The primitive ladder is the only mutable state and is guarded by a
    per-instance lock, so instances are safe to share across threads.
    """

    id: str
    a: float
    eval: Callable
    primitive: Optional[Callable] = None
    log_eval: Optional[Callable] = None
    log_primitive: Optional[Callable] = None
    params: dict = field(default_factory=dict)
    notes: str = ""
    _ladder: list = field(default_factory=list, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __call__(self, x):
        return self.eval(x)


def primitive_F(nl: Nonlinearity, x: float) -> float:
    """F(x) = int_a^x f(s) ds, closed form when registered, else quadrature.

    Quadrature results are memoized on an increasing ladder of anchors so
    a sweep of increasing x costs amortized one increment per call.
    """
    x = float(x)
    if x < nl.a - 1e-12 * max(1.0, abs(nl.a)):
        raise ValueError(f"{nl.id}: x={x} below domain start a={nl.a}")
    if x <= nl.a:
        return 0.0
    if nl.primitive is not None:
        return float(nl.primitive(x))
    with nl._lock:
        return _ladder_value(nl, x)


def _ladder_value(nl: Nonlinearity, x: float) -> float:
    ladder = nl._ladder
    i = bisect_right(ladder, (x, math.inf))
    if i > 0 and ladder[i - 1][0] == x:
        return ladder[i - 1][1]
    base_x, base_f = ladder[i - 1] if i > 0 else (nl.a, 0.0)
    value = base_f + _increment(nl, base_x, base_f, x)
    if not ladder or x > ladder[-1][0]:
        ladder.append((x, value))
    return value


def _increment(nl: Nonlinearity, x0: float, f0: float, x1: float) -> float:
    # split wide spans into geometric segments so the absolute quadrature
    # tolerance can track the running magnitude of F
    quad_tol = TOLERANCES["quad_tol"]
    total = 0.0
    lo = x0
    while lo < x1:
        hi = min(x1, max(lo * 8.0, lo + 1.0))
        coarse = abs(hi - lo) * abs(float(nl.eval(0.5 * (lo + hi))))
        tol = max(quad_tol, _LADDER_REL_TOL * (abs(f0 + total) + coarse))
        total += integrate(nl.eval, lo, hi, tol).value
        lo = hi
    return total


def primitive_values(nl: Nonlinearity, x: np.ndarray) -> np.ndarray:
    """Vectorized F over an array of points >= a."""
    if nl.primitive is not None:
        return np.asarray(nl.primitive(np.asarray(x, dtype=float)), dtype=float)
    return np.array([primitive_F(nl, v) for v in np.asarray(x, dtype=float).ravel()]).reshape(
        np.shape(x)
    )


def log_primitive_F(nl: Nonlinearity, x: float) -> float:
    """log F(x), stable far beyond overflow when a log form is registered."""
    if nl.log_primitive is not None:
        return float(nl.log_primitive(x))
    value = primitive_F(nl, x)
    if value <= 0.0:
        return -math.inf
    return math.log(value)


def mean_value(nl: Nonlinearity, t: float) -> float:
    """Mean of f over [a, t]: F(t) / (t - a)."""
    span = t - nl.a
    if span < 1e-12:
        raise DegenerateInterval(f"t - a = {span:g} too small for a mean value")
    return primitive_F(nl, t) / span


# ---------------------------------------------------------------------------
# catalog builders


def _power(sigma=2.0):
    if sigma <= 0:
        raise UnknownCatalogId(f"power: need sigma > 0, got {sigma}")
    s1 = sigma + 1.0
    return dict(
        a=0.0,
        eval=lambda x: x**sigma,
        primitive=lambda x: x**s1 / s1,
        log_eval=lambda x: sigma * np.log(x),
        log_primitive=lambda x: s1 * np.log(x) - math.log(s1),
        notes=f"pure power x^{sigma:g}",
    )


def _const():
    return dict(
        a=0.0,
        eval=lambda x: 0.0 * x + 1.0,
        primitive=lambda x: 1.0 * x,
        notes="constant 1; belongs to no mean-value class of any positive order",
    )


def _zero():
    return dict(
        a=0.0,
        eval=lambda x: 0.0 * x,
        primitive=lambda x: 0.0 * x,
        notes="identically zero reaction (pure diffusion runs)",
    )


def _xsinx():
    return dict(
        a=0.0,
        eval=lambda x: (x + np.sin(x)) * x,
        primitive=lambda x: x**3 / 3.0 + np.sin(x) - x * np.cos(x),
        notes="(x + sin x) x: order-1 mean-value class member that is not convex",
    )


def _powlog(sigma=2.0):
    if sigma <= 0:
        raise UnknownCatalogId(f"powlog: need sigma > 0, got {sigma}")
    s1 = sigma + 1.0
    c = 1.0 / (s1 * s1)

    def F(x):
        return x**s1 * (np.log(x) / s1 - c) + c

    return dict(
        a=1.0,
        eval=lambda x: x**sigma * np.log(x),
        primitive=F,
        log_eval=lambda x: sigma * np.log(x) + np.log(np.log(x)),
        notes=f"x^{sigma:g} log x on [1, oo); regularly varying of index {sigma:g}",
    )


def _powloglog(sigma=2.0):
    if sigma <= 0:
        raise UnknownCatalogId(f"powloglog: need sigma > 0, got {sigma}")
    return dict(
        a=math.e,
        eval=lambda x: x**sigma * np.log(np.log(x)),
        log_eval=lambda x: sigma * np.log(x) + np.log(np.log(np.log(x))),
        notes=f"x^{sigma:g} log log x on [e, oo); no closed-form primitive",
    )


def _exp():
    return dict(
        a=0.0,
        eval=lambda x: np.exp(x),
        primitive=lambda x: np.expm1(x),
        log_eval=lambda x: x + 0.0,
        log_primitive=lambda x: x + np.log1p(-np.exp(-x)),
        notes="exp(x): not regularly varying, satisfies every mean-value class",
    )


def _plog(p=3.0):
    if p <= 1:
        raise UnknownCatalogId(f"plog: need p > 1, got {p}")
    return dict(
        a=0.0,
        eval=lambda t: p * t ** (p - 1.0) * np.log1p(t) + t**p / (t + 1.0),
        primitive=lambda t: t**p * np.log1p(t),
        log_primitive=lambda t: p * np.log(t) + np.log(np.log1p(t)),
        notes=f"derivative of t^{p:g} log(t+1); F/t^{p:g} grows like log t",
    )


def _orlicz_xp(p=2.0):
    if p < 1:
        raise UnknownCatalogId(f"orlicz:xp: need p >= 1, got {p}")
    p1 = p + 1.0
    return dict(
        a=0.0,
        eval=lambda x: x**p / p,
        primitive=lambda x: x**p1 / (p * p1),
        log_eval=lambda x: p * np.log(x) - math.log(p),
        notes=f"N-function x^{p:g}/{p:g}; doubling constant 2^{p:g}",
    )


def _orlicz_tlogt():
    def f(t):
        t = np.asarray(t, dtype=float)
        out = np.where(t > 1.0, t * np.log(np.maximum(t, 1.0)), 0.0)
        return out if out.ndim else float(out)

    def F(t):
        t = np.asarray(t, dtype=float)
        tc = np.maximum(t, 1.0)
        out = np.where(t > 1.0, tc * tc * (0.5 * np.log(tc) - 0.25) + 0.25, 0.0)
        return out if out.ndim else float(out)

    return dict(
        a=0.0,
        eval=f,
        primitive=F,
        notes="t (log t)^+: doubling N-function, vanishes on [0, 1]",
    )


def _orlicz_expm1x():
    return dict(
        a=0.0,
        eval=lambda x: np.expm1(x) - x,
        primitive=lambda x: np.expm1(x) - 0.5 * x * x - x,
        notes="exp(x) - x - 1: N-function violating the doubling condition",
    )


def _glog(alpha=2.0):
    if alpha <= 0:
        raise UnknownCatalogId(f"glog: need alpha > 0, got {alpha}")
    parts = dict(
        a=0.0,
        eval=lambda x: np.log1p(x) * x**alpha,
        log_eval=lambda x: np.log(np.log1p(x)) + alpha * np.log(x),
        notes=f"log(1+x) x^{alpha:g}: nondecreasing factor times power",
    )
    if alpha == 2.0:
        parts["primitive"] = (
            lambda x: x**3 * np.log1p(x) / 3.0
            - x**3 / 9.0
            + x**2 / 6.0
            - x / 3.0
            + np.log1p(x) / 3.0
        )
    return parts


_FAMILIES = {
    "power": (_power, ("sigma",)),
    "const": (_const, ()),
    "zero": (_zero, ()),
    "xsinx": (_xsinx, ()),
    "powlog": (_powlog, ("sigma",)),
    "powloglog": (_powloglog, ("sigma",)),
    "exp": (_exp, ()),
    "plog": (_plog, ("p",)),
    "orlicz:xp": (_orlicz_xp, ("p",)),
    "orlicz:tlogt": (_orlicz_tlogt, ()),
    "orlicz:expm1x": (_orlicz_expm1x, ()),
    "glog": (_glog, ("alpha",)),
}


def _fmt(v: float) -> str:
    return f"{v:g}"


def resolve(catalog_id: str) -> Nonlinearity:
    """Build the catalog entry addressed by an id string.

    Ids are ``family`` or ``family:key=value:...``; the optional key
    ``scale`` multiplies the entry by a nonnegative constant.
    """
    tokens = [t for t in catalog_id.strip().split(":") if t]
    if not tokens:
        raise UnknownCatalogId("empty catalog id")
    family = None
    rest = []
    for cut in range(len(tokens), 0, -1):
        cand = ":".join(tokens[:cut])
        if cand in _FAMILIES:
            family = cand
            rest = tokens[cut:]
            break
    if family is None:
        raise UnknownCatalogId(f"unknown catalog id {catalog_id!r}")

    builder, known = _FAMILIES[family]
    params = {}
    for tok in rest:
        if "=" not in tok:
            raise UnknownCatalogId(f"{catalog_id!r}: expected key=value, got {tok!r}")
        key, _, sval = tok.partition("=")
        try:
            params[key] = float(sval)
        except ValueError:
            raise UnknownCatalogId(f"{catalog_id!r}: non-numeric value {sval!r}") from None

    scale = params.pop("scale", 1.0)
    if scale < 0:
        raise UnknownCatalogId(f"{catalog_id!r}: scale must be >= 0")
    unknown = set(params) - set(known)
    if unknown:
        raise UnknownCatalogId(f"{catalog_id!r}: unknown parameters {sorted(unknown)}")

    parts = builder(**params)
    canonical = family + "".join(
        f":{k}={_fmt(params[k])}" for k in known if k in params
    )
    if scale != 1.0:
        canonical += f":scale={_fmt(scale)}"
        parts = _scaled(parts, scale)
        params["scale"] = scale

    return Nonlinearity(
        id=canonical,
        a=parts["a"],
        eval=parts["eval"],
        primitive=parts.get("primitive"),
        log_eval=parts.get("log_eval"),
        log_primitive=parts.get("log_primitive"),
        params=params,
        notes=parts["notes"],
    )


def _scaled(parts: dict, scale: float) -> dict:
    f0, F0 = parts["eval"], parts.get("primitive")
    out = dict(parts)
    out["eval"] = lambda x: scale * f0(x)
    out["primitive"] = (lambda x: scale * F0(x)) if F0 is not None else None
    if scale > 0:
        lshift = math.log(scale)
        le, lp = parts.get("log_eval"), parts.get("log_primitive")
        out["log_eval"] = (lambda x: le(x) + lshift) if le is not None else None
        out["log_primitive"] = (lambda x: lp(x) + lshift) if lp is not None else None
    else:
        out["log_eval"] = None
        out["log_primitive"] = None
    return out


def catalog_entries() -> list[tuple[str, str]]:
    """(example id, notes) pairs for every registered family."""
    out = []
    for family, (builder, known) in sorted(_FAMILIES.items()):
        parts = builder()
        example = family + "".join(
            f":{k}={_fmt(builder.__defaults__[i])}" for i, k in enumerate(known)
        )
        out.append((example, parts["notes"]))
    return out


def validate_entry(nl: Nonlinearity, x_max: float = 50.0, n_probe: int = 64) -> None:
    """Check nonnegativity, finiteness, and primitive consistency on a probe grid.

    Raises AssertionError on violation; used by the test battery.
    """
    lo = nl.a
    xs = lo + np.geomspace(1e-6, max(x_max - lo, 1e-5), n_probe)
    vals = np.asarray(nl.eval(xs), dtype=float)
    assert np.all(np.isfinite(vals)), f"{nl.id}: non-finite values on probe grid"
    assert np.all(vals >= -1e-12 * np.maximum(1.0, np.abs(vals))), f"{nl.id}: negative values"
    if nl.primitive is not None:
        for x in xs[:: max(1, n_probe // 8)]:
            exact = primitive_F(nl, float(x))
            quad = integrate(nl.eval, nl.a, float(x), TOLERANCES["quad_tol"]).value
            assert abs(exact - quad) <= 1e-8 * (1.0 + abs(exact)), (
                f"{nl.id}: primitive mismatch at x={x}: {exact} vs {quad}"
            )

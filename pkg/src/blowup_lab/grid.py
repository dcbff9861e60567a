"""Uniform 1-D cell-centered grid, fields, and initial profiles."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EvaluationFailure, InvalidGrid


@dataclass(frozen=True)
class Grid1D:
    a: float
    b: float
    n: int

    @property
    def dx(self) -> float:
        return (self.b - self.a) / self.n

    def cell_centers(self) -> np.ndarray:
        return self.a + (np.arange(self.n) + 0.5) * self.dx


def make_grid(a: float, b: float, n: int) -> Grid1D:
    if not b > a:
        raise InvalidGrid(f"need b > a, got [{a}, {b}]")
    if n < 8:
        raise InvalidGrid(f"need at least 8 cells, got {n}")
    return Grid1D(float(a), float(b), int(n))


@dataclass
class Field:
    """Cell averages of u on a Grid1D; values are float64 and owned."""

    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        self.values = np.ascontiguousarray(self.values, dtype=np.float64)
        if self.values.shape != (self.grid.n,):
            raise ValueError(f"expected {self.grid.n} values, got {self.values.shape}")

    def copy(self) -> "Field":
        return Field(self.grid, self.values.copy())


# profile descriptors: {"kind": ..., numeric params...}; strings like
# "cosine:1" or "cosine-mix:40,0.5" are positional shorthand
_PROFILE_PARAMS = {
    "cosine": ("k",),
    "cosine-mix": ("amplitude", "beta"),
    "bump": ("center", "width"),
    "constant": ("c",),
    "zero": (),
    "custom": ("values",),
}


def parse_profile(descriptor) -> dict:
    if isinstance(descriptor, dict):
        spec = dict(descriptor)
        kind = spec.pop("kind", None)
        if kind not in _PROFILE_PARAMS:
            raise EvaluationFailure(f"unknown profile kind {kind!r}")
        unknown = set(spec) - set(_PROFILE_PARAMS[kind])
        if unknown:
            raise EvaluationFailure(f"profile {kind!r}: unknown keys {sorted(unknown)}")
        return {"kind": kind, **spec}
    if not isinstance(descriptor, str):
        raise EvaluationFailure(f"profile descriptor must be str or dict, got {descriptor!r}")
    kind, _, rest = descriptor.partition(":")
    if kind not in _PROFILE_PARAMS:
        raise EvaluationFailure(f"unknown profile kind {kind!r}")
    names = _PROFILE_PARAMS[kind]
    if not rest:
        return {"kind": kind}
    vals = rest.split(",")
    if len(vals) > len(names):
        raise EvaluationFailure(f"profile {descriptor!r}: too many parameters")
    return {"kind": kind, **{k: float(v) for k, v in zip(names, vals)}}


def _sample(profile: dict, x: np.ndarray, grid: Grid1D) -> np.ndarray:
    kind = profile["kind"]
    xh = (x - grid.a) / (grid.b - grid.a)
    if kind == "cosine":
        return np.cos(profile.get("k", 1.0) * np.pi * xh)
    if kind == "cosine-mix":
        A = profile.get("amplitude", 1.0)
        beta = profile.get("beta", 0.5)
        return A * (np.cos(np.pi * xh) + beta * np.cos(2.0 * np.pi * xh))
    if kind == "bump":
        c = profile.get("center", 0.5 * (grid.a + grid.b))
        w = profile.get("width", 0.1 * (grid.b - grid.a))
        return np.exp(-(((x - c) / w) ** 2))
    if kind == "constant":
        return np.full_like(x, profile.get("c", 1.0))
    if kind == "zero":
        return np.zeros_like(x)
    if kind == "custom":
        vals = np.asarray(profile["values"], dtype=float)
        if vals.shape != x.shape:
            raise EvaluationFailure(
                f"custom profile: {vals.shape} values for {x.shape} cells"
            )
        return vals
    raise EvaluationFailure(f"unknown profile kind {kind!r}")


def make_initial(descriptor, grid: Grid1D) -> Field:
    """Sample a profile at cell centers and project out the discrete mean.

    The projection is applied twice so the discrete integral of the
    result is zero down to the square of roundoff.
    """
    profile = parse_profile(descriptor)
    vals = _sample(profile, grid.cell_centers(), grid)
    if not np.all(np.isfinite(vals)):
        raise EvaluationFailure(f"profile {profile['kind']!r} produced non-finite values")
    vals = vals - vals.mean()
    vals = vals - vals.mean()
    return Field(grid, vals)

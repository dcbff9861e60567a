"""Run configuration, scenario resolution, and manifests.

Configs are strict JSON: unknown keys anywhere are errors, including
inside the ``tolerances`` block (a silently misspelled tolerance would
invalidate a verification run). A config round-trips losslessly through
to_dict/from_dict.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from . import kernels
from .defaults import DEFAULT_SEED, TOLERANCES
from .errors import ConfigError, EvaluationFailure, UnknownCatalogId
from .grid import make_grid, make_initial, parse_profile
from .nonlinearity import resolve
from .pde import ProblemSpec

_REQUIRED = ("scenario", "p", "nonlinearity", "alpha", "grid", "u0", "t_end", "cfl")
_OPTIONAL = ("tolerances", "seed", "output_dir")


@dataclass
class RunConfig:
    scenario: str
    p: float
    nonlinearity: str
    alpha: float
    grid: tuple  # (a, b, n)
    u0: dict  # normalized profile descriptor
    t_end: float
    cfl: float
    tolerances: dict = field(default_factory=dict)
    seed: int = DEFAULT_SEED
    output_dir: Optional[str] = None

    @classmethod
    def from_dict(cls, obj: dict) -> "RunConfig":
        if not isinstance(obj, dict):
            raise ConfigError(f"config must be a JSON object, got {type(obj).__name__}")
        unknown = set(obj) - set(_REQUIRED) - set(_OPTIONAL)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        missing = [k for k in _REQUIRED if k not in obj]
        if missing:
            raise ConfigError(f"missing config keys: {missing}")

        try:
            grid = obj["grid"]
            if not (isinstance(grid, (list, tuple)) and len(grid) == 3):
                raise ConfigError(f"grid must be [a, b, n], got {grid!r}")
            u0 = parse_profile(obj["u0"])
            tolerances = obj.get("tolerances", {})
            if not isinstance(tolerances, dict):
                raise ConfigError("tolerances must be an object")
            bad = set(tolerances) - set(TOLERANCES)
            if bad:
                raise ConfigError(f"unknown tolerance keys: {sorted(bad)}")
            return cls(
                scenario=str(obj["scenario"]),
                p=float(obj["p"]),
                nonlinearity=str(obj["nonlinearity"]),
                alpha=float(obj["alpha"]),
                grid=(float(grid[0]), float(grid[1]), int(grid[2])),
                u0=u0,
                t_end=float(obj["t_end"]),
                cfl=float(obj["cfl"]),
                tolerances={k: float(v) for k, v in tolerances.items()},
                seed=int(obj.get("seed", DEFAULT_SEED)),
                output_dir=obj.get("output_dir"),
            )
        except (TypeError, ValueError, EvaluationFailure) as exc:
            raise ConfigError(str(exc)) from exc

    def to_dict(self) -> dict:
        out = {
            "scenario": self.scenario,
            "p": self.p,
            "nonlinearity": self.nonlinearity,
            "alpha": self.alpha,
            "grid": list(self.grid),
            "u0": dict(self.u0),
            "t_end": self.t_end,
            "cfl": self.cfl,
        }
        if self.tolerances:
            out["tolerances"] = dict(self.tolerances)
        if self.seed != DEFAULT_SEED:
            out["seed"] = self.seed
        if self.output_dir is not None:
            out["output_dir"] = self.output_dir
        return out

    def tolerance(self, key: str) -> float:
        return self.tolerances.get(key, TOLERANCES[key])

    def to_problem(self) -> ProblemSpec:
        try:
            nl = resolve(self.nonlinearity)
        except UnknownCatalogId as exc:
            raise ConfigError(str(exc)) from exc
        grid = make_grid(*self.grid)
        u0 = make_initial(self.u0, grid)
        try:
            return ProblemSpec(
                p=self.p,
                nl=nl,
                grid=grid,
                u0=u0,
                t_end=self.t_end,
                cfl=self.cfl,
                blowup_linf=self.tolerance("blowup_linf"),
                dt_min=self.tolerance("dt_min"),
                step_tol=self.tolerance("step_tol"),
                u0_profile=dict(self.u0),
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc


def load_config(path_or_name) -> RunConfig:
    """Load a config from a file path or a packaged scenario name.

    An existing file wins; otherwise the basename (with or without
    ``.json``) is looked up among the packaged scenarios, so both
    ``blowup-lab simulate heat`` and ``... simulate scenarios/heat.json``
    work from any directory.
    """
    p = Path(str(path_or_name))
    if p.is_file():
        try:
            return RunConfig.from_dict(json.loads(p.read_text()))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{p}: invalid JSON: {exc}") from exc
    name = p.stem if p.suffix == ".json" else p.name
    res = resources.files("blowup_lab").joinpath(f"scenarios/{name}.json")
    if res.is_file():
        return RunConfig.from_dict(json.loads(res.read_text()))
    raise ConfigError(f"no config file {path_or_name!r} and no packaged scenario {name!r}")


def packaged_scenarios() -> list[str]:
    base = resources.files("blowup_lab").joinpath("scenarios")
    return sorted(f.name[:-5] for f in base.iterdir() if f.name.endswith(".json"))


def build_manifest(
    config: RunConfig,
    outcome,
    initial_energy: float,
    wall_time: float,
    trace_ref: str,
    class_verdicts: Optional[dict] = None,
    lemma_report: Optional[dict] = None,
) -> dict:
    return {
        "config": config.to_dict(),
        "outcome": outcome.to_dict(),
        "initial_energy": initial_energy,
        "class_verdicts": class_verdicts or {},
        "lemma_report": lemma_report,
        "tool_version": f"blowup-lab 0.1.0 ({kernels.BACKEND} kernels)",
        "wall_time": wall_time,
    }

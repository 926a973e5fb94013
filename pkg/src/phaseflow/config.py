"""Experiment configuration: JSON schema, parsing, field-level validation.

A config is a single JSON file (reviewable, diffable); every module
precondition expressible in it is checked here before any compute starts.
Invalid configs raise ConfigError carrying one diagnostic per offending
field, each prefixed with its dotted path.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .evolve import Potential
from .grid import SpatialGrid1D
from .states import Gaussian, Gaussian2D, HarmonicEigenstate, Superposition, build

SCENARIOS = ("run1d", "run2d", "wigner-compare", "takabayasi")

#: Environment variable overriding the configured output directory.
OUTPUT_DIR_ENV = "PHASEFLOW_OUT"

DEFAULT_TOLERANCES = {
    "position_ks": 0.01,
    "momentum_ks": 0.01,
    "ks_2d": 0.015,
    "marginal_l1": 1e-6,
    "dbb_l1_min": 1.5,
    "wigner_min_below": -0.05,
    "flagged_fraction": 1e-3,
}


class ConfigError(ValueError):
    """Invalid configuration; problems lists 'field.path: message' entries."""

    def __init__(self, problems: list[str]):
        self.problems = problems
        super().__init__("invalid configuration:\n" + "\n".join(f"  {p}" for p in problems))


@dataclass
class TimeConfig:
    dt: float = 2.5e-4
    t_final: float = 2.0
    snapshot_stride: int = 40
    checkpoint_every: float = 0.25

    @property
    def snapshot_dt(self) -> float:
        return self.dt * self.snapshot_stride


@dataclass
class EnsembleConfig:
    count: int = 100_000
    seed: int = 42
    trajectory_dt: float = 5e-3
    dump_trajectories: int = 1000


@dataclass
class ExperimentConfig:
    scenario: str
    state: object
    grid: SpatialGrid1D
    potential: Potential = field(default_factory=Potential)
    grid2: SpatialGrid1D | None = None
    mass: float = 1.0
    epsilon: int = 1
    time: TimeConfig = field(default_factory=TimeConfig)
    ensemble: EnsembleConfig = field(default_factory=EnsembleConfig)
    map_refine: int = 4
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    output_dir: str = "out"
    raw: dict = field(default_factory=dict)


class _Reader:
    """Typed dict reader that records problems with dotted field paths."""

    def __init__(self, data: dict, problems: list[str], prefix: str = ""):
        self.data = data
        self.problems = problems
        self.prefix = prefix

    def path(self, key: str) -> str:
        return f"{self.prefix}{key}"

    def fail(self, key: str, message: str):
        self.problems.append(f"{self.path(key)}: {message}")

    def get(self, key: str, default=None, required: bool = False):
        if key not in self.data:
            if required:
                self.fail(key, "missing required field")
            return default
        return self.data[key]

    def number(self, key: str, default=None, required: bool = False, positive: bool = False):
        v = self.get(key, default, required)
        if v is None:
            return None
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            self.fail(key, f"must be a finite number, got {v!r}")
            return default
        if positive and not v > 0:
            self.fail(key, f"must be > 0, got {v!r}")
            return default
        return float(v)

    def integer(self, key: str, default=None, required: bool = False, minimum=None):
        v = self.get(key, default, required)
        if v is None:
            return None
        if isinstance(v, bool) or not isinstance(v, int):
            self.fail(key, f"must be an integer, got {v!r}")
            return default
        if minimum is not None and v < minimum:
            self.fail(key, f"must be >= {minimum}, got {v}")
            return default
        return v

    def section(self, key: str, required: bool = False) -> "_Reader | None":
        v = self.get(key, None, required)
        if v is None:
            return None
        if not isinstance(v, dict):
            self.fail(key, f"must be an object, got {type(v).__name__}")
            return None
        return _Reader(v, self.problems, prefix=f"{self.path(key)}.")


def _parse_grid(r: _Reader) -> SpatialGrid1D | None:
    n = r.integer("n", required=True, minimum=16)
    x_min = r.number("x_min", required=True)
    dx = r.number("dx", required=True, positive=True)
    if None in (n, x_min, dx):
        return None
    try:
        return SpatialGrid1D(n, x_min, dx)
    except ValueError as exc:
        r.problems.append(f"{r.prefix.rstrip('.')}: {exc}")
        return None


def _parse_weight(raw, r: _Reader, key: str) -> complex:
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        return complex(raw)
    if isinstance(raw, list) and len(raw) == 2 and all(
        isinstance(c, (int, float)) and not isinstance(c, bool) for c in raw
    ):
        return complex(raw[0], raw[1])
    r.fail(key, f"weight must be a number or [re, im] pair, got {raw!r}")
    return 1.0 + 0j


def _parse_state(r: _Reader):
    kind = r.get("kind", required=True)
    try:
        if kind == "gaussian":
            return Gaussian(
                x0=r.number("x0", 0.0),
                p0=r.number("p0", 0.0),
                sigma_x=r.number("sigma_x", 1.0, positive=True),
            )
        if kind == "harmonic_eigenstate":
            return HarmonicEigenstate(
                k=r.integer("k", 0, minimum=0),
                omega=r.number("omega", 1.0, positive=True),
                mass=r.number("mass", 1.0, positive=True),
            )
        if kind == "gaussian2d":
            x0 = r.get("x0", [0.0, 0.0])
            p0 = r.get("p0", [0.0, 0.0])
            sigma = r.get("sigma", [1.0, 1.0])
            for name, v in (("x0", x0), ("p0", p0), ("sigma", sigma)):
                if not (isinstance(v, list) and len(v) == 2):
                    r.fail(name, f"must be a [a, b] pair, got {v!r}")
                    return None
            return Gaussian2D(
                x0=tuple(x0),
                p0=tuple(p0),
                sigma=tuple(sigma),
                correlation=r.number("correlation", 0.0),
            )
        if kind in ("superposition", "superposition2d"):
            terms_raw = r.get("terms", required=True)
            if not isinstance(terms_raw, list) or not terms_raw:
                r.fail("terms", "must be a non-empty list of terms")
                return None
            terms = []
            for i, term in enumerate(terms_raw):
                tr = _Reader(term, r.problems, prefix=f"{r.path('terms')}[{i}].")
                weight = _parse_weight(term.get("weight", 1.0), tr, "weight")
                inner = dict(term)
                inner.pop("weight", None)
                inner["kind"] = "gaussian2d" if kind == "superposition2d" else "gaussian"
                sub = _parse_state(_Reader(inner, r.problems, prefix=tr.prefix))
                if sub is None:
                    return None
                terms.append((weight, sub))
            return Superposition(terms=tuple(terms))
    except ValueError as exc:
        r.problems.append(f"{r.prefix.rstrip('.')}: {exc}")
        return None
    r.fail("kind", f"unknown state kind {kind!r}")
    return None


def _parse_potential(r: _Reader | None, grid: SpatialGrid1D | None, problems: list[str]):
    if r is None:
        return Potential()
    kind = r.get("kind", "free")
    try:
        if kind == "free":
            return Potential(kind="free")
        if kind == "harmonic":
            return Potential(
                kind="harmonic",
                mass=r.number("mass", 1.0, positive=True),
                omega=r.number("omega", 1.0, positive=True),
            )
        if kind == "barrier":
            return Potential(
                kind="barrier",
                height=r.number("height", 1.0),
                half_width=r.number("half_width", 1.0, positive=True),
                center=r.number("center", 0.0),
            )
        if kind == "tabulated":
            table = r.get("values", required=True)
            if table is not None:
                if grid is not None and len(table) != grid.n:
                    r.fail("values", f"length {len(table)} does not match grid n={grid.n}")
                    return Potential()
                return Potential(kind="tabulated", table=np.asarray(table, dtype=float))
            return Potential()
    except (ValueError, TypeError) as exc:
        problems.append(f"potential: {exc}")
        return Potential()
    r.fail("kind", f"unknown potential kind {kind!r}")
    return Potential()


def parse_config(data: dict) -> ExperimentConfig:
    """Validate a config dict; raises ConfigError listing every problem."""
    problems: list[str] = []
    root = _Reader(data, problems)

    scenario = root.get("scenario", required=True)
    if scenario is not None and scenario not in SCENARIOS:
        root.fail("scenario", f"must be one of {', '.join(SCENARIOS)}; got {scenario!r}")

    mass = root.number("mass", 1.0, positive=True)
    epsilon = root.integer("epsilon", 1)
    if epsilon not in (1, -1):
        root.fail("epsilon", f"must be +1 or -1, got {epsilon!r}")

    grid_r = root.section("grid", required=True)
    grid = _parse_grid(grid_r) if grid_r is not None else None

    needs_2d = scenario == "run2d"
    grid2 = None
    grid2_r = root.section("grid2", required=needs_2d)
    if grid2_r is not None:
        grid2 = _parse_grid(grid2_r)

    state_r = root.section("state", required=True)
    state = _parse_state(state_r) if state_r is not None else None
    if state is not None:
        is_2d_state = isinstance(state, Gaussian2D) or (
            isinstance(state, Superposition) and state.is_2d
        )
        if needs_2d and not is_2d_state:
            root.fail("state.kind", "run2d needs a 2D state (gaussian2d or superposition2d)")
        if not needs_2d and is_2d_state:
            root.fail("state.kind", f"{scenario} needs a 1D state")

    potential = _parse_potential(root.section("potential"), grid, problems)
    if scenario == "run2d" and potential.kind not in ("free", "harmonic"):
        root.fail("potential.kind", "run2d propagation supports free or harmonic only")

    time_cfg = TimeConfig()
    tr = root.section("time")
    if tr is not None:
        time_cfg = TimeConfig(
            dt=tr.number("dt", TimeConfig.dt, positive=True) or TimeConfig.dt,
            t_final=tr.number("t_final", TimeConfig.t_final) or 0.0,
            snapshot_stride=tr.integer("snapshot_stride", TimeConfig.snapshot_stride, minimum=1)
            or TimeConfig.snapshot_stride,
            checkpoint_every=tr.number("checkpoint_every", TimeConfig.checkpoint_every, positive=True)
            or TimeConfig.checkpoint_every,
        )
        if time_cfg.t_final < 0:
            tr.fail("t_final", f"must be >= 0, got {time_cfg.t_final}")
        if time_cfg.t_final > 0:
            snap_dt = time_cfg.snapshot_dt
            n_snap = time_cfg.t_final / snap_dt
            if abs(n_snap - round(n_snap)) > 1e-9:
                tr.fail("t_final", f"must be an integer number of snapshot intervals (dt*stride={snap_dt!r})")
            n_ck = time_cfg.checkpoint_every / snap_dt
            if abs(n_ck - round(n_ck)) > 1e-9 or round(n_ck) < 1:
                tr.fail("checkpoint_every", f"must be a positive multiple of dt*stride={snap_dt!r}")

    ens_cfg = EnsembleConfig()
    er = root.section("ensemble")
    if er is not None:
        ens_cfg = EnsembleConfig(
            count=er.integer("count", EnsembleConfig.count, minimum=0),
            seed=er.integer("seed", EnsembleConfig.seed),
            trajectory_dt=er.number("trajectory_dt", EnsembleConfig.trajectory_dt, positive=True),
            dump_trajectories=er.integer("dump_trajectories", EnsembleConfig.dump_trajectories, minimum=0),
        )
        if ens_cfg.trajectory_dt is not None and time_cfg.t_final > 0:
            sub = time_cfg.snapshot_dt / ens_cfg.trajectory_dt
            if abs(sub - round(sub)) > 1e-6 or round(sub) < 1:
                er.fail("trajectory_dt", f"must divide the snapshot spacing {time_cfg.snapshot_dt!r}")

    map_refine = root.integer("map_refine", 4, minimum=1)
    if map_refine is not None and (map_refine & (map_refine - 1)) != 0:
        root.fail("map_refine", f"must be a power of two, got {map_refine}")

    tolerances = dict(DEFAULT_TOLERANCES)
    tol_r = root.section("tolerances")
    if tol_r is not None:
        for key in tol_r.data:
            if key not in DEFAULT_TOLERANCES:
                tol_r.fail(key, f"unknown tolerance (known: {', '.join(sorted(DEFAULT_TOLERANCES))})")
            else:
                v = tol_r.number(key)
                if v is not None:
                    tolerances[key] = v

    output_dir = root.get("output_dir", "out")
    if not isinstance(output_dir, str) or not output_dir:
        root.fail("output_dir", "must be a non-empty string")
    env_override = os.environ.get(OUTPUT_DIR_ENV)
    if env_override:
        output_dir = env_override

    # materialize the state once so grid-fit problems surface at validation
    # time rather than mid-run
    if not problems and state is not None and grid is not None:
        try:
            if scenario == "run2d":
                build(state, grid, grid2)
            else:
                build(state, grid)
        except ValueError as exc:
            problems.append(f"state: {exc}")

    if problems:
        raise ConfigError(problems)

    return ExperimentConfig(
        scenario=scenario,
        state=state,
        grid=grid,
        grid2=grid2,
        potential=potential,
        mass=mass,
        epsilon=epsilon,
        time=time_cfg,
        ensemble=ens_cfg,
        map_refine=map_refine,
        tolerances=tolerances,
        output_dir=output_dir,
        raw=data,
    )


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError([f"config file: {exc}"]) from exc
    except json.JSONDecodeError as exc:
        raise ConfigError([f"config file: invalid JSON ({exc})"]) from exc
    if not isinstance(data, dict):
        raise ConfigError(["config file: top level must be a JSON object"])
    return parse_config(data)

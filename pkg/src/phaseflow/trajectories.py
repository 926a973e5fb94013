"""Configuration-space flow and causal momentum assignment.

Positions follow the phase-gradient velocity v = (1/m) ∂S/∂x of ψ = R e^{iS};
an ensemble initialized from |ψ(x,0)|² then keeps density |ψ(x,t)|² at all
times (equivariance). Momenta are not integrated from a force law: each
member carries p_i(t) = p̂(x_i(t), t) assigned from the monotone momentum map
of the instantaneous state, which is what makes the ensemble's momentum
histogram reproduce |ψ̃(p,t)|². The residual A = m v - p̂ is the gauge-like
field that separates the two momentum notions.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .grid import SpatialGrid1D, Wavefunction1D, phase_gradient
from .transport import MonotoneMomentumMap, cdf, quantile

#: Fraction of flagged (node-crossing or escaped) trajectories above which an
#: experiment is considered invalid.
FLAGGED_FRACTION_LIMIT = 1e-3

TIME_MATCH_TOL = 1e-9


@dataclass(frozen=True)
class VelocityField:
    """Per-snapshot tabulated flow velocity with its defined-region mask."""

    grid: SpatialGrid1D
    times: np.ndarray  # (K+1,)
    values: np.ndarray  # (K+1, n)
    defined: np.ndarray  # (K+1, n) bool
    mass: float


@dataclass(frozen=True)
class TrajectoryEnsemble:
    """Ensemble positions (and optionally causal momenta) on a time mesh.

    positions[k, i] is member i at times[k]; momenta has the same layout once
    assigned. flagged marks members that left the defined region; they are
    frozen and excluded from statistics.
    """

    times: np.ndarray
    positions: np.ndarray
    momenta: np.ndarray | None
    flagged: np.ndarray
    seed: int | None = None

    @property
    def count(self) -> int:
        return self.positions.shape[1]

    def active(self) -> np.ndarray:
        return ~self.flagged

    def flagged_fraction(self) -> float:
        return float(np.mean(self.flagged))


@dataclass(frozen=True)
class GaugeField:
    """A(x,t) = m v(x,t) - p̂(x,t) on the defined region."""

    grid: SpatialGrid1D
    times: np.ndarray
    values: np.ndarray
    defined: np.ndarray


def dbb_velocity_field(snapshots: list[Wavefunction1D], mass: float = 1.0) -> VelocityField:
    """Phase-gradient velocity v = (∂S/∂x)/m for each snapshot."""
    if len(snapshots) == 0:
        raise ValueError("need at least one wavefunction snapshot")
    grid = snapshots[0].grid
    times = np.array([s.t for s in snapshots])
    if np.any(np.diff(times) <= 0):
        raise ValueError("snapshot times must be strictly increasing")
    values = np.empty((len(snapshots), grid.n))
    defined = np.empty((len(snapshots), grid.n), dtype=bool)
    for k, snap in enumerate(snapshots):
        if snap.grid != grid:
            raise ValueError("snapshots must share a common grid")
        grad, mask = phase_gradient(snap)
        values[k] = grad / mass
        defined[k] = mask
    return VelocityField(grid=grid, times=times, values=values, defined=defined, mass=mass)


def sample_positions(density: np.ndarray, axis: np.ndarray, count: int, seed: int) -> np.ndarray:
    """Inverse-CDF draws from a tabulated density; bit-reproducible per seed."""
    if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool):
        raise TypeError(f"seed must be an integer, got {type(seed).__name__}")
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    if count == 0:
        return np.empty(0)
    rng = np.random.default_rng(seed)
    u = rng.random(count)
    positions, _ = quantile(cdf(density, axis), u)
    return positions


def integrate(
    positions: np.ndarray,
    field: VelocityField,
    dt: float,
    seed: int | None = None,
) -> TrajectoryEnsemble:
    """RK4 transport of an ensemble through the snapshot mesh.

    dt must divide the snapshot spacing; velocities are interpolated linearly
    in x and in t. Members leaving the grid or touching a node cell are
    flagged, frozen, and reported via the ensemble flags.
    """
    if not (dt > 0):
        raise ValueError(f"dt must be > 0, got {dt}")
    spacings = np.diff(field.times)
    subs = spacings / dt
    n_sub = int(round(subs[0]))
    if n_sub < 1 or np.max(np.abs(subs - n_sub)) > 1e-6:
        raise ValueError(
            f"dt={dt} must divide the uniform snapshot spacing {spacings[0]!r}"
        )
    x0 = np.ascontiguousarray(positions, dtype=float)
    step = spacings[0] / n_sub
    out, flagged = _kernels.rk4_advect(
        x0,
        np.ascontiguousarray(field.values),
        np.ascontiguousarray(field.defined),
        field.grid.x_min,
        field.grid.dx,
        n_sub,
        step,
    )
    return TrajectoryEnsemble(
        times=field.times.copy(),
        positions=out,
        momenta=None,
        flagged=flagged,
        seed=seed,
    )


def assign_momenta(
    ensemble: TrajectoryEnsemble,
    maps: list[MonotoneMomentumMap],
) -> TrajectoryEnsemble:
    """Attach p_i(t_k) = p̂(x_i(t_k), t_k); assignment, not integration."""
    if len(maps) != len(ensemble.times):
        raise ValueError(
            f"need one map per mesh time: got {len(maps)} maps for "
            f"{len(ensemble.times)} times"
        )
    for mmap, t in zip(maps, ensemble.times):
        if abs(mmap.t - t) > TIME_MATCH_TOL:
            raise ValueError(f"map at t={mmap.t} does not match mesh time {t}")
    momenta = np.empty_like(ensemble.positions)
    for k, mmap in enumerate(maps):
        momenta[k] = mmap.momentum_at(ensemble.positions[k])
    return replace(ensemble, momenta=momenta)


def gauge_field(field: VelocityField, maps: list[MonotoneMomentumMap]) -> GaugeField:
    """A = m v - p̂ pointwise on the shared mesh."""
    if len(maps) != len(field.times):
        raise ValueError("need one map per snapshot time")
    values = np.empty_like(field.values)
    for k, mmap in enumerate(maps):
        if abs(mmap.t - field.times[k]) > TIME_MATCH_TOL:
            raise ValueError(f"map at t={mmap.t} does not match mesh time {field.times[k]}")
        values[k] = field.mass * field.values[k] - mmap.p_hat
    values[~field.defined] = 0.0
    return GaugeField(grid=field.grid, times=field.times.copy(), values=values, defined=field.defined.copy())


def dbb_phase_density_momentum_marginal(psi: Wavefunction1D, mass: float = 1.0) -> np.ndarray:
    """Momentum marginal of the phase-gradient phase-space density.

    The density concentrates all momentum on p = ∂S/∂x, so its p-marginal is
    the |ψ|²-weighted histogram of phase-gradient values. Binned on the
    grid's momentum cells (p_k ± dp/2) and normalized to unit mass; undefined
    (node) points carry negligible weight and are dropped. For a real state
    this is a delta at p = 0 and nothing like |ψ̃|², which is the point of
    the contrast check.
    """
    grad, defined = phase_gradient(psi)
    rho = psi.density()
    weights = rho[defined] * psi.grid.dx
    values = grad[defined]  # ∂S/∂x = m v is itself the flow momentum
    p = psi.grid.p
    dp = psi.grid.dp
    edges = np.concatenate((p - 0.5 * dp, [p[-1] + 0.5 * dp]))
    hist, _ = np.histogram(values, bins=edges, weights=weights)
    total = hist.sum()
    if total <= 0:
        raise ValueError("no defined phase-gradient mass to bin")
    return hist / (total * dp)

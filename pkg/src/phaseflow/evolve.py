"""Schrödinger propagation on the grid by Strang-split spectral stepping.

One step of size dt applies kinetic-potential-kinetic:

    ψ -> e^(-i K dt/2) e^(-i V dt) e^(-i K dt/2) ψ,      K = p²/2m,

with the kinetic factor diagonal in the FFT basis, so each step is exactly
unitary and the splitting error is O(dt²). Interior half-kinetic factors of
consecutive steps are merged into whole steps. Boundaries are periodic by
construction of the spectral method; a runtime monitor aborts if more than
EDGE_MASS_TOL of probability reaches the outermost cells.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .grid import SpatialGrid1D, Wavefunction1D, Wavefunction2D

#: Probability mass allowed in the outermost grid cells before aborting.
EDGE_MASS_TOL = 1e-8

#: Number of cells per edge inspected by the edge-mass monitor.
EDGE_CELLS = 2


class PropagationError(RuntimeError):
    """Numerical abort during propagation; carries the failing step index."""

    def __init__(self, message: str, step: int):
        super().__init__(f"{message} (step {step})")
        self.step = step


@dataclass(frozen=True)
class Potential:
    """Time-independent external potential.

    kind: "free", "harmonic" (mass, omega), "barrier" (height, half_width,
    center) or "tabulated" (values on the grid).
    """

    kind: str = "free"
    mass: float = 1.0
    omega: float = 1.0
    height: float = 1.0
    half_width: float = 1.0
    center: float = 0.0
    table: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in ("free", "harmonic", "barrier", "tabulated"):
            raise ValueError(f"unknown potential kind {self.kind!r}")
        if self.kind == "harmonic" and not (self.mass > 0 and self.omega > 0):
            raise ValueError("harmonic potential needs mass > 0 and omega > 0")
        if self.kind == "barrier" and not (self.half_width > 0):
            raise ValueError("barrier half_width must be > 0")
        if self.kind == "tabulated":
            if self.table is None:
                raise ValueError("tabulated potential needs a value table")
            if not np.all(np.isfinite(self.table)):
                raise ValueError("tabulated potential must be finite everywhere")

    def values(self, grid: SpatialGrid1D) -> np.ndarray:
        x = grid.x
        if self.kind == "free":
            return np.zeros(grid.n)
        if self.kind == "harmonic":
            return 0.5 * self.mass * self.omega**2 * x**2
        if self.kind == "barrier":
            return np.where(np.abs(x - self.center) <= self.half_width, self.height, 0.0)
        table = np.asarray(self.table, dtype=float)
        if table.shape != (grid.n,):
            raise ValueError(f"tabulated potential length {table.shape} does not match grid n={grid.n}")
        return table


def _check_step(amps: np.ndarray, dx: float, step: int) -> None:
    if not np.all(np.isfinite(amps.view(np.float64))):
        raise PropagationError("non-finite amplitude detected", step)
    edge = np.sum(np.abs(amps[:EDGE_CELLS]) ** 2) + np.sum(np.abs(amps[-EDGE_CELLS:]) ** 2)
    if edge * dx > EDGE_MASS_TOL:
        raise PropagationError(
            f"edge mass {edge * dx:.3e} exceeds {EDGE_MASS_TOL:.0e}; state reached the boundary",
            step,
        )


def _warn_step_size(dt: float, dx: float, mass: float) -> None:
    limit = 0.5 * mass * dx * dx
    if dt > limit:
        warnings.warn(
            f"dt={dt:g} exceeds the accuracy heuristic 0.5 m dx² = {limit:g}; "
            "the step stays unitary but phase accuracy of the fastest grid "
            "modes degrades",
            stacklevel=3,
        )


def propagate(
    psi: Wavefunction1D,
    potential: Potential,
    dt: float,
    steps: int,
    mass: float = 1.0,
) -> Wavefunction1D:
    """Advance ψ by steps·dt under the given potential."""
    if psi.space != "position":
        raise ValueError("propagate expects a position-representation wavefunction")
    if not (dt > 0):
        raise ValueError(f"dt must be > 0, got {dt}")
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    _warn_step_size(dt, psi.grid.dx, mass)

    grid = psi.grid
    k = 2.0 * np.pi * np.fft.fftfreq(grid.n, d=grid.dx)
    half_kin = np.exp(-1j * k**2 * dt / (4.0 * mass))
    full_kin = half_kin * half_kin
    exp_pot = np.exp(-1j * potential.values(grid) * dt)

    amps = np.fft.ifft(half_kin * np.fft.fft(psi.amps))
    for step in range(steps - 1):
        amps = np.fft.ifft(full_kin * np.fft.fft(exp_pot * amps))
        _check_step(amps, grid.dx, step)
    amps = np.fft.ifft(half_kin * np.fft.fft(exp_pot * amps))
    _check_step(amps, grid.dx, steps - 1)

    return Wavefunction1D(grid, amps, psi.t + steps * dt)


def propagate_2d(
    psi: Wavefunction2D,
    potential1: Potential,
    potential2: Potential,
    dt: float,
    steps: int,
    mass: float = 1.0,
) -> Wavefunction2D:
    """2D propagation for separable potentials V(x1,x2) = V1(x1) + V2(x2)."""
    if not (dt > 0):
        raise ValueError(f"dt must be > 0, got {dt}")
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    g1, g2 = psi.grid1, psi.grid2
    _warn_step_size(dt, min(g1.dx, g2.dx), mass)
    k1 = 2.0 * np.pi * np.fft.fftfreq(g1.n, d=g1.dx)
    k2 = 2.0 * np.pi * np.fft.fftfreq(g2.n, d=g2.dx)
    ksq = k1[:, None] ** 2 + k2[None, :] ** 2
    half_kin = np.exp(-1j * ksq * dt / (4.0 * mass))
    full_kin = half_kin * half_kin
    v = potential1.values(g1)[:, None] + potential2.values(g2)[None, :]
    exp_pot = np.exp(-1j * v * dt)

    amps = np.fft.ifft2(half_kin * np.fft.fft2(psi.amps))
    for step in range(steps - 1):
        amps = np.fft.ifft2(full_kin * np.fft.fft2(exp_pot * amps))
        if not np.all(np.isfinite(amps.view(np.float64))):
            raise PropagationError("non-finite amplitude detected", step)
    amps = np.fft.ifft2(half_kin * np.fft.fft2(exp_pot * amps))
    if not np.all(np.isfinite(amps.view(np.float64))):
        raise PropagationError("non-finite amplitude detected", steps - 1)

    return Wavefunction2D(g1, g2, amps, psi.t + steps * dt)

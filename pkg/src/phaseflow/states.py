"""Analytic initial states: Gaussians, superpositions, oscillator eigenstates.

All builders return grid wavefunctions normalized to machine precision; the
analytic prefactors only seed the shape. A state whose tails touch the grid
boundary is rejected, since the spectral propagator is periodic and quantile
transport assumes all mass is interior.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.hermite import hermval

from .grid import SpatialGrid1D, Wavefunction1D, Wavefunction2D, normalize

#: Maximum boundary density relative to the peak before a state is rejected.
BOUNDARY_REL = 1e-12


@dataclass(frozen=True)
class Gaussian:
    """Packet with <x> = x0, <p> = p0, Var(x) = sigma_x²  (σ_p = 1/(2σ_x))."""

    x0: float = 0.0
    p0: float = 0.0
    sigma_x: float = 1.0

    def __post_init__(self):
        if not (self.sigma_x > 0):
            raise ValueError(f"sigma_x must be > 0, got {self.sigma_x}")

    def amplitudes(self, x: np.ndarray) -> np.ndarray:
        env = (2.0 * np.pi * self.sigma_x**2) ** -0.25 * np.exp(
            -((x - self.x0) ** 2) / (4.0 * self.sigma_x**2)
        )
        return env * np.exp(1j * self.p0 * x)


@dataclass(frozen=True)
class HarmonicEigenstate:
    """k-th eigenstate of H = p²/2m + mω²x²/2 (k = 0 ground state)."""

    k: int = 0
    omega: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        if self.k < 0:
            raise ValueError(f"eigenstate index must be >= 0, got {self.k}")
        if not (self.omega > 0 and self.mass > 0):
            raise ValueError("omega and mass must be > 0")

    def amplitudes(self, x: np.ndarray) -> np.ndarray:
        a = self.mass * self.omega  # 1/length² scale, ħ = 1
        xi = np.sqrt(a) * x
        coeffs = np.zeros(self.k + 1)
        coeffs[self.k] = 1.0
        return hermval(xi, coeffs) * np.exp(-0.5 * xi**2) + 0j


@dataclass(frozen=True)
class Superposition:
    """Weighted sum of Gaussian terms; normalized after summation, so the
    complex weights need not be pre-normalized."""

    terms: tuple = ()

    def __post_init__(self):
        if len(self.terms) == 0:
            raise ValueError("superposition needs at least one term")
        kinds = {type(t) for _, t in self.terms}
        if not (kinds <= {Gaussian} or kinds <= {Gaussian2D}):
            raise ValueError("superposition terms must be all 1D or all 2D Gaussians")

    @property
    def is_2d(self) -> bool:
        return isinstance(self.terms[0][1], Gaussian2D)


@dataclass(frozen=True)
class Gaussian2D:
    """Correlated 2D packet: position covariance [[σ1², rσ1σ2], [rσ1σ2, σ2²]]."""

    x0: tuple[float, float] = (0.0, 0.0)
    p0: tuple[float, float] = (0.0, 0.0)
    sigma: tuple[float, float] = (1.0, 1.0)
    correlation: float = 0.0

    def __post_init__(self):
        if not all(s > 0 for s in self.sigma):
            raise ValueError(f"sigmas must be > 0, got {self.sigma}")
        if not (abs(self.correlation) < 1):
            raise ValueError(f"|correlation| must be < 1, got {self.correlation}")

    def amplitudes(self, x1: np.ndarray, x2: np.ndarray) -> np.ndarray:
        s1, s2 = self.sigma
        r = self.correlation
        det = (1.0 - r**2) * s1**2 * s2**2
        # inverse covariance of |ψ|²; the amplitude carries a quarter of it
        c11 = s2**2 / det
        c22 = s1**2 / det
        c12 = -r * s1 * s2 / det
        u1 = x1[:, None] - self.x0[0]
        u2 = x2[None, :] - self.x0[1]
        quad = c11 * u1**2 + 2.0 * c12 * u1 * u2 + c22 * u2**2
        phase = self.p0[0] * x1[:, None] + self.p0[1] * x2[None, :]
        return np.exp(-0.25 * quad) * np.exp(1j * phase)


StateSpec = Gaussian | HarmonicEigenstate | Superposition | Gaussian2D


def _check_containment(density: np.ndarray, what: str) -> None:
    peak = float(np.max(density))
    if density.ndim == 1:
        edge = max(float(density[0]), float(density[-1]))
    else:
        edge = max(
            float(np.max(density[0, :])),
            float(np.max(density[-1, :])),
            float(np.max(density[:, 0])),
            float(np.max(density[:, -1])),
        )
    if edge > BOUNDARY_REL * peak:
        raise ValueError(
            f"{what}: boundary density {edge:.3e} exceeds {BOUNDARY_REL:.0e} x peak "
            f"{peak:.3e}; widen the grid"
        )


def build(spec: StateSpec, grid: SpatialGrid1D, grid2: SpatialGrid1D | None = None, t: float = 0.0):
    """Materialize a state spec on a grid (pair of grids for 2D variants)."""
    if isinstance(spec, Gaussian2D) or (isinstance(spec, Superposition) and spec.is_2d):
        if grid2 is None:
            raise ValueError("2D state specs need two grids")
        return _build_2d(spec, grid, grid2, t)
    if grid2 is not None:
        raise ValueError("1D state specs take a single grid")
    x = grid.x
    if isinstance(spec, Superposition):
        amps = np.zeros(grid.n, dtype=np.complex128)
        for w, term in spec.terms:
            amps += complex(w) * normalize(term.amplitudes(x), grid.dx)
    else:
        amps = spec.amplitudes(x)
    amps = normalize(amps, grid.dx)
    _check_containment(np.abs(amps) ** 2, type(spec).__name__)
    return Wavefunction1D(grid, amps, t)


def _build_2d(spec, grid1: SpatialGrid1D, grid2: SpatialGrid1D, t: float) -> Wavefunction2D:
    x1, x2 = grid1.x, grid2.x
    measure = grid1.dx * grid2.dx
    if isinstance(spec, Superposition):
        amps = np.zeros((grid1.n, grid2.n), dtype=np.complex128)
        for w, term in spec.terms:
            amps += complex(w) * normalize(term.amplitudes(x1, x2), measure)
    else:
        amps = spec.amplitudes(x1, x2)
    amps = normalize(amps, measure)
    _check_containment(np.abs(amps) ** 2, type(spec).__name__)
    return Wavefunction2D(grid1, grid2, amps, t)

"""Uniform grids, normalized wavefunctions, and unitary Fourier transforms.

Natural units: ħ = 1 throughout. A position grid with n points and spacing dx
induces the centered momentum grid

    p_k = 2π (k - n/2) / (n dx),     k = 0 .. n-1,   dp = 2π / (n dx),

symmetric about 0. The transform convention is the unitary pair

    ψ̃(p) = (2π)^(-1/2) ∫ ψ(x) e^(-ipx) dx,
    ψ(x) = (2π)^(-1/2) ∫ ψ̃(p) e^(+ipx) dp,

discretized so that Σ|ψ̃_k|² dp = Σ|ψ_j|² dx exactly (discrete Parseval).
Internally the FFT ordering is hidden; all callers see ordered axes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SQRT_2PI = np.sqrt(2.0 * np.pi)

#: Relative density threshold below which the phase S of ψ = R e^{iS} is
#: treated as undefined (R has a node there).
NODE_FLOOR_REL = 1e-12

#: Normalization tolerance for wavefunction construction.
NORM_TOL = 1e-9

POSITION = "position"
MOMENTUM = "momentum"


@dataclass(frozen=True)
class SpatialGrid1D:
    """Uniform 1D grid: n points (power of two, n >= 16) starting at x_min."""

    n: int
    x_min: float
    dx: float

    def __post_init__(self):
        if self.n < 16 or (self.n & (self.n - 1)) != 0:
            raise ValueError(f"grid size must be a power of two >= 16, got {self.n}")
        if not (self.dx > 0) or not np.isfinite(self.dx):
            raise ValueError(f"grid spacing must be positive and finite, got {self.dx}")
        if not np.isfinite(self.x_min):
            raise ValueError(f"x_min must be finite, got {self.x_min}")

    @property
    def x(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.n)

    @property
    def dp(self) -> float:
        return 2.0 * np.pi / (self.n * self.dx)

    @property
    def p(self) -> np.ndarray:
        return self.dp * (np.arange(self.n) - self.n // 2)

    @property
    def x_max(self) -> float:
        return self.x_min + self.dx * (self.n - 1)

    def axis(self, space: str) -> np.ndarray:
        return self.x if space == POSITION else self.p

    def spacing(self, space: str) -> float:
        return self.dx if space == POSITION else self.dp


def _frozen_array(a, dtype) -> np.ndarray:
    out = np.ascontiguousarray(a, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Wavefunction1D:
    """Complex amplitudes on a grid at time t, unit norm in its representation.

    `space` is "position" (measure dx) or "momentum" (measure dp on the
    grid-induced momentum axis). Amplitudes are immutable after construction;
    every operation on wavefunctions is a pure function.
    """

    grid: SpatialGrid1D
    amps: np.ndarray
    t: float
    space: str = POSITION

    def __post_init__(self):
        if self.space not in (POSITION, MOMENTUM):
            raise ValueError(f"unknown representation {self.space!r}")
        amps = _frozen_array(self.amps, np.complex128)
        if amps.shape != (self.grid.n,):
            raise ValueError(f"amplitude shape {amps.shape} does not match grid n={self.grid.n}")
        object.__setattr__(self, "amps", amps)
        norm = self.norm()
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"wavefunction not normalized: norm={norm!r} (tolerance {NORM_TOL})")

    @property
    def axis(self) -> np.ndarray:
        return self.grid.axis(self.space)

    @property
    def spacing(self) -> float:
        return self.grid.spacing(self.space)

    def density(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2) * self.spacing)


def normalize(amps: np.ndarray, measure: float) -> np.ndarray:
    """Rescale amplitudes to unit norm under the given measure."""
    total = np.sum(np.abs(amps) ** 2) * measure
    if total <= 0 or not np.isfinite(total):
        raise ValueError("cannot normalize a zero or non-finite amplitude field")
    return amps / np.sqrt(total)


def _fwd_1d(amps: np.ndarray, x_min: float, dx: float) -> np.ndarray:
    # ψ̃_k = dx/√(2π) e^{-i p_k x_min} FFT[ψ_j (-1)^j]_k  with centered p_k
    n = amps.shape[0]
    k = np.arange(n)
    p = 2.0 * np.pi * (k - n // 2) / (n * dx)
    signs = 1.0 - 2.0 * (k % 2)
    return dx / SQRT_2PI * np.exp(-1j * p * x_min) * np.fft.fft(amps * signs)


def _inv_1d(amps: np.ndarray, x_min: float, dx: float) -> np.ndarray:
    n = amps.shape[0]
    k = np.arange(n)
    p = 2.0 * np.pi * (k - n // 2) / (n * dx)
    signs = 1.0 - 2.0 * (k % 2)
    return SQRT_2PI / dx * signs * np.fft.ifft(amps * np.exp(1j * p * x_min))


def to_momentum(psi: Wavefunction1D) -> Wavefunction1D:
    """Unitary transform to the momentum representation (no-op if already there)."""
    if psi.space == MOMENTUM:
        return psi
    amps = _fwd_1d(psi.amps, psi.grid.x_min, psi.grid.dx)
    return Wavefunction1D(psi.grid, amps, psi.t, space=MOMENTUM)


def to_position(psi: Wavefunction1D) -> Wavefunction1D:
    """Inverse of :func:`to_momentum`; round-trips to the input exactly."""
    if psi.space == POSITION:
        return psi
    amps = _inv_1d(psi.amps, psi.grid.x_min, psi.grid.dx)
    return Wavefunction1D(psi.grid, amps, psi.t, space=POSITION)


def zero_pad(psi: Wavefunction1D, factor: int) -> Wavefunction1D:
    """Embed ψ in a grid `factor` times wider, padding with exact zeros.

    For a state whose density is negligible at the grid edges this is exact:
    transforming the padded state samples the same trigonometric interpolant
    on a `factor` times finer conjugate axis. Used to refine density tables
    for quantile transport beyond the native FFT resolution.
    """
    factor = int(factor)
    if factor < 1 or (factor & (factor - 1)) != 0:
        raise ValueError(f"pad factor must be a power of two, got {factor}")
    if factor == 1:
        return psi
    n = psi.grid.n
    n_pad = n * int(factor)
    lead = (n_pad - n) // 2
    amps = np.zeros(n_pad, dtype=np.complex128)
    amps[lead:lead + n] = psi.amps
    if psi.space == POSITION:
        grid = SpatialGrid1D(n_pad, psi.grid.x_min - lead * psi.grid.dx, psi.grid.dx)
    else:
        # padding the momentum axis: the padded p-range implies a position
        # grid with the same span but spacing dx/factor
        dx_f = psi.grid.dx / factor
        grid = SpatialGrid1D(n_pad, psi.grid.x_min, dx_f)
    return Wavefunction1D(grid, amps, psi.t, space=psi.space)


def node_floor(density: np.ndarray) -> float:
    """Density threshold below which phase-derived quantities are undefined."""
    return NODE_FLOOR_REL * float(np.max(density))


def phase_gradient(psi: Wavefunction1D) -> tuple[np.ndarray, np.ndarray]:
    """∂S/∂x of ψ = R e^{iS}, as Im(ψ* ∂ψ/∂x)/|ψ|² with a spectral ∂ψ/∂x.

    Avoids unwrapping arg(ψ) and its branch cuts; identical to ∂S/∂x wherever
    R > 0. The derivative is taken in Fourier space, which is exact for
    grid-contained states; a finite-difference stencil would leave O(dx²)
    truncation visible even for a plain plane-wave phase. Returns
    (values, defined): points with |ψ|² below the node floor are flagged
    undefined (value 0, defined False), never raised.
    """
    if psi.space != POSITION:
        raise ValueError("phase_gradient expects a position-representation wavefunction")
    amps = psi.amps
    k = 2.0 * np.pi * np.fft.fftfreq(psi.grid.n, d=psi.grid.dx)
    d = np.fft.ifft(1j * k * np.fft.fft(amps))
    rho = psi.density()
    defined = rho >= node_floor(rho)
    values = np.zeros(psi.grid.n)
    values[defined] = np.imag(np.conj(amps[defined]) * d[defined]) / rho[defined]
    return values, defined


# --- two-dimensional states ---------------------------------------------


@dataclass(frozen=True)
class Wavefunction2D:
    """Position-representation state on grid1 x grid2, unit double-sum norm."""

    grid1: SpatialGrid1D
    grid2: SpatialGrid1D
    amps: np.ndarray
    t: float

    def __post_init__(self):
        amps = _frozen_array(self.amps, np.complex128)
        if amps.shape != (self.grid1.n, self.grid2.n):
            raise ValueError(
                f"amplitude shape {amps.shape} does not match grids "
                f"({self.grid1.n}, {self.grid2.n})"
            )
        object.__setattr__(self, "amps", amps)
        norm = self.norm()
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"2D wavefunction not normalized: norm={norm!r}")

    def density(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2) * self.grid1.dx * self.grid2.dx)


@dataclass(frozen=True)
class MixedWavefunction2D:
    """2D state with a per-axis representation tag (position or momentum).

    Covers the (p1, x2) and (p1, p2) representations; the norm is taken under
    the product of the appropriate per-axis measures.
    """

    grid1: SpatialGrid1D
    grid2: SpatialGrid1D
    amps: np.ndarray
    t: float
    spaces: tuple[str, str] = (POSITION, POSITION)

    def __post_init__(self):
        for s in self.spaces:
            if s not in (POSITION, MOMENTUM):
                raise ValueError(f"unknown representation {s!r}")
        amps = _frozen_array(self.amps, np.complex128)
        if amps.shape != (self.grid1.n, self.grid2.n):
            raise ValueError(f"amplitude shape {amps.shape} does not match grids")
        object.__setattr__(self, "amps", amps)
        norm = self.norm()
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"mixed 2D wavefunction not normalized: norm={norm!r}")

    @property
    def axis1(self) -> np.ndarray:
        return self.grid1.axis(self.spaces[0])

    @property
    def axis2(self) -> np.ndarray:
        return self.grid2.axis(self.spaces[1])

    @property
    def measure(self) -> float:
        return self.grid1.spacing(self.spaces[0]) * self.grid2.spacing(self.spaces[1])

    def density(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2) * self.measure)


def _transform_axis(amps: np.ndarray, grid: SpatialGrid1D, axis: int, forward: bool) -> np.ndarray:
    n = grid.n
    k = np.arange(n)
    p = grid.dp * (k - n // 2)
    signs = 1.0 - 2.0 * (k % 2)
    shape = [1, 1]
    shape[axis] = n
    if forward:
        phase = np.exp(-1j * p * grid.x_min).reshape(shape)
        return grid.dx / SQRT_2PI * phase * np.fft.fft(amps * signs.reshape(shape), axis=axis)
    phase = np.exp(1j * p * grid.x_min).reshape(shape)
    return SQRT_2PI / grid.dx * signs.reshape(shape) * np.fft.ifft(amps * phase, axis=axis)


def partial_to_momentum(psi, axis: int) -> MixedWavefunction2D:
    """Fourier transform a 2D state along exactly one axis (1-based index)."""
    if axis not in (1, 2):
        raise ValueError(f"axis must be 1 or 2, got {axis}")
    if isinstance(psi, Wavefunction2D):
        spaces = [POSITION, POSITION]
    else:
        spaces = list(psi.spaces)
    a = axis - 1
    if spaces[a] == MOMENTUM:
        raise ValueError(f"axis {axis} is already in the momentum representation")
    grid = psi.grid1 if a == 0 else psi.grid2
    amps = _transform_axis(psi.amps, grid, a, forward=True)
    spaces[a] = MOMENTUM
    return MixedWavefunction2D(psi.grid1, psi.grid2, amps, psi.t, spaces=tuple(spaces))


def full_momentum_2d(psi: Wavefunction2D) -> MixedWavefunction2D:
    """Both-axis transform, ψ(x1,x2) -> ψ̃(p1,p2)."""
    return partial_to_momentum(partial_to_momentum(psi, 1), 2)

"""Deterministic phase-space quantum dynamics with exact quantum marginals.

Positions follow the phase-gradient flow of the wavefunction; momenta are
carried by monotone CDF-matching maps, so the ensemble reproduces both the
position density |ψ(x,t)|² and the momentum density |ψ̃(p,t)|² at all times.
Includes the chained two-dimensional construction with three simultaneous
marginals, a Wigner-function contrast harness, a split-step spectral
propagator, and a scenario CLI.
"""

from .grid import (
    MixedWavefunction2D,
    SpatialGrid1D,
    Wavefunction1D,
    Wavefunction2D,
    full_momentum_2d,
    partial_to_momentum,
    phase_gradient,
    to_momentum,
    to_position,
    zero_pad,
)
from .states import Gaussian, Gaussian2D, HarmonicEigenstate, Superposition, build
from .evolve import Potential, PropagationError, propagate, propagate_2d
from .transport import (
    ChainedMaps2D,
    CumulativeDistribution,
    MonotoneMomentumMap,
    cdf,
    chained_maps_2d,
    delta_argument,
    density_from_cdf,
    map_from_state,
    momentum_map,
    pushforward_density,
    quantile,
    sample_phase_space_2d,
    state_cdfs,
)
from .trajectories import (
    GaugeField,
    TrajectoryEnsemble,
    VelocityField,
    assign_momenta,
    dbb_phase_density_momentum_marginal,
    dbb_velocity_field,
    gauge_field,
    integrate,
    sample_positions,
)
from .wigner import WignerGrid, min_value, momentum_density_on_wigner_axis, wigner, wigner_marginals
from .stats import ComparisonReport, ks_distance, ks_distance_2d, l1_distance

__version__ = "0.1.0"

__all__ = [
    "SpatialGrid1D",
    "Wavefunction1D",
    "Wavefunction2D",
    "MixedWavefunction2D",
    "to_momentum",
    "to_position",
    "partial_to_momentum",
    "full_momentum_2d",
    "phase_gradient",
    "zero_pad",
    "Gaussian",
    "Gaussian2D",
    "HarmonicEigenstate",
    "Superposition",
    "build",
    "Potential",
    "PropagationError",
    "propagate",
    "propagate_2d",
    "CumulativeDistribution",
    "MonotoneMomentumMap",
    "ChainedMaps2D",
    "cdf",
    "quantile",
    "momentum_map",
    "map_from_state",
    "state_cdfs",
    "delta_argument",
    "density_from_cdf",
    "pushforward_density",
    "chained_maps_2d",
    "sample_phase_space_2d",
    "VelocityField",
    "TrajectoryEnsemble",
    "GaugeField",
    "dbb_velocity_field",
    "sample_positions",
    "integrate",
    "assign_momenta",
    "gauge_field",
    "dbb_phase_density_momentum_marginal",
    "WignerGrid",
    "wigner",
    "wigner_marginals",
    "momentum_density_on_wigner_axis",
    "min_value",
    "ComparisonReport",
    "ks_distance",
    "ks_distance_2d",
    "l1_distance",
]

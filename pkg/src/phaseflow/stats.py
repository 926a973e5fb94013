"""Distribution-comparison metrics for the verification harnesses."""

from __future__ import annotations

from dataclasses import dataclass, asdict

import numpy as np

from .transport import CumulativeDistribution


@dataclass(frozen=True)
class ComparisonReport:
    """One distribution comparison: KS in [0,1], L1 in [0,2]."""

    name: str
    ks: float | None = None
    l1: float | None = None
    n_samples: int | None = None
    bins: str | None = None

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


def ks_distance(samples: np.ndarray, reference: CumulativeDistribution) -> float:
    """sup |F_emp - F_ref| over the sample points, both one-sided gaps."""
    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        raise ValueError("need at least one sample")
    s = np.sort(samples)
    f_ref = reference(s)
    i = np.arange(1, s.size + 1)
    d_plus = np.max(i / s.size - f_ref)
    d_minus = np.max(f_ref - (i - 1) / s.size)
    return float(max(d_plus, d_minus))


def ks_distance_2d(
    samples: np.ndarray,
    density: np.ndarray,
    axis1: np.ndarray,
    axis2: np.ndarray,
) -> float:
    """Bivariate sup-CDF distance of samples against a grid density.

    Samples are binned onto the grid cells; the empirical joint CDF at the
    cell edges (exact counts) is compared with the cumulative trapezoid cell
    masses of the reference density. The sup statistic is taken for both
    axis-2 orientations, which catches sign structure a single-quadrant scan
    misses.
    """
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 2 or samples.shape[1] != 2:
        raise ValueError("samples must have shape (count, 2)")
    if samples.shape[0] == 0:
        raise ValueError("need at least one sample")
    if density.shape != (len(axis1), len(axis2)):
        raise ValueError("density shape does not match axes")

    cell = 0.25 * (
        density[1:, 1:] + density[:-1, 1:] + density[1:, :-1] + density[:-1, :-1]
    ) * (axis1[1] - axis1[0]) * (axis2[1] - axis2[0])

    i1 = np.clip(np.searchsorted(axis1, samples[:, 0], side="right") - 1, 0, len(axis1) - 2)
    i2 = np.clip(np.searchsorted(axis2, samples[:, 1], side="right") - 1, 0, len(axis2) - 2)
    counts = np.zeros(cell.shape)
    np.add.at(counts, (i1, i2), 1.0)
    counts /= samples.shape[0]

    best = 0.0
    for flip in (False, True):
        c = cell[:, ::-1] if flip else cell
        h = counts[:, ::-1] if flip else counts
        f_ref = np.cumsum(np.cumsum(c, axis=0), axis=1)
        f_ref /= f_ref[-1, -1]
        f_emp = np.cumsum(np.cumsum(h, axis=0), axis=1)
        best = max(best, float(np.max(np.abs(f_emp - f_ref))))
    return best


def l1_distance(density_a: np.ndarray, density_b: np.ndarray, spacing: float) -> float:
    """Integrated absolute difference Σ|a - b| · spacing."""
    a = np.asarray(density_a, dtype=float)
    b = np.asarray(density_b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"grid mismatch: {a.shape} vs {b.shape}")
    return float(np.sum(np.abs(a - b)) * spacing)

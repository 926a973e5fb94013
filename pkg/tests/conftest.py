"""Shared fixtures: grids and the standard state corpus."""

import pytest

import phaseflow as pf


@pytest.fixture(scope="session")
def grid1024():
    return pf.SpatialGrid1D(1024, -25.6, 0.05)


@pytest.fixture(scope="session")
def grid2048():
    return pf.SpatialGrid1D(2048, -51.2, 0.05)


def cat_spec(x0: float = 4.0, sigma: float = 1.0) -> pf.Superposition:
    return pf.Superposition(terms=(
        (1.0, pf.Gaussian(-x0, 0.0, sigma)),
        (1.0, pf.Gaussian(+x0, 0.0, sigma)),
    ))


def corpus_specs() -> list[tuple[str, object]]:
    """The states every distribution-level property is checked against."""
    return [
        ("gaussian", pf.Gaussian(0.0, 0.0, 1.0)),
        ("boosted", pf.Gaussian(1.2, 2.0, 0.7)),
        ("cat", cat_spec()),
        ("harmonic_k0", pf.HarmonicEigenstate(0)),
        ("harmonic_k1", pf.HarmonicEigenstate(1)),
        ("harmonic_k2", pf.HarmonicEigenstate(2)),
        ("harmonic_k3", pf.HarmonicEigenstate(3)),
    ]

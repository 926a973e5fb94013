"""Wigner table checks: Gaussian positivity, cat negativity, marginals.

The Gaussian oracle is the closed form W(x,p) = (1/π) e^(-x²/(2σ²) - 2σ²p²);
the cat-state fringe depth near the origin follows from the cross term,
about -(1/π) e^(-2σ²p*²) at p* = π/(2 x0), which is -0.2364 for x0 = 4,
σ = 1 (value frozen from the high-resolution run while writing the test).
"""

import numpy as np
import pytest

import phaseflow as pf
from conftest import cat_spec


@pytest.fixture(scope="module")
def wigner_grid():
    return pf.SpatialGrid1D(512, -20.48, 0.08)


@pytest.fixture(scope="module")
def gauss_wigner(wigner_grid):
    psi = pf.build(pf.Gaussian(0, 0, 1), wigner_grid)
    return psi, pf.wigner(psi)


@pytest.fixture(scope="module")
def cat_wigner(wigner_grid):
    psi = pf.build(cat_spec(), wigner_grid)
    return psi, pf.wigner(psi)


class TestWignerGaussian:
    def test_nonnegative(self, gauss_wigner):
        _, w = gauss_wigner
        assert w.values.min() >= -1e-10

    def test_matches_closed_form(self, gauss_wigner):
        _, w = gauss_wigner
        X, P = np.meshgrid(w.x_axis, w.p_axis, indexing="ij")
        oracle = (1 / np.pi) * np.exp(-(X**2) / 2 - 2 * P**2)
        np.testing.assert_allclose(w.values, oracle, atol=1e-12)

    def test_normalized(self, gauss_wigner):
        _, w = gauss_wigner
        assert abs(w.total() - 1.0) < 1e-6


class TestWignerCat:
    def test_negative_fringes(self, cat_wigner):
        _, w = cat_wigner
        value, (at_x, at_p) = pf.min_value(w)
        assert value < -0.05
        assert abs(value - (-0.2364)) < 0.002  # frozen oracle depth
        assert abs(at_x) < 0.5  # fringes live midway between the humps

    def test_normalized(self, cat_wigner):
        _, w = cat_wigner
        assert abs(w.total() - 1.0) < 1e-6

    def test_marginals_match_quantum_densities(self, cat_wigner):
        psi, w = cat_wigner
        rho_x, rho_p = pf.wigner_marginals(w)
        assert pf.l1_distance(rho_x, psi.density(), w.dx) < 1e-6
        ref_p = pf.momentum_density_on_wigner_axis(psi)
        assert pf.l1_distance(rho_p, ref_p, w.dp) < 1e-6
        # the marginals stay nonnegative even where W itself is not
        assert rho_x.min() >= -1e-12 and rho_p.min() >= -1e-12
        assert w.values.min() < -0.05


class TestWignerApi:
    def test_zero_grid_min_is_zero(self):
        w = pf.WignerGrid(
            x_axis=np.linspace(-1, 1, 16),
            p_axis=np.linspace(-1, 1, 16),
            values=np.zeros((16, 16)),
        )
        value, _ = pf.min_value(w)
        assert value == 0.0

    def test_rejects_complex_values(self):
        with pytest.raises(ValueError, match="real"):
            pf.WignerGrid(
                x_axis=np.linspace(-1, 1, 8),
                p_axis=np.linspace(-1, 1, 8),
                values=np.zeros((8, 8), dtype=complex),
            )

    def test_marginal_fidelity_for_boosted_state(self, wigner_grid):
        psi = pf.build(pf.Gaussian(1.0, 1.5, 0.8), wigner_grid)
        w = pf.wigner(psi)
        rho_x, rho_p = pf.wigner_marginals(w)
        assert pf.l1_distance(rho_x, psi.density(), w.dx) < 1e-6
        assert pf.l1_distance(rho_p, pf.momentum_density_on_wigner_axis(psi), w.dp) < 1e-6

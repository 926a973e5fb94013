"""Flow, ensemble transport, momentum assignment, and the gauge identity."""

import numpy as np
import pytest

import phaseflow as pf
import phaseflow._kernels as kernels
from phaseflow.trajectories import dbb_phase_density_momentum_marginal


def free_gaussian_snapshots(grid, t_final=2.0, snap_dt=0.01, p0=0.0):
    psi = pf.build(pf.Gaussian(0, p0, 1), grid)
    snaps = [psi]
    steps = int(round(snap_dt / 2.5e-4))
    for _ in range(int(round(t_final / snap_dt))):
        psi = pf.propagate(psi, pf.Potential(kind="free"), 2.5e-4, steps)
        snaps.append(psi)
    return snaps


class TestVelocityField:
    def test_real_state_zero_velocity(self, grid1024):
        psi = pf.build(pf.HarmonicEigenstate(0), grid1024)
        field = pf.dbb_velocity_field([psi])
        assert np.allclose(field.values[0][field.defined[0]], 0.0, atol=1e-7)

    def test_boosted_gaussian_velocity(self, grid1024):
        # linear phase p0 = 2 with mass 2 flows at v = 1
        psi = pf.build(pf.Gaussian(0, 2.0, 1), grid1024)
        field = pf.dbb_velocity_field([psi], mass=2.0)
        np.testing.assert_allclose(field.values[0][field.defined[0]], 1.0, atol=1e-7)

    def test_free_spreading_closed_form(self, grid2048):
        # v(x,t) = x tau / (2 m s0² (1+tau²)), tau = t/(2 m s0²)
        snaps = free_gaussian_snapshots(grid2048, t_final=1.5, snap_dt=0.5)
        field = pf.dbb_velocity_field(snaps)
        t, m, s0 = 1.5, 1.0, 1.0
        tau = t / (2 * m * s0**2)
        expected = grid2048.x * tau / (2 * m * s0**2 * (1 + tau**2))
        window = field.defined[-1] & (np.abs(grid2048.x) < 5)
        np.testing.assert_allclose(field.values[-1][window], expected[window], atol=1e-4)

    def test_rejects_empty_and_mixed_grids(self, grid1024, grid2048):
        with pytest.raises(ValueError, match="at least one"):
            pf.dbb_velocity_field([])
        a = pf.build(pf.Gaussian(0, 0, 1), grid1024)
        b_amps = pf.build(pf.Gaussian(0, 0, 1), grid2048)
        b = pf.Wavefunction1D(grid2048, b_amps.amps, 1.0)
        with pytest.raises(ValueError, match="common grid"):
            pf.dbb_velocity_field([a, b])


class TestSamplePositions:
    def test_uniform_mean(self):
        axis = np.linspace(2.0, 3.0, 257)
        xs = pf.sample_positions(np.ones(257), axis, 100_000, seed=11)
        # mean of U(2,3) is 2.5, sigma/sqrt(n) ~ 9.1e-4
        assert abs(xs.mean() - 2.5) < 3 * 0.2887 / np.sqrt(100_000)

    def test_gaussian_variance(self, grid1024):
        psi = pf.build(pf.Gaussian(0, 0, 1), grid1024)
        xs = pf.sample_positions(psi.density(), grid1024.x, 100_000, seed=3)
        assert 0.99 < xs.var() < 1.01

    def test_bit_identical_per_seed(self, grid1024):
        psi = pf.build(pf.Gaussian(0, 0, 1), grid1024)
        a = pf.sample_positions(psi.density(), grid1024.x, 1000, seed=9)
        b = pf.sample_positions(psi.density(), grid1024.x, 1000, seed=9)
        np.testing.assert_array_equal(a, b)

    def test_empty_and_bad_seed(self, grid1024):
        psi = pf.build(pf.Gaussian(0, 0, 1), grid1024)
        assert pf.sample_positions(psi.density(), grid1024.x, 0, seed=1).size == 0
        with pytest.raises(TypeError):
            pf.sample_positions(psi.density(), grid1024.x, 10, seed="abc")


def constant_field(grid, v, times):
    values = np.full((len(times), grid.n), v)
    defined = np.ones((len(times), grid.n), dtype=bool)
    return pf.VelocityField(grid=grid, times=np.asarray(times), values=values,
                            defined=defined, mass=1.0)


class TestIntegrate:
    def test_constant_velocity_exact(self, grid1024):
        field = constant_field(grid1024, 1.0, np.arange(0, 1.01, 0.1))
        x0 = np.array([-3.0, 0.0, 2.5])
        ens = pf.integrate(x0, field, dt=0.05)
        assert not ens.flagged.any()
        np.testing.assert_allclose(ens.positions[-1], x0 + 1.0, atol=1e-12)

    def test_zero_velocity_fixed_points(self, grid1024):
        psi = pf.build(pf.HarmonicEigenstate(0), grid1024)
        field = pf.dbb_velocity_field([
            pf.Wavefunction1D(grid1024, psi.amps, t) for t in (0.0, 0.5, 1.0)
        ])
        x0 = pf.sample_positions(psi.density(), grid1024.x, 500, seed=2)
        ens = pf.integrate(x0, field, dt=0.25)
        np.testing.assert_allclose(ens.positions[-1], ens.positions[0], atol=1e-7)

    def test_free_gaussian_equivariance(self, grid2048):
        # KS(empirical, |ψ(x,2)|²) < 0.01 at 1e5 members
        snaps = free_gaussian_snapshots(grid2048)
        field = pf.dbb_velocity_field(snaps)
        x0 = pf.sample_positions(snaps[0].density(), grid2048.x, 100_000, seed=42)
        ens = pf.integrate(x0, field, dt=0.005)
        assert ens.flagged_fraction() < 1e-3
        ks = pf.ks_distance(
            ens.positions[-1][ens.active()],
            pf.cdf(snaps[-1].density(), grid2048.x),
        )
        assert ks < 0.01

    def test_no_crossing_every_step(self, grid2048):
        snaps = free_gaussian_snapshots(grid2048, t_final=1.0)
        field = pf.dbb_velocity_field(snaps)
        x0 = pf.sample_positions(snaps[0].density(), grid2048.x, 5000, seed=1)
        ens = pf.integrate(x0, field, dt=0.005)
        order = np.argsort(ens.positions[0])
        for k in range(len(ens.times)):
            assert np.all(np.diff(ens.positions[k][order]) >= 0)

    def test_escaping_trajectory_flagged(self, grid1024):
        field = constant_field(grid1024, 50.0, np.arange(0, 2.01, 0.5))
        ens = pf.integrate(np.array([0.0]), field, dt=0.25)
        assert ens.flagged.all()

    def test_dt_must_divide_mesh(self, grid1024):
        field = constant_field(grid1024, 1.0, np.arange(0, 1.01, 0.1))
        with pytest.raises(ValueError, match="divide"):
            pf.integrate(np.array([0.0]), field, dt=0.03)


class TestAssignMomenta:
    def test_harmonic_ground_constant_momenta(self, grid1024):
        # stationary sigma_x = sigma_p = 1/sqrt(2): p̂(x) = x, constant in t
        psi = pf.build(pf.HarmonicEigenstate(0), grid1024)
        times = (0.0, 0.5, 1.0)
        snaps = [pf.Wavefunction1D(grid1024, psi.amps, t) for t in times]
        field = pf.dbb_velocity_field(snaps)
        x0 = pf.sample_positions(psi.density(), grid1024.x, 20_000, seed=5)
        ens = pf.integrate(x0, field, dt=0.25)
        maps = [pf.map_from_state(s, epsilon=1, refine=4) for s in snaps]
        ens = pf.assign_momenta(ens, maps)
        np.testing.assert_allclose(ens.momenta[0], ens.momenta[-1], atol=1e-7)
        sel = np.abs(ens.positions[0]) < 2.0
        np.testing.assert_allclose(
            ens.momenta[0][sel], ens.positions[0][sel], atol=2e-3
        )

    def test_boosted_gaussian_mean_momentum(self, grid1024):
        psi = pf.build(pf.Gaussian(0, 2.0, 1), grid1024)
        mmap = pf.map_from_state(psi, epsilon=1, refine=4)
        xs = pf.sample_positions(psi.density(), grid1024.x, 100_000, seed=8)
        ps = mmap.momentum_at(xs)
        assert abs(ps.mean() - 2.0) < 0.01

    def test_median_carries_median(self, grid1024):
        psi = pf.build(pf.Gaussian(0.7, -0.5, 1.3), grid1024)
        mmap = pf.map_from_state(psi, epsilon=1, refine=4)
        F_x, F_p = pf.state_cdfs(psi, refine=4)
        x_med, _ = pf.quantile(F_x, 0.5)
        p_med, _ = pf.quantile(F_p, 0.5)
        assert abs(mmap.momentum_at(x_med) - p_med) < 1e-6

    def test_missing_map_rejected(self, grid1024):
        field = constant_field(grid1024, 0.0, (0.0, 0.5))
        ens = pf.integrate(np.array([0.0]), field, dt=0.5)
        psi = pf.build(pf.Gaussian(0, 0, 1), grid1024)
        with pytest.raises(ValueError, match="one map per"):
            pf.assign_momenta(ens, [pf.map_from_state(psi)])
        wrong_t = pf.map_from_state(psi)  # t = 0 twice, mesh wants 0 and 0.5
        with pytest.raises(ValueError, match="does not match"):
            pf.assign_momenta(ens, [wrong_t, wrong_t])


class TestGaugeField:
    def test_boosted_gaussian_gauge(self, grid2048):
        # v = 2 and p̂(x) = 2 + x/2 give A(x) = -x/2
        psi = pf.build(pf.Gaussian(0, 2.0, 1), grid2048)
        field = pf.dbb_velocity_field([psi])
        mmap = pf.map_from_state(psi, epsilon=1, refine=32)
        gauge = pf.gauge_field(field, [mmap])
        window = gauge.defined[0] & (np.abs(grid2048.x) < 3)
        np.testing.assert_allclose(
            gauge.values[0][window], -0.5 * grid2048.x[window], atol=1e-4
        )

    def test_harmonic_ground_gauge(self, grid1024):
        # v = 0 so A(x) = -p̂(x) = -x
        psi = pf.build(pf.HarmonicEigenstate(0), grid1024)
        gauge = pf.gauge_field(
            pf.dbb_velocity_field([psi]),
            [pf.map_from_state(psi, epsilon=1, refine=16)],
        )
        window = gauge.defined[0] & (np.abs(grid1024.x) < 2)
        np.testing.assert_allclose(gauge.values[0][window], -grid1024.x[window], atol=1e-4)

    def test_even_real_state_zero_at_origin(self, grid1024):
        psi = pf.build(pf.HarmonicEigenstate(0), grid1024)
        gauge = pf.gauge_field(pf.dbb_velocity_field([psi]), [pf.map_from_state(psi)])
        mid = grid1024.n // 2
        assert abs(gauge.values[0][mid]) < 1e-9

    def test_gauge_identity_pointwise(self, grid2048):
        # A + p̂ = m v at every defined point, by construction to 1e-10
        snaps = free_gaussian_snapshots(grid2048, t_final=0.5, snap_dt=0.25, p0=1.0)
        field = pf.dbb_velocity_field(snaps, mass=1.3)
        maps = [pf.map_from_state(s, epsilon=1) for s in snaps]
        gauge = pf.gauge_field(field, maps)
        for k in range(len(snaps)):
            lhs = gauge.values[k] + maps[k].p_hat
            rhs = 1.3 * field.values[k]
            sel = field.defined[k]
            assert np.max(np.abs(lhs[sel] - rhs[sel])) < 1e-10


class TestDbbMomentumMarginal:
    def test_real_state_all_mass_at_zero(self, grid1024):
        psi = pf.build(pf.Gaussian(0, 0, 1), grid1024)
        marg = dbb_phase_density_momentum_marginal(psi)
        zero_bin = grid1024.n // 2
        assert abs(marg[zero_bin] * grid1024.dp - 1.0) < 1e-12
        assert np.all(marg[np.arange(grid1024.n) != zero_bin] == 0)

    def test_boosted_state_mass_at_p0(self, grid1024):
        psi = pf.build(pf.Gaussian(0, 2.0, 1), grid1024)
        marg = dbb_phase_density_momentum_marginal(psi)
        k2 = int(np.argmin(np.abs(grid1024.p - 2.0)))
        assert abs(marg[k2] * grid1024.dp - 1.0) < 1e-9

    def test_l1_contrast_large(self, grid1024):
        # delta at 0 vs the sigma_p = 1/2 Gaussian: L1 = 2 - O(bin mass)
        psi = pf.build(pf.Gaussian(0, 0, 1), grid1024)
        marg = dbb_phase_density_momentum_marginal(psi)
        rho_p = pf.to_momentum(psi).density()
        assert pf.l1_distance(marg, rho_p, grid1024.dp) > 1.5


class TestKernelParity:
    @pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba unavailable")
    def test_numpy_and_numba_agree(self, grid2048):
        snaps = free_gaussian_snapshots(grid2048, t_final=0.2)
        field = pf.dbb_velocity_field(snaps)
        x0 = pf.sample_positions(snaps[0].density(), grid2048.x, 2000, seed=77)
        args = (x0, field.values, field.defined, field.grid.x_min, field.grid.dx, 2, 0.005)
        out_np, flag_np = kernels.rk4_advect_numpy(*args)
        out_nb, flag_nb = kernels.rk4_advect_numba(*args)
        np.testing.assert_array_equal(flag_np, flag_nb)
        np.testing.assert_allclose(out_np, out_nb, atol=1e-13)

"""Acceptance suite: every release criterion at its stated tolerance.

Run with `pytest tests/test_acceptance.py -v -s` to see one pass/fail line
per criterion. Budgets and tolerances are pinned here, not configurable.
"""

import json
import time
import warnings
from pathlib import Path

import numpy as np
import pytest

import phaseflow as pf
from phaseflow import cli
from phaseflow.config import parse_config
from phaseflow.scenarios import run_scenario
from conftest import cat_spec, corpus_specs

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


def criterion(name: str, ok: bool, detail: str, elapsed: float | None = None):
    stamp = "PASS" if ok else "FAIL"
    timing = f" [{elapsed:.1f}s]" if elapsed is not None else ""
    print(f"[{stamp}] {name}: {detail}{timing}")
    assert ok, f"{name}: {detail}"


def load_reference_config(name: str, outdir) -> dict:
    data = json.loads((CONFIG_DIR / name).read_text())
    data["output_dir"] = str(outdir)
    return data


def test_marginal_fidelity_1d_static(grid1024):
    """Pushforward of |ψ|² through p̂ equals |ψ̃|², L1 < 1e-6 at n = 1024,
    for the whole corpus and both orientations, at matched resolution."""
    t0 = time.time()
    worst = 0.0
    for name, spec in corpus_specs():
        psi = pf.build(spec, grid1024)
        F_x, F_p = pf.state_cdfs(psi)
        for eps in (1, -1):
            m = pf.momentum_map(F_x, F_p, epsilon=eps)
            pushed = pf.pushforward_density(F_x, m)
            target = pf.density_from_cdf(F_p)
            worst = max(worst, pf.l1_distance(pushed, target, grid1024.dp))
    elapsed = time.time() - t0
    criterion(
        "marginal-fidelity-1d-static",
        worst < 1e-6 and elapsed < 1.0,
        f"worst L1 = {worst:.3e} (tol 1e-6), runtime {elapsed:.2f}s (budget 1 s)",
    )


@pytest.mark.parametrize("config_name", ["run1d_free.json", "run1d_coherent.json"])
def test_dynamic_marginal_fidelity(tmp_path, config_name):
    """Free and coherent-state runs, 1e5 members: position KS < 0.01 and
    momentum KS < 0.01 at every checkpoint 0 .. 2 in steps of 0.25."""
    t0 = time.time()
    config = parse_config(load_reference_config(config_name, tmp_path))
    summary = run_scenario(config)
    elapsed = time.time() - t0
    ks = {r["name"]: r["ks"] for r in summary["reports"]}
    checkpoints = summary["checks"]["checkpoints"]
    assert len(checkpoints) == 9
    assert checkpoints[0] == 0.0 and abs(checkpoints[-1] - 2.0) < 1e-9
    worst = max(ks.values())
    criterion(
        f"dynamic-marginal-fidelity[{config_name.removesuffix('.json')}]",
        summary["passed"] and worst < 0.01 and elapsed < 60.0,
        f"worst KS over {len(ks)} checks = {worst:.4f} (tol 0.01)",
        elapsed,
    )


def test_gaussian_map_closed_form():
    """p̂(x) = p0 + (σp/σx)(x - x0) for ε = +1, max error < 1e-5 over the
    central 6σ window ( |x - x0| <= 3σ )."""
    t0 = time.time()
    x0, p0, sx = 0.4, -0.6, 0.8
    grid = pf.SpatialGrid1D(4096, x0 - 102.4, 0.05)
    psi = pf.build(pf.Gaussian(x0, p0, sx), grid)
    m = pf.map_from_state(psi, epsilon=1, refine=64)
    sp = 1.0 / (2.0 * sx)
    exact = p0 + (sp / sx) * (grid.x - x0)
    window = np.abs(grid.x - x0) <= 3.0 * sx
    err = float(np.max(np.abs(m.p_hat - exact)[window]))
    criterion(
        "gaussian-map-closed-form",
        err < 1e-5,
        f"max pointwise error = {err:.2e} (tol 1e-5)",
        time.time() - t0,
    )


def test_takabayasi_contrast(tmp_path):
    """Real Gaussian: phase-gradient momentum marginal is far from |ψ̃|²
    (L1 > 1.5) while the map-based momenta match it (KS < 0.01)."""
    t0 = time.time()
    config = parse_config(load_reference_config("takabayasi.json", tmp_path))
    summary = run_scenario(config)
    elapsed = time.time() - t0
    l1 = summary["checks"]["dbb_l1"]
    ks = summary["checks"]["map_momentum_ks"]
    criterion(
        "takabayasi-contrast",
        summary["passed"] and l1 > 1.5 and ks < 0.01 and elapsed < 30.0,
        f"phase-gradient marginal L1 = {l1:.3f} (> 1.5), map momentum KS = {ks:.4f} (< 0.01)",
        elapsed,
    )


def _superposition_2d():
    return pf.Superposition(terms=(
        (1.0, pf.Gaussian2D(x0=(-1.5, -1.0), sigma=(0.9, 0.9))),
        (0.75 * np.exp(0.9j), pf.Gaussian2D(x0=(1.5, 1.0), sigma=(0.9, 0.9))),
    ))


@pytest.mark.parametrize("label,spec", [
    ("correlated-gaussian", pf.Gaussian2D(correlation=0.5)),
    ("superposition", _superposition_2d()),
])
def test_2d_three_ccs_marginals(label, spec):
    """1e5 chained samples on 128x128: the (x1,x2), (p1,x2), (p1,p2)
    empirical laws each match the grid densities, 2D KS < 0.015."""
    t0 = time.time()
    g = pf.SpatialGrid1D(128, -19.2, 0.3)
    psi = pf.build(spec, g, g)
    maps = pf.chained_maps_2d(psi, refine=8)
    samples = pf.sample_phase_space_2d(psi, maps, 100_000, seed=314)
    ks_xx = pf.ks_distance_2d(samples[:, (0, 1)], psi.density(), g.x, g.x)
    ks_px = pf.ks_distance_2d(
        samples[:, (2, 1)], pf.partial_to_momentum(psi, 1).density(), g.p, g.x
    )
    ks_pp = pf.ks_distance_2d(
        samples[:, (2, 3)], pf.full_momentum_2d(psi).density(), g.p, g.p
    )
    elapsed = time.time() - t0
    worst = max(ks_xx, ks_px, ks_pp)
    criterion(
        f"2d-three-ccs[{label}]",
        worst < 0.015 and elapsed < 120.0,
        f"KS x1x2 = {ks_xx:.4f}, p1x2 = {ks_px:.4f}, p1p2 = {ks_pp:.4f} (tol 0.015)",
        elapsed,
    )


def test_wigner_contrast():
    """Cat state at n = 512: Wigner marginals match the quantum densities
    (L1 < 1e-6) yet min W < -0.05, while the transport phase-space weights
    are nonnegative by construction."""
    t0 = time.time()
    grid = pf.SpatialGrid1D(512, -20.48, 0.08)
    psi = pf.build(cat_spec(), grid)
    w = pf.wigner(psi)
    rho_x, rho_p = pf.wigner_marginals(w)
    l1_x = pf.l1_distance(rho_x, psi.density(), w.dx)
    l1_p = pf.l1_distance(rho_p, pf.momentum_density_on_wigner_axis(psi), w.dp)
    w_min, _ = pf.min_value(w)

    mmap = pf.map_from_state(psi, epsilon=1, refine=8)
    xs = pf.sample_positions(psi.density(), grid.x, 50_000, seed=5)
    hist, _, _ = np.histogram2d(xs, mmap.momentum_at(xs), bins=64)
    transport_min = hist.min() / len(xs)

    elapsed = time.time() - t0
    criterion(
        "wigner-contrast",
        l1_x < 1e-6 and l1_p < 1e-6 and w_min < -0.05 and transport_min >= 0.0
        and elapsed < 10.0,
        f"marginal L1 = ({l1_x:.1e}, {l1_p:.1e}) < 1e-6, min W = {w_min:.3f} < -0.05, "
        f"transport density min = {transport_min:.1f} >= 0",
        elapsed,
    )


def test_propagator_convergence():
    """Halving dt divides the error against the analytic coherent-state
    evolution by 3 to 5; norm drift stays below 1e-9 per 1e4 steps."""
    t0 = time.time()
    grid = pf.SpatialGrid1D(2048, -20.48, 0.02)
    psi0 = pf.build(pf.Gaussian(2.0, 0.0, 1 / np.sqrt(2)), grid)

    def analytic(t):
        xc = 2.0 * np.cos(t)
        pc = -2.0 * np.sin(t)
        amps = (1 / np.pi) ** 0.25 * np.exp(
            -((grid.x - xc) ** 2) / 2 + 1j * (pc * grid.x - t / 2 - pc * xc / 2)
        )
        return pf.grid.normalize(amps, grid.dx)

    ref = analytic(2.0)
    errs = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # convergence study uses coarse dt
        for dt, steps in ((2e-3, 1000), (1e-3, 2000)):
            out = pf.propagate(psi0, pf.Potential(kind="harmonic"), dt, steps)
            errs.append(float(np.sqrt(np.sum(np.abs(out.amps - ref) ** 2) * grid.dx)))
    ratio = errs[0] / errs[1]

    drift_run = pf.propagate(psi0, pf.Potential(kind="harmonic"), 2e-4, 10_000)
    drift = abs(drift_run.norm() - 1.0)

    criterion(
        "propagator-convergence",
        3.0 <= ratio <= 5.0 and drift < 1e-9,
        f"dt-halving error ratio = {ratio:.3f} (in [3, 5]), "
        f"norm drift / 1e4 steps = {drift:.1e} (< 1e-9)",
        time.time() - t0,
    )


def test_determinism_byte_identical_csvs(tmp_path):
    """Identical config and seed give byte-identical CSV artifacts."""
    t0 = time.time()
    data = json.loads((CONFIG_DIR / "run1d_small.json").read_text())
    outs = []
    for tag in ("a", "b"):
        run_data = dict(data)
        run_data["output_dir"] = str(tmp_path / tag)
        cfg_path = tmp_path / f"{tag}.json"
        cfg_path.write_text(json.dumps(run_data))
        assert cli.main(["run", str(cfg_path)]) == 0
        outs.append(tmp_path / tag)
    mismatched = []
    csvs = sorted(p.name for p in outs[0].glob("*.csv"))
    assert csvs
    for name in csvs:
        if (outs[0] / name).read_bytes() != (outs[1] / name).read_bytes():
            mismatched.append(name)
    criterion(
        "determinism-byte-identical",
        not mismatched,
        f"{len(csvs)} CSV files compared, mismatches: {mismatched or 'none'}",
        time.time() - t0,
    )

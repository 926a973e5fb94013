"""Hot numeric kernels: numba-jitted with a pure-numpy twin.

The numba path is used when importable; set PHASEFLOW_PURE_NUMPY=1 to force
the numpy fallback (the benchmark in benchmarks/bench_kernels.py compares
both). Both paths perform the same per-particle IEEE arithmetic, so results
agree to the last bit for identical inputs.

The advection kernel integrates every ensemble member through the tabulated
velocity field with classical RK4, velocity linearly interpolated in x within
a snapshot and linearly blended in t between consecutive snapshots. A particle
whose stage evaluation leaves the grid or touches a masked (node) cell is
flagged and frozen; callers exclude flagged members from statistics.
"""

from __future__ import annotations

import os

import numpy as np

_FORCE_NUMPY = os.environ.get("PHASEFLOW_PURE_NUMPY", "") not in ("", "0")

if not _FORCE_NUMPY:
    try:
        from numba import njit, prange

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - exercised via env flag instead
        HAVE_NUMBA = False
else:
    HAVE_NUMBA = False

USING_NUMBA = HAVE_NUMBA


def rk4_advect_numpy(x0, v_tab, defined, x_min, dx, n_sub, dt):
    """Vectorized fallback; mirrors the jitted kernel stage by stage."""
    n_snap, n_grid = v_tab.shape
    count = x0.shape[0]
    out = np.empty((n_snap, count))
    out[0] = x0
    flagged = np.zeros(count, dtype=np.bool_)
    xi = x0.copy()
    inv_dx = 1.0 / dx

    def stage(xq, k, f):
        r = (xq - x_min) * inv_dx
        j = r.astype(np.int64)
        bad = (r < 0) | (j >= n_grid - 1)
        j = np.clip(j, 0, n_grid - 2)
        bad |= ~(defined[k, j] & defined[k, j + 1] & defined[k + 1, j] & defined[k + 1, j + 1])
        w = r - j
        a = v_tab[k, j] * (1 - w) + v_tab[k, j + 1] * w
        b = v_tab[k + 1, j] * (1 - w) + v_tab[k + 1, j + 1] * w
        return (1 - f) * a + f * b, bad

    for k in range(n_snap - 1):
        for s in range(n_sub):
            f0 = s / n_sub
            fm = (s + 0.5) / n_sub
            f1 = (s + 1.0) / n_sub
            k1, b1 = stage(xi, k, f0)
            k2, b2 = stage(xi + 0.5 * dt * k1, k, fm)
            k3, b3 = stage(xi + 0.5 * dt * k2, k, fm)
            k4, b4 = stage(xi + dt * k3, k, f1)
            bad = b1 | b2 | b3 | b4
            flagged |= bad
            step = dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            xi = np.where(flagged, xi, xi + step)
        out[k + 1] = xi
    return out, flagged


if HAVE_NUMBA:

    @njit(cache=True, parallel=True)
    def _rk4_advect_jit(x0, v_tab, defined, x_min, dx, n_sub, dt, out, flagged):
        n_snap, n_grid = v_tab.shape
        count = x0.shape[0]
        inv_dx = 1.0 / dx
        for i in prange(count):
            xi = x0[i]
            out[0, i] = xi
            dead = False
            for k in range(n_snap - 1):
                if not dead:
                    for s in range(n_sub):
                        f0 = s / n_sub
                        fm = (s + 0.5) / n_sub
                        f1 = (s + 1.0) / n_sub
                        ks = np.empty(4)
                        fs = (f0, fm, fm, f1)
                        cs = (0.0, 0.5, 0.5, 1.0)
                        prev = 0.0
                        ok = True
                        for stage in range(4):
                            xq = xi + cs[stage] * dt * prev
                            r = (xq - x_min) * inv_dx
                            j = int(r)
                            if r < 0 or j >= n_grid - 1:
                                ok = False
                                break
                            if not (
                                defined[k, j]
                                and defined[k, j + 1]
                                and defined[k + 1, j]
                                and defined[k + 1, j + 1]
                            ):
                                ok = False
                                break
                            w = r - j
                            f = fs[stage]
                            a = v_tab[k, j] * (1 - w) + v_tab[k, j + 1] * w
                            b = v_tab[k + 1, j] * (1 - w) + v_tab[k + 1, j + 1] * w
                            ks[stage] = (1 - f) * a + f * b
                            prev = ks[stage]
                        if not ok:
                            flagged[i] = True
                            dead = True
                            break
                        xi = xi + dt / 6.0 * (ks[0] + 2.0 * ks[1] + 2.0 * ks[2] + ks[3])
                out[k + 1, i] = xi

    def rk4_advect_numba(x0, v_tab, defined, x_min, dx, n_sub, dt):
        out = np.empty((v_tab.shape[0], x0.shape[0]))
        flagged = np.zeros(x0.shape[0], dtype=np.bool_)
        _rk4_advect_jit(x0, v_tab, defined, float(x_min), float(dx), n_sub, dt, out, flagged)
        return out, flagged

    rk4_advect = rk4_advect_numba
else:
    rk4_advect_numba = None
    rk4_advect = rk4_advect_numpy

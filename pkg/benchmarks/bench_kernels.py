#!/usr/bin/env python3
"""Benchmark the jitted ensemble-advection kernel against the numpy twin.

The advection loop dominates the dynamic scenarios (1e5 members, hundreds of
snapshot intervals, four interpolated stages per substep), which is why it
carries a numba kernel with the numpy path as fallback. Run:

    python3 benchmarks/bench_kernels.py [--members N] [--repeats R]

The numpy path can also be forced package-wide with PHASEFLOW_PURE_NUMPY=1;
this script times both implementations directly in one process.
"""

import argparse
import time

import phaseflow as pf
import phaseflow._kernels as kernels


def build_workload(members: int):
    grid = pf.SpatialGrid1D(2048, -25.6, 0.025)
    psi = pf.build(pf.Gaussian(0, 0, 1), grid)
    snaps = [psi]
    for _ in range(200):
        psi = pf.propagate(psi, pf.Potential(kind="free"), 2.5e-4, 40)
        snaps.append(psi)
    field = pf.dbb_velocity_field(snaps)
    x0 = pf.sample_positions(snaps[0].density(), grid.x, members, seed=42)
    return field, x0


def time_kernel(fn, field, x0, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(x0, field.values, field.defined, field.grid.x_min, field.grid.dx, 2, 0.005)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--members", type=int, default=100_000)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    print(f"building workload: {args.members} members, 201 snapshots, 2048-point grid")
    field, x0 = build_workload(args.members)

    t_numpy = time_kernel(kernels.rk4_advect_numpy, field, x0, args.repeats)
    print(f"numpy   : {t_numpy:8.3f} s")

    if kernels.HAVE_NUMBA:
        kernels.rk4_advect_numba(x0[:16], field.values, field.defined,
                                 field.grid.x_min, field.grid.dx, 2, 0.005)  # warm the jit
        t_numba = time_kernel(kernels.rk4_advect_numba, field, x0, args.repeats)
        print(f"numba   : {t_numba:8.3f} s")
        print(f"speedup : {t_numpy / t_numba:8.1f} x")
    else:
        print("numba   : unavailable (or disabled); fallback path only")


if __name__ == "__main__":
    main()

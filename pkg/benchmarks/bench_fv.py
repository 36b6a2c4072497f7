"""Times the finite-volume step kernels: pure numpy vs compiled.

Run from a checkout with the package installed:

    python3 benchmarks/bench_fv.py [--cells 20000] [--steps 400]

Reports cell updates per second for each available backend and the
speedup of the compiled kernel over the numpy one.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from chaplab.fv import Grid1D, from_riemann
from chaplab.fv import _kernel_py
from chaplab.model import Friction, PressureParams, PrimState, RiemannProblem

try:
    from chaplab.fv import _kernel as _kernel_c
except ImportError:
    _kernel_c = None


def _bench(kernel, rho, mom, dx, steps, p, f) -> float:
    r = rho.copy()
    m = mom.copy()
    t0 = time.perf_counter()
    for _ in range(steps):
        kernel.step_kernel(r, m, dx, 0.45, np.inf, p.A, p.B, p.n, p.alpha, f.beta)
    return time.perf_counter() - t0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cells", type=int, default=20000)
    ap.add_argument("--steps", type=int, default=400)
    args = ap.parse_args()

    prob = RiemannProblem(
        left=PrimState(1.0, 1.0),
        right=PrimState(4.0, -1.0),
        pressure=PressureParams(A=1.0, B=1.0, n=2.0, alpha=0.5),
        friction=Friction(0.5),
    )
    grid = Grid1D(-1.0, 1.0, args.cells)
    state = from_riemann(grid, prob)
    updates = args.cells * args.steps

    t_py = _bench(_kernel_py, state.rho, state.mom, grid.dx, args.steps, prob.pressure, prob.friction)
    print(f"python   backend: {t_py:8.3f} s  ({updates / t_py:.3e} cell updates/s)")

    if _kernel_c is None:
        print("compiled backend: not built (pip install -e . rebuilds it when cython is present)")
        return
    t_c = _bench(_kernel_c, state.rho, state.mom, grid.dx, args.steps, prob.pressure, prob.friction)
    print(f"compiled backend: {t_c:8.3f} s  ({updates / t_c:.3e} cell updates/s)")
    print(f"speedup: {t_py / t_c:.2f}x")


if __name__ == "__main__":
    main()

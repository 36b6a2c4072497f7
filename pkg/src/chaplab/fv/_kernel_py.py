"""Pure numpy step kernel; reference implementation for the compiled one.

Both kernels perform the same operations in the same order so their
results agree to round-off: local Lax-Friedrichs fluxes with copied
ghost cells, a conservative update, then the exact friction substep
applied to the updated momentum.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"


def step_kernel(
    rho: np.ndarray,
    mom: np.ndarray,
    dx: float,
    cfl: float,
    dt_cap: float,
    A: float,
    B: float,
    n: float,
    alpha: float,
    beta: float,
) -> float:
    """Advance (rho, mom) in place by one step; returns the dt taken.

    Returns 0.0 when no positive wave speed exists (the caller treats
    that as a collapsed step).  The B-dependent terms are skipped when
    B is zero so vanishing densities do not poison the arrays with
    0 * inf.
    """
    u = mom / rho
    c2 = A * n * rho ** (n - 1.0)
    if B > 0.0:
        c2 = c2 + alpha * B * rho ** (-alpha - 1.0)
    s = np.abs(u) + np.sqrt(c2)
    smax = float(s.max())
    if not math.isfinite(smax) or smax <= 0.0:
        return 0.0
    dt = cfl * dx / smax
    if dt > dt_cap:
        dt = dt_cap

    p = A * rho**n
    if B > 0.0:
        p = p - B * rho**-alpha
    f_rho = mom
    f_mom = mom * u + p

    # copied ghost cells on both ends (free outflow)
    re = np.concatenate((rho[:1], rho, rho[-1:]))
    me = np.concatenate((mom[:1], mom, mom[-1:]))
    fre = np.concatenate((f_rho[:1], f_rho, f_rho[-1:]))
    fme = np.concatenate((f_mom[:1], f_mom, f_mom[-1:]))
    se = np.concatenate((s[:1], s, s[-1:]))

    a = np.maximum(se[:-1], se[1:])
    flux_rho = 0.5 * (fre[:-1] + fre[1:]) - 0.5 * a * (re[1:] - re[:-1])
    flux_mom = 0.5 * (fme[:-1] + fme[1:]) - 0.5 * a * (me[1:] - me[:-1])

    lam = dt / dx
    rho -= lam * (flux_rho[1:] - flux_rho[:-1])
    mom -= lam * (flux_mom[1:] - flux_mom[:-1])
    # friction substep, exact for the split ODE m' = beta * rho
    mom += beta * rho * dt
    return dt

"""Shared generators and independent oracles for the test suite.

Every randomized test draws from a ``random.Random`` seeded at the call
site, so failures reproduce exactly.  The constructive problem builder
walks the wave curves forward from a chosen star state; the solver must
recover that state, which makes it an oracle independent of the solver's
own root finding.
"""

from __future__ import annotations

import random
from typing import Callable

from chaplab.exact_solver import Region
from chaplab.limit_systems import delta_formation_report
from chaplab.model import Friction, PressureParams, PrimState, RiemannProblem, TransState
from chaplab.wave_curves import CurveKind, Family, curve_v

#: wave pattern (1-wave kind, 2-wave kind) of each region
REGION_PATTERN = {
    Region.I: (CurveKind.RAREFACTION, CurveKind.RAREFACTION),
    Region.II: (CurveKind.SHOCK, CurveKind.RAREFACTION),
    Region.III: (CurveKind.RAREFACTION, CurveKind.SHOCK),
    Region.IV: (CurveKind.SHOCK, CurveKind.SHOCK),
}


def random_pressure(rng: random.Random, lo: float = 0.1, hi: float = 2.0) -> PressureParams:
    """Nondegenerate pressure constants in the well-behaved test range."""
    return PressureParams(
        A=rng.uniform(lo, hi),
        B=rng.uniform(lo, hi),
        n=float(rng.choice((1, 2, 3))),
        alpha=rng.choice((0.5, 1.0)),
    )


def make_region_problem(
    rng: random.Random,
    region: Region,
    beta: float = 0.0,
    p: PressureParams | None = None,
) -> tuple[RiemannProblem, float, float]:
    """Problem with a known star state lying strictly inside ``region``.

    Draws the left state and the star density on the correct side of
    rho_l, reads v* off the forward 1-curve, then places the right state
    on the forward 2-curve through the star.  Returns (problem,
    rho_star, v_star); solving the problem must recover the pair.

    Density ratios stay at least 5% away from 1 so the region label is
    unambiguous, and at t = 0 the physical u equals the transformed v,
    so the states can be used as data for any beta.
    """
    if p is None:
        p = random_pressure(rng)
    one_kind, two_kind = REGION_PATTERN[region]
    left = TransState(rng.uniform(0.4, 2.5), rng.uniform(-1.5, 1.5))

    if one_kind is CurveKind.RAREFACTION:
        rho_star = left.rho * rng.uniform(0.35, 0.95)
    else:
        rho_star = left.rho * rng.uniform(1.05, 2.5)
    v_star = curve_v(Family.ONE, one_kind, left, rho_star, p)
    star = TransState(rho_star, v_star)

    if two_kind is CurveKind.RAREFACTION:
        rho_r = rho_star * rng.uniform(1.05, 2.5)
    else:
        rho_r = rho_star * rng.uniform(0.35, 0.95)
    v_r = curve_v(Family.TWO, two_kind, star, rho_r, p)

    prob = RiemannProblem(
        left=PrimState(left.rho, left.v),
        right=PrimState(rho_r, v_r),
        pressure=p,
        friction=Friction(beta),
    )
    return prob, rho_star, v_star


def random_pressureless_collision(rng: random.Random) -> tuple[PrimState, PrimState]:
    """Colliding data (u_l > u_r) for the pressureless delta branch."""
    u_r = rng.uniform(-2.0, 2.0)
    u_l = u_r + rng.uniform(0.1, 3.0)
    return PrimState(rng.uniform(0.2, 5.0), u_l), PrimState(rng.uniform(0.2, 5.0), u_r)


def random_gchaplygin_collision(
    rng: random.Random,
) -> tuple[PrimState, PrimState, float, float]:
    """Data passing the generalized Chaplygin delta-formation conditions.

    Rejection-sampled: most strongly colliding draws pass, weak ones are
    redrawn until the discriminant and entropy checks both hold.
    """
    while True:
        B = rng.uniform(0.05, 2.0)
        alpha = rng.choice((0.5, 1.0))
        left = PrimState(rng.uniform(0.3, 4.0), rng.uniform(-1.0, 3.0))
        right = PrimState(rng.uniform(0.3, 4.0), left.u - rng.uniform(0.5, 4.0))
        rep = delta_formation_report(left, right, B, alpha)
        if rep.discriminant_ok and rep.entropy_ok:
            return left, right, B, alpha


def bisect(f: Callable[[float], float], lo: float, hi: float, iters: int = 200) -> float:
    """Plain bisection, the reference root finder for oracle values."""
    flo = f(lo)
    if flo == 0.0:
        return lo
    if flo * f(hi) > 0.0:
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi = mid
        else:
            lo = mid
            flo = fm
    return 0.5 * (lo + hi)

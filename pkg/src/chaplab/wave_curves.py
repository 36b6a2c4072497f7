"""Elementary wave curves of the friction-removed system.

Everything here lives at the level of the conservative variables
(rho, v): characteristic speeds, the rarefaction curves

    R1:  v = v0 - integral_{rho0}^{rho} c(s)/s ds   (rho <= rho0),
    R2:  v = v0 + integral_{rho0}^{rho} c(s)/s ds   (rho >= rho0),

and the shock loci obtained from the jump conditions,

    v - v0 = -sqrt( (rho - rho0)/(rho rho0) *
                    (A (rho^n - rho0^n) - B (rho^-alpha - rho0^-alpha)) ),

with the 1-locus on rho > rho0 and the 2-locus on rho < rho0 (the
radicand is symmetric in the two densities and positive on both sides).
Friction enters only through the uniform drift beta t added to every
speed, so the Lax conditions and all curve geometry are t-independent.
"""

from __future__ import annotations

import enum
import math

from scipy.integrate import quad

from chaplab.errors import (
    BranchError,
    DegenerateJumpError,
    DomainError,
    QuadratureError,
)
from chaplab.model import Friction, PressureParams, TransState, sound_speed

__all__ = [
    "Family",
    "CurveKind",
    "char_speed",
    "rarefaction_integral",
    "hugoniot_jump",
    "curve_v",
    "backward_curve_v",
    "shock_speed",
    "entropy_ok",
]

#: absolute tolerance of the rarefaction-curve quadrature
QUAD_ABS_TOL = 1e-10
#: hard cap on adaptive subdivisions
QUAD_LIMIT = 200


class Family(enum.IntEnum):
    """Characteristic family: ONE is v + beta t - c, TWO is v + beta t + c."""

    ONE = 1
    TWO = 2


class CurveKind(enum.Enum):
    RAREFACTION = "rarefaction"
    SHOCK = "shock"


def char_speed(family: Family, s: TransState, t: float, p: PressureParams, f: Friction) -> float:
    """Characteristic speed of the chosen family at state s and time t."""
    c = sound_speed(s.rho, p)
    if family == Family.ONE:
        return s.v + f.beta * t - c
    return s.v + f.beta * t + c


def rarefaction_integral(rho_a: float, rho_b: float, p: PressureParams) -> float:
    """Integral of c(s)/s over [rho_a, rho_b], the velocity span of a fan.

    Requires 0 < rho_a <= rho_b.  Integrated in log density, y = ln s,
    where the Chaplygin singularity at s -> 0 becomes a plain exponential
    boundary layer: on intervals skewed across many decades (bracket
    expansion drives rho_a below 1e-8 rho_b) the linear-space quadrature
    silently loses the layer, while in y it is resolved in a few
    bisections.  Failure to reach ``QUAD_ABS_TOL`` absolute or 1e-8
    relative accuracy raises :class:`QuadratureError`.
    """
    if not (rho_a > 0.0 and math.isfinite(rho_a) and math.isfinite(rho_b)):
        raise DomainError(f"integration bounds must be finite with rho_a > 0, got [{rho_a}, {rho_b}]")
    if rho_a > rho_b:
        raise DomainError(f"bounds must satisfy rho_a <= rho_b, got [{rho_a}, {rho_b}]")
    if rho_a == rho_b:
        return 0.0

    half = 0.5 * (p.alpha + 1.0)

    def integrand(y: float) -> float:
        # c(e^y), factored so the Chaplygin term never overflows:
        # exp(-half y) sqrt(A n e^{(n + alpha) y} + alpha B)
        return math.exp(-half * y) * math.sqrt(
            p.A * p.n * math.exp((p.n + p.alpha) * y) + p.alpha * p.B
        )

    # full_output silences the round-off warning; the estimate below is
    # the acceptance test, not the warning
    out = quad(
        integrand,
        math.log(rho_a),
        math.log(rho_b),
        epsabs=QUAD_ABS_TOL,
        epsrel=1e-12,
        limit=QUAD_LIMIT,
        full_output=1,
    )
    value, abserr = out[0], out[1]
    if not math.isfinite(value) or (
        abserr > QUAD_ABS_TOL * 10.0 and abserr > 1e-8 * abs(value)
    ):
        raise QuadratureError(
            f"rarefaction integral over [{rho_a}, {rho_b}] reached error estimate {abserr:.3e}"
        )
    return value


def hugoniot_jump(rho: float, rho0: float, p: PressureParams) -> float:
    """|v - v0| across the shock joining densities rho0 and rho.

    The squared jump is (rho - rho0)/(rho rho0) * (P(rho) - P(rho0));
    symmetric in its density arguments and positive for rho != rho0.
    """
    if rho <= 0.0 or rho0 <= 0.0:
        raise DomainError("densities must be positive")
    try:
        dp = p.A * (rho**p.n - rho0**p.n) - p.B * (rho**-p.alpha - rho0**-p.alpha)
        radicand = (rho - rho0) / (rho * rho0) * dp
    except OverflowError:
        return math.inf
    # round-off can push a zero-strength jump a hair negative
    return math.sqrt(max(radicand, 0.0))


def curve_v(
    family: Family,
    kind: CurveKind,
    anchor: TransState,
    rho: float,
    p: PressureParams,
) -> float:
    """Velocity on the forward wave curve of (family, kind) through ``anchor``.

    Branch domains, anchors inclusive: 1-rarefactions and 2-shocks live on
    rho <= anchor.rho, 1-shocks and 2-rarefactions on rho >= anchor.rho.
    Velocity decreases with rho along every 1-curve and increases along
    every 2-curve.
    """
    if rho <= 0.0:
        raise DomainError(f"density must be positive, got {rho}")
    below = rho <= anchor.rho
    if kind == CurveKind.RAREFACTION:
        if family == Family.ONE:
            if not below:
                raise BranchError(f"1-rarefaction needs rho <= {anchor.rho}, got {rho}")
            return anchor.v + rarefaction_integral(rho, anchor.rho, p)
        if rho < anchor.rho:
            raise BranchError(f"2-rarefaction needs rho >= {anchor.rho}, got {rho}")
        return anchor.v + rarefaction_integral(anchor.rho, rho, p)
    if family == Family.ONE:
        if rho < anchor.rho:
            raise BranchError(f"1-shock needs rho >= {anchor.rho}, got {rho}")
    elif not below:
        raise BranchError(f"2-shock needs rho <= {anchor.rho}, got {rho}")
    return anchor.v - hugoniot_jump(rho, anchor.rho, p)


def backward_curve_v(to: TransState, rho: float, p: PressureParams) -> float:
    """Velocity at density rho of the state that reaches ``to`` by a 2-wave.

    This is the curve the solver intersects with the forward 1-curve: a
    2-rarefaction branch for rho <= to.rho and an admissible 2-shock
    branch for rho > to.rho.  Strictly increasing in rho.
    """
    if rho <= 0.0:
        raise DomainError(f"density must be positive, got {rho}")
    if rho <= to.rho:
        return to.v - rarefaction_integral(rho, to.rho, p)
    return to.v + hugoniot_jump(rho, to.rho, p)


def shock_speed(left: TransState, right: TransState, t: float, f: Friction) -> float:
    """Shock speed from mass conservation across the jump.

    sigma(t) = (rho_r v_r - rho_l v_l) / (rho_r - rho_l) + beta t; the
    friction drift shifts every speed uniformly.
    """
    if right.rho == left.rho:
        raise DegenerateJumpError("shock speed undefined across equal densities")
    sigma0 = (right.rho * right.v - left.rho * left.v) / (right.rho - left.rho)
    return sigma0 + f.beta * t


def entropy_ok(
    family: Family,
    left: TransState,
    right: TransState,
    t: float,
    p: PressureParams,
    f: Friction,
) -> bool:
    """Strict Lax admissibility of the jump left -> right for the family.

    1-shocks: sigma < lambda1(left) and lambda1(right) < sigma < lambda2(right).
    2-shocks: lambda1(left) < sigma < lambda2(left) and lambda2(right) < sigma.
    Zero margin: borderline equalities (characteristic shocks, e.g. the
    pure Chaplygin case A = 0, alpha = 1) report False.
    """
    sigma = shock_speed(left, right, t, f)
    l1_l = char_speed(Family.ONE, left, t, p, f)
    l2_l = char_speed(Family.TWO, left, t, p, f)
    l1_r = char_speed(Family.ONE, right, t, p, f)
    l2_r = char_speed(Family.TWO, right, t, p, f)
    if family == Family.ONE:
        return sigma < l1_l and l1_r < sigma < l2_r
    return l1_l < sigma < l2_l and l2_r < sigma

"""Exact Riemann solver for the extended Chaplygin gas with friction.

The solver works in the friction-removed variables (rho, v), where the
solution of two-state initial data is self-similar in
zeta = (x - beta t^2 / 2) / t.  The intermediate state (rho*, v*) is the
intersection of the forward composite 1-curve through the left state

    phi1(rho) = R1 branch for rho <= rho_l, 1-shock branch for rho > rho_l,

with the backward composite 2-curve through the right state

    phi2(rho) = R2 branch for rho <= rho_r, 2-shock branch for rho > rho_r.

phi1 is strictly decreasing and phi2 strictly increasing, so
phi1 - phi2 has at most one root; it is bracketed and polished with a
safeguarded Brent iteration.  With B > 0 the curves always intersect
(the fan velocity diverges as rho -> 0) and no vacuum occurs; with
B = 0 and n > 1 a wide enough velocity gap opens a vacuum region
between two complete rarefactions.

Every wave boundary travels on a parabola x = zeta0 t + beta t^2 / 2,
so all speeds are reported as their t = 0 values (zeta0).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from scipy.optimize import brentq

from chaplab.errors import BracketError, DomainError, WaveKindError
from chaplab.model import (
    PressureParams,
    PrimState,
    RiemannProblem,
    TransState,
    from_trans,
    pressure,
    sound_speed,
)
from chaplab.wave_curves import (
    CurveKind,
    Family,
    char_speed,
    curve_v,
    hugoniot_jump,
    rarefaction_integral,
    shock_speed,
    entropy_ok,
)

__all__ = [
    "Region",
    "IntermediateState",
    "RarefactionFan",
    "ShockWave",
    "ContactWave",
    "VacuumRegion",
    "DeltaShockWave",
    "WaveFan",
    "Vacuum",
    "VACUUM",
    "RiemannSolution",
    "classify",
    "solve",
    "sample",
    "rh_residual",
]

#: velocity tolerance for classifying data that sits on a dividing curve
CLASSIFY_TIE = 1e-13
#: relative density tolerance separating a zero-strength fan from a shock
STAR_TIE = 1e-12
#: bracket expansion cap; beyond this the data is in the delta-shock regime
RHO_BRACKET_CAP = 1e250
#: lower bracket shrink floor
RHO_BRACKET_FLOOR = 1e-280
#: root tolerances for the intermediate state and fan inversion
ROOT_RTOL = 8.9e-16


class Region(str, enum.Enum):
    """Phase-plane region of the right state relative to the left state.

    The region names the wave pattern: I two rarefactions, II 1-shock +
    2-rarefaction, III 1-rarefaction + 2-shock, IV two shocks.
    """

    I = "I"
    II = "II"
    III = "III"
    IV = "IV"


@dataclass(frozen=True)
class IntermediateState:
    rho_star: float
    v_star: float


@dataclass(frozen=True)
class RarefactionFan:
    """Centered fan; edge speeds are t = 0 values of the family speed.

    zeta_head is the edge bordering ``state_before`` (the smaller zeta),
    zeta_tail the edge bordering ``state_after``; zeta_head <= zeta_tail
    for both families.  A ``None`` state marks a fan opening onto vacuum.
    """

    family: Family
    zeta_head: float
    zeta_tail: float
    state_before: TransState | None
    state_after: TransState | None


@dataclass(frozen=True)
class ShockWave:
    family: Family
    sigma0: float
    state_before: TransState
    state_after: TransState


@dataclass(frozen=True)
class ContactWave:
    sigma0: float
    state_before: TransState
    state_after: TransState


@dataclass(frozen=True)
class VacuumRegion:
    zeta_left: float
    zeta_right: float


@dataclass(frozen=True)
class DeltaShockWave:
    """Delta shock marker for limit-system solutions rendered as waves.

    The exact solver never emits one; the carried mass grows like
    weight_rate * t and is reported through the weight law, not by
    sampling.
    """

    sigma0: float
    weight_rate: float
    state_before: TransState
    state_after: TransState


WaveFan = RarefactionFan | ShockWave | ContactWave | VacuumRegion | DeltaShockWave


class Vacuum:
    """Marker returned when sampling inside a vacuum region."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "VACUUM"


VACUUM = Vacuum()


@dataclass(frozen=True)
class RiemannSolution:
    problem: RiemannProblem
    region: Region
    waves: tuple[WaveFan, ...]
    intermediate: IntermediateState | None
    notes: tuple[str, ...] = ()

    def sample(self, x: float, t: float) -> PrimState | Vacuum:
        return sample(self, x, t)


def _phi1(rho: float, left: TransState, p: PressureParams) -> float:
    """Forward composite 1-curve through the left state; strictly decreasing."""
    if rho <= left.rho:
        return left.v + rarefaction_integral(rho, left.rho, p)
    return left.v - hugoniot_jump(rho, left.rho, p)


def _phi2(rho: float, right: TransState, p: PressureParams) -> float:
    """Backward composite 2-curve through the right state; strictly increasing."""
    if rho <= right.rho:
        return right.v - rarefaction_integral(rho, right.rho, p)
    return right.v + hugoniot_jump(rho, right.rho, p)


def _escape_velocity_span(rho: float, p: PressureParams) -> float | None:
    """Total fan velocity span down to vacuum, or None when it diverges.

    integral_0^rho c(s)/s ds is finite only for B = 0 and n > 1, where it
    equals 2 sqrt(A n) rho^((n-1)/2) / (n - 1).
    """
    if p.B > 0.0 or p.n <= 1.0:
        return None
    return 2.0 * math.sqrt(p.A * p.n) * rho ** ((p.n - 1.0) / 2.0) / (p.n - 1.0)


def classify(prob: RiemannProblem) -> Region:
    """Locate the right state among the four wave curves through the left state.

    Region I if both waves are rarefactions, II for 1-shock + 2-rarefaction,
    III for 1-rarefaction + 2-shock, IV for two shocks.  Data within
    ``CLASSIFY_TIE`` of a dividing curve classifies toward the region whose
    extra wave is a rarefaction, so zero-strength waves degenerate to fans.
    """
    p = prob.pressure
    if p.degenerate:
        raise DomainError("classification needs A, B not both zero")
    left = TransState(prob.left.rho, prob.left.u)
    rho_r, v_r = prob.right.rho, prob.right.u
    if rho_r >= left.rho:
        upper = curve_v(Family.TWO, CurveKind.RAREFACTION, left, rho_r, p)
        lower = curve_v(Family.ONE, CurveKind.SHOCK, left, rho_r, p)
        if v_r >= upper - CLASSIFY_TIE:
            return Region.I
        if v_r >= lower - CLASSIFY_TIE:
            return Region.II
        return Region.IV
    upper = curve_v(Family.ONE, CurveKind.RAREFACTION, left, rho_r, p)
    lower = curve_v(Family.TWO, CurveKind.SHOCK, left, rho_r, p)
    if v_r >= upper - CLASSIFY_TIE:
        return Region.I
    if v_r >= lower - CLASSIFY_TIE:
        return Region.III
    return Region.IV


def _find_intermediate(
    left: TransState, right: TransState, p: PressureParams
) -> tuple[float, float]:
    """Root of phi1 - phi2: the intermediate density and velocity.

    Brackets from [min(rho_l, rho_r) * 1e-6, max(rho_l, rho_r)], shrinking
    the lower end and expanding the upper end geometrically as needed.
    Hitting the expansion cap means no classical intersection exists
    below RHO_BRACKET_CAP, which is the delta-shock regime of the
    generalized Chaplygin limit.
    """

    def f(rho: float) -> float:
        return _phi1(rho, left, p) - _phi2(rho, right, p)

    rho_min = min(left.rho, right.rho)
    rho_max = max(left.rho, right.rho)

    # f is strictly decreasing; use the anchors to pick the branch interval
    if f(rho_min) <= 0.0:
        hi = rho_min
        lo = rho_min * 1e-6
        while f(lo) <= 0.0:
            lo *= 0.1
            if lo < RHO_BRACKET_FLOOR:
                raise BracketError(
                    f"no sign change above density floor {RHO_BRACKET_FLOOR:g}; "
                    "data may admit a vacuum, not an intermediate state"
                )
    elif f(rho_max) >= 0.0:
        lo = rho_max
        hi = rho_max * 10.0
        while f(hi) >= 0.0:
            hi *= 10.0
            if hi > RHO_BRACKET_CAP:
                raise BracketError(
                    f"no intersection of the shock curves below {RHO_BRACKET_CAP:g}; "
                    "data lies in the delta-shock regime (see chaplab.limit_systems)"
                )
    else:
        lo, hi = rho_min, rho_max

    rho_star = brentq(f, lo, hi, xtol=1e-300, rtol=ROOT_RTOL, maxiter=300)
    v_star = 0.5 * (_phi1(rho_star, left, p) + _phi2(rho_star, right, p))
    return rho_star, v_star


def _vacuum_solution(
    prob: RiemannProblem, left: TransState, right: TransState, span_l: float, span_r: float
) -> RiemannSolution:
    p = prob.pressure
    edge_l = left.v + span_l
    edge_r = right.v - span_r
    fan1 = RarefactionFan(Family.ONE, left.v - sound_speed(left.rho, p), edge_l, left, None)
    fan2 = RarefactionFan(Family.TWO, edge_r, right.v + sound_speed(right.rho, p), None, right)
    return RiemannSolution(
        problem=prob,
        region=Region.I,
        waves=(fan1, VacuumRegion(edge_l, edge_r), fan2),
        intermediate=None,
        notes=("vacuum opens between complete rarefactions (B = 0 data)",),
    )


def solve(prob: RiemannProblem) -> RiemannSolution:
    """Construct the exact self-similar solution of the Riemann problem.

    Returns the wave list ordered left to right with all speeds at their
    t = 0 values; identical-state data yields an empty wave list.  With
    B > 0 a vacuum never occurs; with B = 0 the two-rarefaction pattern
    degenerates to fans separated by a vacuum when the velocity gap
    exceeds the escape spans of both states.
    """
    p = prob.pressure
    if p.degenerate:
        raise DomainError("exact solver needs A, B not both zero")
    left = TransState(prob.left.rho, prob.left.u)
    right = TransState(prob.right.rho, prob.right.u)

    if left == right:
        return RiemannSolution(
            problem=prob,
            region=Region.I,
            waves=(),
            intermediate=IntermediateState(left.rho, left.v),
            notes=("identical states",),
        )

    span_l = _escape_velocity_span(left.rho, p)
    if span_l is not None:
        span_r = _escape_velocity_span(right.rho, p)
        if left.v + span_l <= right.v - span_r:
            return _vacuum_solution(prob, left, right, span_l, span_r)

    rho_star, v_star = _find_intermediate(left, right, p)
    star = TransState(rho_star, v_star)
    notes: list[str] = []

    one_is_fan = rho_star <= left.rho * (1.0 + STAR_TIE)
    two_is_fan = rho_star <= right.rho * (1.0 + STAR_TIE)

    if one_is_fan:
        head = left.v - sound_speed(left.rho, p)
        tail = v_star - sound_speed(rho_star, p)
        wave1: WaveFan = RarefactionFan(Family.ONE, head, max(tail, head), left, star)
    else:
        sigma0 = shock_speed(left, star, 0.0, prob.friction)
        wave1 = ShockWave(Family.ONE, sigma0, left, star)
        if not entropy_ok(Family.ONE, left, star, 0.0, p, prob.friction):
            notes.append("1-shock is not strictly Lax admissible (characteristic shock)")

    if two_is_fan:
        head = v_star + sound_speed(rho_star, p)
        tail = right.v + sound_speed(right.rho, p)
        wave2: WaveFan = RarefactionFan(Family.TWO, min(head, tail), tail, star, right)
    else:
        sigma0 = shock_speed(star, right, 0.0, prob.friction)
        wave2 = ShockWave(Family.TWO, sigma0, star, right)
        if not entropy_ok(Family.TWO, star, right, 0.0, p, prob.friction):
            notes.append("2-shock is not strictly Lax admissible (characteristic shock)")

    region = {
        (True, True): Region.I,
        (False, True): Region.II,
        (True, False): Region.III,
        (False, False): Region.IV,
    }[(one_is_fan, two_is_fan)]

    _check_ordering(wave1, wave2)
    return RiemannSolution(
        problem=prob,
        region=region,
        waves=(wave1, wave2),
        intermediate=IntermediateState(rho_star, v_star),
        notes=tuple(notes),
    )


def _edges(w: WaveFan) -> tuple[float, float]:
    if isinstance(w, RarefactionFan):
        return w.zeta_head, w.zeta_tail
    if isinstance(w, VacuumRegion):
        return w.zeta_left, w.zeta_right
    return w.sigma0, w.sigma0


def _check_ordering(*waves: WaveFan) -> None:
    slack = 1e-10 * (1.0 + max(abs(e) for w in waves for e in _edges(w)))
    prev = -math.inf
    for w in waves:
        lo, hi = _edges(w)
        if lo < prev - slack:
            raise BracketError(f"wave speeds out of order: {lo} after {prev}")
        prev = max(prev, hi)


def _shrink_bracket(g, hi: float) -> float:
    """Lower bracket endpoint for fan inversion toward vacuum."""
    s = g(hi)
    lo = hi
    while True:
        lo *= 0.01
        if lo < RHO_BRACKET_FLOOR:
            raise BracketError("fan inversion found no bracket above the density floor")
        if g(lo) * s <= 0.0:
            return lo


def _invert_fan(fan: RarefactionFan, zeta: float, p: PressureParams) -> TransState:
    """State inside a centered fan at similarity coordinate zeta.

    Solves (family speed)(rho) = zeta along the fan's wave curve, anchored
    at the outer constant state so edge samples reproduce the input data.
    """
    if fan.family == Family.ONE:
        anchor = fan.state_before

        def value(rho: float) -> float:
            return anchor.v + rarefaction_integral(rho, anchor.rho, p)

        def g(rho: float) -> float:
            return value(rho) - sound_speed(rho, p) - zeta

        hi = anchor.rho
        lo = fan.state_after.rho if fan.state_after is not None else _shrink_bracket(g, hi)
    else:
        anchor = fan.state_after

        def value(rho: float) -> float:
            return anchor.v - rarefaction_integral(rho, anchor.rho, p)

        def g(rho: float) -> float:
            return value(rho) + sound_speed(rho, p) - zeta

        hi = anchor.rho
        lo = fan.state_before.rho if fan.state_before is not None else _shrink_bracket(g, hi)

    rho = brentq(g, lo, hi, xtol=1e-300, rtol=ROOT_RTOL, maxiter=300)
    return TransState(rho, value(rho))


def sample(sol: RiemannSolution, x: float, t: float) -> PrimState | Vacuum:
    """Evaluate the solution at (x, t) for t > 0.

    Conventions on measure-zero sets: an exact shock position or fan tail
    returns the post-wave state, a fan head returns the pre-wave state,
    and a vacuum interval is closed (both edge rays report vacuum).
    """
    if t <= 0.0:
        raise DomainError(f"sampling requires t > 0, got {t}")
    f = sol.problem.friction
    p = sol.problem.pressure
    zeta = (x - 0.5 * f.beta * t * t) / t

    state = TransState(sol.problem.left.rho, sol.problem.left.u)
    for w in sol.waves:
        if isinstance(w, (ShockWave, ContactWave, DeltaShockWave)):
            if zeta < w.sigma0:
                return from_trans(state, t, f)
            state = w.state_after
        elif isinstance(w, RarefactionFan):
            if zeta >= w.zeta_tail:
                if w.state_after is not None:
                    state = w.state_after
                continue
            width_eps = 1e-11 * (1.0 + abs(w.zeta_head))
            if zeta <= w.zeta_head or w.zeta_tail - w.zeta_head <= width_eps:
                before = w.state_before if w.state_before is not None else state
                return from_trans(before, t, f)
            return from_trans(_invert_fan(w, zeta, p), t, f)
        else:  # VacuumRegion
            if zeta <= w.zeta_right:
                return VACUUM
    return from_trans(TransState(sol.problem.right.rho, sol.problem.right.u), t, f)


def rh_residual(sol: RiemannSolution, index: int) -> tuple[float, float]:
    """Jump-condition residuals of the shock at ``waves[index]`` at t = 0.

    r1 = sigma0 [rho] - [rho v],  r2 = sigma0 [rho v] - [rho v^2 + P];
    both are t-independent because the friction drift cancels.
    """
    w = sol.waves[index]
    if not isinstance(w, ShockWave):
        raise WaveKindError(f"waves[{index}] is {type(w).__name__}, not a shock")
    p = sol.problem.pressure
    a, b = w.state_before, w.state_after
    d_rho = b.rho - a.rho
    d_m = b.rho * b.v - a.rho * a.v
    d_flux = (b.rho * b.v * b.v + pressure(b.rho, p)) - (a.rho * a.v * a.v + pressure(a.rho, p))
    return (w.sigma0 * d_rho - d_m, w.sigma0 * d_m - d_flux)

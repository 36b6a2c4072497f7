"""Closed-form Riemann solutions of the two limiting systems.

With both pressure constants zero the model degenerates to the
pressureless (sticky-particle) system, whose Riemann solution is a
vacuum fan between two contacts for u_l < u_r, a single contact for
u_l = u_r, and for u_l > u_r a delta shock: a point mass on the path
x(t) = sigma0 t + beta t^2 / 2 carrying weight w(t) = w_coeff * t,

    sigma0 = (sqrt(rho_l) u_l + sqrt(rho_r) u_r) / (sqrt(rho_l) + sqrt(rho_r)),
    w_coeff = sqrt(rho_l rho_r) (u_l - u_r).

With only A = 0 the generalized Chaplygin pressure -B rho^(-alpha)
survives and strong enough compression still concentrates mass: the
delta speed solves the quadratic

    (rho_r - rho_l) s^2 - 2 (rho_r u_r - rho_l u_l) s
        + rho_r u_r^2 - rho_l u_l^2 - B (rho_r^-alpha - rho_l^-alpha) = 0,

whose admissible root is selected by the entropy window

    u_r + sqrt(alpha B) rho_r^(-(alpha+1)/2) < sigma0 < u_l - sqrt(alpha B) rho_l^(-(alpha+1)/2).

Both delta shocks satisfy the generalized jump conditions

    dw/dt           = sigma(t) [rho]   - [rho u],
    d(w u_delta)/dt = sigma(t) [rho u] - [rho u^2 - B rho^-alpha] + beta w,

with u_delta(t) = sigma0 + beta t; ``grh_residual`` evaluates these
identities from the stored closed forms.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from chaplab.errors import DeltaConditionError, DomainError
from chaplab.model import Friction, PrimState

__all__ = [
    "LimitSystem",
    "DeltaShockSolution",
    "TwoContactsWithVacuum",
    "SingleContact",
    "PressurelessSolution",
    "FormationReport",
    "GRHResidual",
    "solve_pressureless",
    "solve_gchaplygin_delta",
    "delta_formation_report",
    "grh_residual",
]


class LimitSystem(enum.Enum):
    PRESSURELESS = "pressureless"
    GCHAPLYGIN = "gchaplygin"


@dataclass(frozen=True)
class DeltaShockSolution:
    """Delta shock with constant strength rate on a parabolic path.

    Stores the pressure constants it was built under (B = 0 for the
    pressureless system) so the jump-condition residuals are
    self-contained.
    """

    left: PrimState
    right: PrimState
    sigma0: float
    weight_coeff: float
    beta: float
    B: float = 0.0
    alpha: float = 1.0

    def speed(self, t: float) -> float:
        return self.sigma0 + self.beta * t

    def position(self, t: float) -> float:
        return self.sigma0 * t + 0.5 * self.beta * t * t

    def weight(self, t: float) -> float:
        return self.weight_coeff * t

    def u_delta(self, t: float) -> float:
        """Velocity assigned to the carried mass; equals the path speed."""
        return self.sigma0 + self.beta * t

    def entropy_window(self, t: float = 0.0) -> tuple[float, float]:
        """Open interval the delta speed must occupy at time t."""
        gap_r = math.sqrt(self.alpha * self.B) * self.right.rho ** (-(self.alpha + 1.0) / 2.0)
        gap_l = math.sqrt(self.alpha * self.B) * self.left.rho ** (-(self.alpha + 1.0) / 2.0)
        drift = self.beta * t
        return (self.right.u + gap_r + drift, self.left.u - gap_l + drift)

    def satisfies_entropy(self, t: float = 0.0) -> bool:
        lo, hi = self.entropy_window(t)
        return lo < self.speed(t) < hi


@dataclass(frozen=True)
class TwoContactsWithVacuum:
    """Vacuum fan between two contacts, the pressureless solution for u_l < u_r."""

    left: PrimState
    right: PrimState
    beta: float

    def left_edge(self, t: float) -> float:
        return self.left.u * t + 0.5 * self.beta * t * t

    def right_edge(self, t: float) -> float:
        return self.right.u * t + 0.5 * self.beta * t * t


@dataclass(frozen=True)
class SingleContact:
    """Density jump advected at the common velocity, for u_l = u_r."""

    left: PrimState
    right: PrimState
    beta: float

    @property
    def sigma0(self) -> float:
        return self.left.u

    def position(self, t: float) -> float:
        return self.sigma0 * t + 0.5 * self.beta * t * t


PressurelessSolution = TwoContactsWithVacuum | SingleContact | DeltaShockSolution


@dataclass(frozen=True)
class FormationReport:
    """Diagnostics of the delta-formation conditions for A = 0 data.

    ``radicand`` is the discriminant-like quantity under the square root
    of the weight formula; the delta exists when it is nonnegative and
    the candidate speed sits strictly inside the entropy window.
    ``no_classical_two_shock`` reports the sharper velocity-gap test
    u_l - u_r >= sqrt(B) (rho_l^(-(a+1)/2) + rho_r^(-(a+1)/2)) beyond
    which the classical two-shock construction has no intersection; for
    alpha < 1 it differs from the entropy test and is informational only.
    """

    radicand: float
    discriminant_ok: bool
    sigma0: float | None
    weight_coeff: float | None
    entropy_lo: float
    entropy_hi: float
    entropy_ok: bool
    no_classical_two_shock: bool


def delta_formation_report(
    left: PrimState, right: PrimState, B: float, alpha: float
) -> FormationReport:
    """Evaluate the delta-shock formation conditions at t = 0."""
    if B < 0.0 or not 0.0 < alpha <= 1.0:
        raise DomainError(f"need B >= 0 and alpha in (0, 1], got B={B}, alpha={alpha}")
    rl, rr = left.rho, right.rho
    ul, ur = left.u, right.u
    radicand = rl * rr * (ur - ul) ** 2 - (rl - rr) * B * (rr**-alpha - rl**-alpha)
    discriminant_ok = radicand >= 0.0

    sigma0: float | None = None
    weight_coeff: float | None = None
    if discriminant_ok:
        weight_coeff = math.sqrt(radicand)
        if rr != rl:
            sigma0 = (rr * ur - rl * ul + weight_coeff) / (rr - rl)
        else:
            sigma0 = 0.5 * (ul + ur)

    half = (alpha + 1.0) / 2.0
    entropy_lo = ur + math.sqrt(alpha * B) * rr**-half
    entropy_hi = ul - math.sqrt(alpha * B) * rl**-half
    entropy_ok = sigma0 is not None and entropy_lo < sigma0 < entropy_hi
    no_classical = ul - ur >= math.sqrt(B) * (rl**-half + rr**-half)
    return FormationReport(
        radicand=radicand,
        discriminant_ok=discriminant_ok,
        sigma0=sigma0,
        weight_coeff=weight_coeff,
        entropy_lo=entropy_lo,
        entropy_hi=entropy_hi,
        entropy_ok=entropy_ok,
        no_classical_two_shock=no_classical,
    )


def solve_pressureless(left: PrimState, right: PrimState, f: Friction) -> PressurelessSolution:
    """Riemann solution of the pressureless system with friction.

    Colliding data (u_l > u_r) produces the delta shock; separating data
    the vacuum fan; equal velocities a single contact.
    """
    if left.u > right.u:
        sl, sr = math.sqrt(left.rho), math.sqrt(right.rho)
        sigma0 = (sl * left.u + sr * right.u) / (sl + sr)
        weight_coeff = sl * sr * (left.u - right.u)
        sol = DeltaShockSolution(
            left=left,
            right=right,
            sigma0=sigma0,
            weight_coeff=weight_coeff,
            beta=f.beta,
            B=0.0,
            alpha=1.0,
        )
        # sigma0 is a convex combination of the data velocities
        if not sol.satisfies_entropy(0.0):
            raise DeltaConditionError(f"delta speed {sigma0} escaped ({right.u}, {left.u})")
        return sol
    if left.u == right.u:
        return SingleContact(left=left, right=right, beta=f.beta)
    return TwoContactsWithVacuum(left=left, right=right, beta=f.beta)


def solve_gchaplygin_delta(
    left: PrimState, right: PrimState, B: float, alpha: float, f: Friction
) -> DeltaShockSolution:
    """Delta-shock solution of the A = 0 system for concentrating data.

    Requires the formation conditions to hold: nonnegative discriminant
    and the speed strictly inside the entropy window; otherwise raises
    :class:`DeltaConditionError` carrying the diagnostics report.

    Identical data are the one exception: they carry no jump, so the
    entropy window (which is empty there) is waived and the result is a
    zero-strength delta travelling at the common velocity.
    """
    if B <= 0.0:
        raise DomainError(f"generalized Chaplygin system needs B > 0, got {B}")
    rep = delta_formation_report(left, right, B, alpha)
    degenerate = left.rho == right.rho and left.u == right.u
    if not rep.discriminant_ok or not (rep.entropy_ok or degenerate):
        raise DeltaConditionError(
            "delta-shock formation conditions not met: "
            f"radicand={rep.radicand:.6g}, sigma0={rep.sigma0}, "
            f"entropy window=({rep.entropy_lo:.6g}, {rep.entropy_hi:.6g})"
        )
    sol = DeltaShockSolution(
        left=left,
        right=right,
        sigma0=rep.sigma0,
        weight_coeff=rep.weight_coeff,
        beta=f.beta,
        B=B,
        alpha=alpha,
    )
    _check_speed_quadratic(sol)
    return sol


def _check_speed_quadratic(sol: DeltaShockSolution) -> None:
    """The delta speed must solve the momentum-consistency quadratic."""
    rl, rr = sol.left.rho, sol.right.rho
    ul, ur = sol.left.u, sol.right.u
    s = sol.sigma0
    terms = (
        (rr - rl) * s * s,
        -2.0 * (rr * ur - rl * ul) * s,
        rr * ur * ur - rl * ul * ul,
        -sol.B * (rr**-sol.alpha - rl**-sol.alpha),
    )
    residual = math.fsum(terms)
    scale = sum(abs(x) for x in terms) + 1.0
    if abs(residual) > 1e-10 * scale:
        raise AssertionError(f"delta speed fails its quadratic: residual {residual:.3e}")


@dataclass(frozen=True)
class GRHResidual:
    r_mass: float
    r_momentum: float

    @property
    def max_abs(self) -> float:
        return max(abs(self.r_mass), abs(self.r_momentum))


def grh_residual(
    sol: DeltaShockSolution, t: float, system: LimitSystem | None = None
) -> GRHResidual:
    """Residuals of the generalized jump conditions at time t.

    Evaluates dw/dt - (sigma [rho] - [rho u]) and
    d(w u_delta)/dt - (sigma [rho u] - [rho u^2 - B rho^-alpha] + beta w)
    from the stored closed forms; both vanish identically for solutions
    built by this module, up to round-off.
    """
    if system is None:
        system = LimitSystem.PRESSURELESS if sol.B == 0.0 else LimitSystem.GCHAPLYGIN
    elif system is LimitSystem.PRESSURELESS and sol.B != 0.0:
        raise DomainError("pressureless residuals requested for a solution with B > 0")

    rl, rr = sol.left.rho, sol.right.rho
    ul_t = sol.left.u + sol.beta * t
    ur_t = sol.right.u + sol.beta * t
    sigma_t = sol.speed(t)
    w_t = sol.weight(t)

    d_rho = rr - rl
    d_mom = rr * ur_t - rl * ul_t
    d_flux = rr * ur_t * ur_t - rl * ul_t * ul_t
    if system is LimitSystem.GCHAPLYGIN:
        d_flux -= sol.B * (rr**-sol.alpha - rl**-sol.alpha)

    dw_dt = sol.weight_coeff
    dwu_dt = sol.weight_coeff * sol.sigma0 + 2.0 * sol.weight_coeff * sol.beta * t

    r_mass = dw_dt - (sigma_t * d_rho - d_mom)
    r_momentum = dwu_dt - (sigma_t * d_mom - d_flux + sol.beta * w_t)
    return GRHResidual(r_mass=r_mass, r_momentum=r_momentum)

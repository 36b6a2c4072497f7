"""Sweep machinery that watches exact solutions approach the limit systems.

A sweep re-solves one Riemann problem along a schedule of shrinking
pressure constants and records the star state and wave positions.  The
verify helpers then compare the recorded sequences against the closed
forms of the corresponding limit system: joint A = B -> 0 against the
pressureless delta shock or vacuum, A -> 0 at fixed B against the
generalized Chaplygin delta shock.  Verdicts require the final error to
be inside tolerance and the error sequence to be nonincreasing over the
last three samples, so a lucky final point does not pass on its own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from chaplab.errors import DomainError, SweepError
from chaplab.exact_solver import RarefactionFan, ShockWave, solve
from chaplab.limit_systems import (
    DeltaShockSolution,
    solve_gchaplygin_delta,
    solve_pressureless,
)
from chaplab.model import RiemannProblem
from chaplab.wave_curves import Family

__all__ = [
    "DEFAULT_TOL",
    "SweepRecord",
    "LimitVerdict",
    "DivergenceVerdict",
    "BoundVerdict",
    "ConcentrationABVerdicts",
    "CavitationABVerdicts",
    "ConcentrationAVerdicts",
    "geometric_schedule",
    "sweep_AB",
    "sweep_A",
    "verify_concentration_AB",
    "verify_cavitation_AB",
    "verify_concentration_A",
]

DEFAULT_TOL = 1e-2


def geometric_schedule(
    start: float = 1e-1, stop: float = 1e-8, count: int | None = None
) -> tuple[float, ...]:
    """Geometric sequence of pressure constants from start to stop inclusive.

    With the defaults this is one point per decade, 1e-1 down to 1e-8.
    """
    if not (start > 0.0 and stop > 0.0):
        raise DomainError(f"schedule endpoints must be positive, got {start}, {stop}")
    if count is None:
        count = int(round(abs(math.log10(stop / start)))) + 1
    if count < 1:
        raise DomainError(f"schedule needs at least one point, got count={count}")
    if count == 1:
        return (start,)
    la, lb = math.log10(start), math.log10(stop)
    return tuple(10.0 ** (la + i * (lb - la) / (count - 1)) for i in range(count))


@dataclass(frozen=True)
class SweepRecord:
    """Star state and t = 0 wave positions for one point of a schedule.

    sigma1_0 and sigma2_0 are the similarity positions of the outer
    wave edges: the shock position when the wave is a shock, the edge
    adjacent to the unperturbed data state when it is a fan.  NaN marks
    a schedule point whose solve failed.
    """

    A: float
    B: float
    rho_star: float
    v_star: float
    sigma1_0: float
    sigma2_0: float
    mass_rate: float
    momentum_rate: float
    a_rho_n: float


_NAN = math.nan


def _failed_record(A: float, B: float) -> SweepRecord:
    return SweepRecord(A, B, _NAN, _NAN, _NAN, _NAN, _NAN, _NAN, _NAN)


def _record_from_problem(prob: RiemannProblem, A: float, B: float) -> SweepRecord:
    sol = solve(prob)
    if sol.intermediate is None:
        raise DomainError("sweep hit a vacuum solution; no star state to record")
    rho_star = sol.intermediate.rho_star
    v_star = sol.intermediate.v_star
    sigma1 = sigma2 = _NAN
    for w in sol.waves:
        if isinstance(w, ShockWave):
            if w.family is Family.ONE:
                sigma1 = w.sigma0
            else:
                sigma2 = w.sigma0
        elif isinstance(w, RarefactionFan):
            if w.family is Family.ONE:
                sigma1 = w.zeta_head
            else:
                sigma2 = w.zeta_tail
    mass_rate = rho_star * (sigma2 - sigma1)
    return SweepRecord(
        A=A,
        B=B,
        rho_star=rho_star,
        v_star=v_star,
        sigma1_0=sigma1,
        sigma2_0=sigma2,
        mass_rate=mass_rate,
        momentum_rate=v_star * mass_rate,
        a_rho_n=A * rho_star**prob.pressure.n,
    )


def _run_sweep(prob: RiemannProblem, pairs: list[tuple[float, float]]) -> list[SweepRecord]:
    records: list[SweepRecord] = []
    failures: list[tuple[float, float, Exception]] = []
    for A, B in pairs:
        sub = replace(prob, pressure=replace(prob.pressure, A=A, B=B))
        try:
            records.append(_record_from_problem(sub, A, B))
        except (ValueError, RuntimeError, OverflowError) as exc:
            records.append(_failed_record(A, B))
            failures.append((A, B, exc))
    if failures:
        detail = "; ".join(f"A={a:g}, B={b:g}: {e}" for a, b, e in failures)
        raise SweepError(
            f"{len(failures)} of {len(pairs)} schedule points failed: {detail}",
            records=records,
            failures=failures,
        )
    return records


def sweep_AB(prob: RiemannProblem, schedule: tuple[float, ...]) -> list[SweepRecord]:
    """Joint sweep A = B = eps over the schedule; n, alpha held fixed."""
    return _run_sweep(prob, [(eps, eps) for eps in schedule])


def sweep_A(prob: RiemannProblem, schedule: tuple[float, ...]) -> list[SweepRecord]:
    """Sweep A over the schedule with B, n, alpha held at the problem's values."""
    if prob.pressure.B <= 0.0:
        raise DomainError("sweep_A expects a fixed B > 0; use sweep_AB for the joint limit")
    return _run_sweep(prob, [(eps, prob.pressure.B) for eps in schedule])


@dataclass(frozen=True)
class LimitVerdict:
    """Convergence of an observed sequence to a scalar target.

    Errors are relative for a nonzero target, absolute otherwise.
    """

    target: float
    observed: tuple[float, ...]
    errors: tuple[float, ...]
    last_error: float
    converged: bool

    def as_dict(self) -> dict:
        return {
            "target": self.target,
            "observed": list(self.observed),
            "errors": list(self.errors),
            "last_error": self.last_error,
            "converged": self.converged,
        }


@dataclass(frozen=True)
class DivergenceVerdict:
    """Checks that a sequence blows up rather than settles."""

    threshold: float
    observed: tuple[float, ...]
    diverged: bool

    def as_dict(self) -> dict:
        return {
            "threshold": self.threshold,
            "observed": list(self.observed),
            "diverged": self.diverged,
        }


@dataclass(frozen=True)
class BoundVerdict:
    """Checks that every observed value stays strictly below a bound."""

    bound: float
    observed: tuple[float, ...]
    holds: bool

    def as_dict(self) -> dict:
        return {
            "bound": self.bound,
            "observed": list(self.observed),
            "holds": self.holds,
        }


def _limit_verdict(observed: tuple[float, ...], target: float, tol: float) -> LimitVerdict:
    errors = tuple(
        abs(x - target) / abs(target) if target != 0.0 else abs(x - target) for x in observed
    )
    tail = errors[-3:]
    monotone = all(a >= b for a, b in zip(tail, tail[1:]))
    last = errors[-1] if errors else _NAN
    converged = bool(errors) and last <= tol and monotone
    return LimitVerdict(
        target=target, observed=observed, errors=errors, last_error=last, converged=converged
    )


def _divergence_verdict(observed: tuple[float, ...], threshold: float) -> DivergenceVerdict:
    tail = observed[-3:]
    rising = all(a <= b for a, b in zip(tail, tail[1:]))
    diverged = bool(observed) and observed[-1] > threshold and rising
    return DivergenceVerdict(threshold=threshold, observed=observed, diverged=diverged)


def _bound_verdict(observed: tuple[float, ...], bound: float) -> BoundVerdict:
    holds = bool(observed) and all(x < bound for x in observed)
    return BoundVerdict(bound=bound, observed=observed, holds=holds)


def _column(records: list[SweepRecord], name: str) -> tuple[float, ...]:
    return tuple(getattr(r, name) for r in records)


@dataclass(frozen=True)
class ConcentrationABVerdicts:
    """Joint limit against the pressureless delta shock."""

    rho_star: DivergenceVerdict
    v_star: LimitVerdict
    sigma1: LimitVerdict
    sigma2: LimitVerdict
    mass_rate: LimitVerdict
    momentum_rate: LimitVerdict
    a_rho_n: LimitVerdict
    entropy_window_ok: bool

    @property
    def all_ok(self) -> bool:
        return (
            self.rho_star.diverged
            and self.v_star.converged
            and self.sigma1.converged
            and self.sigma2.converged
            and self.mass_rate.converged
            and self.momentum_rate.converged
            and self.a_rho_n.converged
            and self.entropy_window_ok
        )

    def as_dict(self) -> dict:
        return {
            "rho_star": self.rho_star.as_dict(),
            "v_star": self.v_star.as_dict(),
            "sigma1": self.sigma1.as_dict(),
            "sigma2": self.sigma2.as_dict(),
            "mass_rate": self.mass_rate.as_dict(),
            "momentum_rate": self.momentum_rate.as_dict(),
            "a_rho_n": self.a_rho_n.as_dict(),
            "entropy_window_ok": self.entropy_window_ok,
            "all_ok": self.all_ok,
        }


@dataclass(frozen=True)
class CavitationABVerdicts:
    """Joint limit against the pressureless vacuum solution."""

    rho_star: LimitVerdict
    sigma1: LimitVerdict
    sigma2: LimitVerdict

    @property
    def all_ok(self) -> bool:
        return self.rho_star.converged and self.sigma1.converged and self.sigma2.converged

    def as_dict(self) -> dict:
        return {
            "rho_star": self.rho_star.as_dict(),
            "sigma1": self.sigma1.as_dict(),
            "sigma2": self.sigma2.as_dict(),
            "all_ok": self.all_ok,
        }


@dataclass(frozen=True)
class ConcentrationAVerdicts:
    """A -> 0 limit at fixed B against the generalized Chaplygin delta."""

    rho_star: DivergenceVerdict
    v_star: LimitVerdict
    sigma1: LimitVerdict
    sigma2: LimitVerdict
    mass_rate: LimitVerdict
    momentum_rate: LimitVerdict
    a_rho_n: LimitVerdict
    polytropic_bound: BoundVerdict
    entropy_window_ok: bool

    @property
    def all_ok(self) -> bool:
        return (
            self.rho_star.diverged
            and self.v_star.converged
            and self.sigma1.converged
            and self.sigma2.converged
            and self.mass_rate.converged
            and self.momentum_rate.converged
            and self.a_rho_n.converged
            and self.polytropic_bound.holds
            and self.entropy_window_ok
        )

    def as_dict(self) -> dict:
        return {
            "rho_star": self.rho_star.as_dict(),
            "v_star": self.v_star.as_dict(),
            "sigma1": self.sigma1.as_dict(),
            "sigma2": self.sigma2.as_dict(),
            "mass_rate": self.mass_rate.as_dict(),
            "momentum_rate": self.momentum_rate.as_dict(),
            "a_rho_n": self.a_rho_n.as_dict(),
            "polytropic_bound": self.polytropic_bound.as_dict(),
            "entropy_window_ok": self.entropy_window_ok,
            "all_ok": self.all_ok,
        }


def verify_concentration_AB(
    records: list[SweepRecord], prob: RiemannProblem, tol: float = DEFAULT_TOL
) -> ConcentrationABVerdicts:
    """Compare a joint sweep on colliding data with the pressureless delta.

    The star density must blow past 1e4 * max(rho_l, rho_r) while the
    star velocity, both wave positions and the momentum transport rate
    approach the delta path, its strength rate and their product; the
    scaled pressure A rho_star^n must approach the known finite value
    rho_l rho_r (u_l - u_r)^2 / (sqrt(rho_l) + sqrt(rho_r))^2.
    """
    left, right = prob.left, prob.right
    delta = solve_pressureless(left, right, prob.friction)
    if not isinstance(delta, DeltaShockSolution):
        raise DomainError("concentration limit needs colliding data (u_l > u_r)")
    pressure_target = (
        left.rho * right.rho * (left.u - right.u) ** 2
        / (math.sqrt(left.rho) + math.sqrt(right.rho)) ** 2
    )
    return ConcentrationABVerdicts(
        rho_star=_divergence_verdict(
            _column(records, "rho_star"), 1e4 * max(left.rho, right.rho)
        ),
        v_star=_limit_verdict(_column(records, "v_star"), delta.sigma0, tol),
        sigma1=_limit_verdict(_column(records, "sigma1_0"), delta.sigma0, tol),
        sigma2=_limit_verdict(_column(records, "sigma2_0"), delta.sigma0, tol),
        mass_rate=_limit_verdict(_column(records, "mass_rate"), delta.weight_coeff, tol),
        momentum_rate=_limit_verdict(
            _column(records, "momentum_rate"), delta.sigma0 * delta.weight_coeff, tol
        ),
        a_rho_n=_limit_verdict(_column(records, "a_rho_n"), pressure_target, tol),
        entropy_window_ok=delta.satisfies_entropy(0.0),
    )


def verify_cavitation_AB(
    records: list[SweepRecord], prob: RiemannProblem, tol: float = DEFAULT_TOL
) -> CavitationABVerdicts:
    """Compare a joint sweep on separating data with the pressureless vacuum.

    The star density must vanish and the outer fan edges must approach
    the data velocities, which bound the vacuum in the limit.
    """
    left, right = prob.left, prob.right
    if not left.u < right.u:
        raise DomainError("cavitation limit needs separating data (u_l < u_r)")
    return CavitationABVerdicts(
        rho_star=_limit_verdict(_column(records, "rho_star"), 0.0, tol),
        sigma1=_limit_verdict(_column(records, "sigma1_0"), left.u, tol),
        sigma2=_limit_verdict(_column(records, "sigma2_0"), right.u, tol),
    )


def verify_concentration_A(
    records: list[SweepRecord], prob: RiemannProblem, tol: float = DEFAULT_TOL
) -> ConcentrationAVerdicts:
    """Compare an A -> 0 sweep at fixed B with the generalized Chaplygin delta.

    Besides convergence of speed and strength rate, A rho_star^n must
    approach the residue L = rho_l (u_l - sigma0)^2 - B rho_l^-alpha
    (equal to the same expression in the right data) and stay strictly
    below the polytropic bound rho_l (u_l - u_r)^2 along the whole sweep.

    The divergence threshold is two decades above the data densities,
    not four as in the joint limit: here rho_star only grows like
    A^(-1/n), so a schedule down to 1e-8 reaches about 1e3 for n = 3.
    """
    left, right = prob.left, prob.right
    p = prob.pressure
    delta = solve_gchaplygin_delta(left, right, p.B, p.alpha, prob.friction)
    residue_l = left.rho * (left.u - delta.sigma0) ** 2 - p.B * left.rho**-p.alpha
    residue_r = right.rho * (right.u - delta.sigma0) ** 2 - p.B * right.rho**-p.alpha
    residue = 0.5 * (residue_l + residue_r)
    return ConcentrationAVerdicts(
        rho_star=_divergence_verdict(
            _column(records, "rho_star"), 1e2 * max(left.rho, right.rho)
        ),
        v_star=_limit_verdict(_column(records, "v_star"), delta.sigma0, tol),
        sigma1=_limit_verdict(_column(records, "sigma1_0"), delta.sigma0, tol),
        sigma2=_limit_verdict(_column(records, "sigma2_0"), delta.sigma0, tol),
        mass_rate=_limit_verdict(_column(records, "mass_rate"), delta.weight_coeff, tol),
        momentum_rate=_limit_verdict(
            _column(records, "momentum_rate"), delta.sigma0 * delta.weight_coeff, tol
        ),
        a_rho_n=_limit_verdict(_column(records, "a_rho_n"), residue, tol),
        polytropic_bound=_bound_verdict(
            _column(records, "a_rho_n"), left.rho * (left.u - right.u) ** 2
        ),
        entropy_window_ok=delta.satisfies_entropy(0.0),
    )

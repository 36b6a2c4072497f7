"""State and parameter types for the extended Chaplygin gas with friction.

The gas dynamics model is the 1-D isentropic system with a Coulomb-like
friction source,

    rho_t + (rho u)_x           = 0,
    (rho u)_t + (rho u^2 + P)_x = beta rho,

closed by the extended Chaplygin pressure law

    P(rho) = A rho^n - B / rho^alpha,   A, B >= 0,  1 <= n <= 3,  0 < alpha <= 1.

The substitution v = u - beta t removes the source term: in the variables
(rho, v) the system is conservative and its Riemann solutions are
self-similar in zeta = (x - beta t^2 / 2) / t.  ``TransState`` holds the
friction-removed velocity v, ``PrimState`` the physical velocity u.
All value types are immutable; functions here are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from chaplab.errors import DomainError

__all__ = [
    "PressureParams",
    "Friction",
    "PrimState",
    "TransState",
    "RiemannProblem",
    "pressure",
    "sound_speed",
    "to_trans",
    "from_trans",
]


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class PressureParams:
    """Constants of the pressure law P(rho) = A rho^n - B rho^(-alpha).

    A = B = 0 is representable (the pressureless limit lives in
    :mod:`chaplab.limit_systems`) but is rejected by :func:`sound_speed`
    and by the exact solver.
    """

    A: float
    B: float
    n: float = 1.0
    alpha: float = 1.0

    def __post_init__(self) -> None:
        for name in ("A", "B", "n", "alpha"):
            _require_finite(name, getattr(self, name))
        if self.A < 0.0 or self.B < 0.0:
            raise DomainError(f"pressure constants must be nonnegative, got A={self.A}, B={self.B}")
        if not 1.0 <= self.n <= 3.0:
            raise DomainError(f"polytropic exponent n must lie in [1, 3], got {self.n}")
        if not 0.0 < self.alpha <= 1.0:
            raise DomainError(f"Chaplygin exponent alpha must lie in (0, 1], got {self.alpha}")

    @property
    def degenerate(self) -> bool:
        """True when both pressure constants vanish."""
        return self.A == 0.0 and self.B == 0.0


@dataclass(frozen=True)
class Friction:
    """Constant friction coefficient beta of the source term beta rho."""

    beta: float = 0.0

    def __post_init__(self) -> None:
        _require_finite("beta", self.beta)


@dataclass(frozen=True)
class PrimState:
    """Physical state (density, velocity u)."""

    rho: float
    u: float

    def __post_init__(self) -> None:
        _require_finite("rho", self.rho)
        _require_finite("u", self.u)
        if self.rho <= 0.0:
            raise DomainError(f"density must be positive, got {self.rho}")


@dataclass(frozen=True)
class TransState:
    """Friction-removed state (density, velocity v = u - beta t)."""

    rho: float
    v: float

    def __post_init__(self) -> None:
        _require_finite("rho", self.rho)
        _require_finite("v", self.v)
        if self.rho <= 0.0:
            raise DomainError(f"density must be positive, got {self.rho}")


@dataclass(frozen=True)
class RiemannProblem:
    """Two-state initial data u(x, 0) = left for x < 0, right for x > 0."""

    left: PrimState
    right: PrimState
    pressure: PressureParams
    friction: Friction = Friction(0.0)


def pressure(rho: float, p: PressureParams) -> float:
    """Evaluate P(rho) = A rho^n - B rho^(-alpha)."""
    if rho <= 0.0:
        raise DomainError(f"density must be positive, got {rho}")
    return p.A * rho**p.n - p.B * rho**-p.alpha


def sound_speed(rho: float, p: PressureParams) -> float:
    """Sound speed c(rho) = sqrt(P'(rho)) = sqrt(A n rho^(n-1) + alpha B rho^(-alpha-1)).

    Strictly positive for rho > 0 whenever A and B are not both zero, which
    is exactly the strict hyperbolicity of the system.
    """
    if rho <= 0.0:
        raise DomainError(f"density must be positive, got {rho}")
    if p.degenerate:
        raise DomainError("sound speed undefined for A = B = 0 (pressureless system)")
    return math.sqrt(p.A * p.n * rho ** (p.n - 1.0) + p.alpha * p.B * rho ** (-p.alpha - 1.0))


def to_trans(s: PrimState, t: float, f: Friction) -> TransState:
    """Strip the accumulated friction drift: v = u - beta t."""
    return TransState(s.rho, s.u - f.beta * t)


def from_trans(s: TransState, t: float, f: Friction) -> PrimState:
    """Restore the friction drift: u = v + beta t."""
    return PrimState(s.rho, s.v + f.beta * t)

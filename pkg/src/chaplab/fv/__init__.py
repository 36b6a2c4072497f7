"""First-order finite-volume oracle for the friction system.

Local Lax-Friedrichs fluxes with copied ghost cells and an exact
operator-split friction substep.  Deliberately simple: the scheme is
the independent check on the exact solver, so it shares no wave-curve
code with it, only the pressure law.

The step kernel exists twice, a compiled extension and a pure numpy
fallback; import picks the compiled one when available.  Set
CHAPLYGIN_FV_BACKEND=python or =compiled to force a choice.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from chaplab.errors import (
    CflCollapseError,
    DomainError,
    DomainSizeError,
    PositivityError,
)
from chaplab.exact_solver import ShockWave, VacuumRegion, sample, solve
from chaplab.limit_systems import DeltaShockSolution, solve_pressureless
from chaplab.model import Friction, PressureParams, RiemannProblem

from chaplab.fv import _kernel_py

_requested = os.environ.get("CHAPLYGIN_FV_BACKEND", "")
if _requested == "python":
    _kernel = _kernel_py
else:
    try:
        from chaplab.fv import _kernel  # type: ignore[no-redef]
    except ImportError:
        if _requested == "compiled":
            raise ImportError(
                "CHAPLYGIN_FV_BACKEND=compiled but the extension is not built"
            ) from None
        _kernel = _kernel_py

BACKEND: str = _kernel.BACKEND

__all__ = [
    "BACKEND",
    "Grid1D",
    "FvState",
    "FvCompareResult",
    "ProbeResult",
    "from_riemann",
    "step",
    "run",
    "compare_exact",
    "concentration_probe",
]

# relative slack allowed before a wave is considered to have touched a boundary
_EDGE_RTOL = 1e-8
# a step this small relative to the remaining time means the CFL condition collapsed
_MIN_STEP_FRACTION = 1e-12


@dataclass(frozen=True)
class Grid1D:
    """Uniform cell-centered grid on [x_min, x_max]."""

    x_min: float
    x_max: float
    cells: int
    cfl: float = 0.45

    def __post_init__(self) -> None:
        if not self.x_min < self.x_max:
            raise DomainError(f"need x_min < x_max, got [{self.x_min}, {self.x_max}]")
        if self.cells < 10:
            raise DomainError(f"need at least 10 cells, got {self.cells}")
        if not 0.0 < self.cfl < 1.0:
            raise DomainError(f"need cfl in (0, 1), got {self.cfl}")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.cells

    def centers(self) -> np.ndarray:
        return self.x_min + (np.arange(self.cells) + 0.5) * self.dx


@dataclass
class FvState:
    """Conserved fields on a grid at one time."""

    grid: Grid1D
    rho: np.ndarray
    mom: np.ndarray
    time: float = 0.0

    def __post_init__(self) -> None:
        if self.rho.shape != (self.grid.cells,) or self.mom.shape != (self.grid.cells,):
            raise DomainError("field shapes do not match the grid")
        if not np.all(self.rho > 0.0):
            raise PositivityError("initial density must be positive everywhere")

    def velocity(self) -> np.ndarray:
        return self.mom / self.rho

    def copy(self) -> "FvState":
        return FvState(self.grid, self.rho.copy(), self.mom.copy(), self.time)


def from_riemann(grid: Grid1D, prob: RiemannProblem) -> FvState:
    """Piecewise-constant initial data; the cell at x = 0 takes the right state."""
    x = grid.centers()
    left_mask = x < 0.0
    rho = np.where(left_mask, prob.left.rho, prob.right.rho).astype(np.float64)
    mom = np.where(
        left_mask, prob.left.rho * prob.left.u, prob.right.rho * prob.right.u
    ).astype(np.float64)
    return FvState(grid, rho, mom, 0.0)


def _advance(state: FvState, p: PressureParams, f: Friction, dt_cap: float) -> float:
    dt = _kernel.step_kernel(
        state.rho,
        state.mom,
        state.grid.dx,
        state.grid.cfl,
        dt_cap,
        p.A,
        p.B,
        p.n,
        p.alpha,
        f.beta,
    )
    if not dt > 0.0:
        raise CflCollapseError(f"no admissible step at t={state.time:.6g}")
    bad = np.flatnonzero(~(state.rho > 0.0))
    if bad.size:
        i = int(bad[0])
        raise PositivityError(
            f"density lost positivity in cell {i} (x={state.grid.centers()[i]:.6g}) "
            f"at t={state.time + dt:.6g}"
        )
    return dt


def step(state: FvState, p: PressureParams, f: Friction, dt_cap: float = math.inf) -> FvState:
    """One scheme step on a copy of the state."""
    out = state.copy()
    out.time += _advance(out, p, f, dt_cap)
    return out


def run(state: FvState, p: PressureParams, f: Friction, t_end: float) -> FvState:
    """March a copy of the state to t_end exactly."""
    if t_end < state.time:
        raise DomainError(f"t_end={t_end} is before the state time {state.time}")
    out = state.copy()
    while out.time < t_end:
        remaining = t_end - out.time
        dt = _advance(out, p, f, remaining)
        if dt < _MIN_STEP_FRACTION * max(t_end, 1.0):
            raise CflCollapseError(
                f"step size {dt:.3e} collapsed at t={out.time:.6g}; "
                "wave speeds are likely blowing up"
            )
        out.time += dt
    return out


def _check_boundaries(state: FvState, prob: RiemannProblem) -> None:
    """The data states must still fill the first and last cell."""
    t = state.time
    for idx, data in ((0, prob.left), (-1, prob.right)):
        u_expect = data.u + prob.friction.beta * t
        rho_got = float(state.rho[idx])
        u_got = float(state.mom[idx] / state.rho[idx])
        if abs(rho_got - data.rho) > _EDGE_RTOL * data.rho or abs(
            u_got - u_expect
        ) > _EDGE_RTOL * (1.0 + abs(u_expect)):
            side = "left" if idx == 0 else "right"
            raise DomainSizeError(
                f"waves reached the {side} boundary by t={t:.6g}: "
                f"rho={rho_got!r} vs {data.rho!r}, u={u_got!r} vs {u_expect!r}; "
                "enlarge the domain"
            )


@dataclass(frozen=True)
class FvCompareResult:
    """Grid-converged error metrics of the scheme against an exact solution."""

    l1_rho: float
    l1_u: float
    shock_offset: float
    state: FvState = field(repr=False)


def compare_exact(prob: RiemannProblem, t_end: float, grid: Grid1D) -> FvCompareResult:
    """Run the scheme and measure L1 errors against the exact solution.

    shock_offset is the distance between the strongest exact shock and
    the steepest numerical density gradient near it, NaN when the exact
    solution has no shocks.  Vacuum solutions are rejected; there is no
    meaningful velocity error against a vacuum.
    """
    if t_end <= 0.0:
        raise DomainError(f"need t_end > 0, got {t_end}")
    exact = solve(prob)
    if any(isinstance(w, VacuumRegion) for w in exact.waves):
        raise DomainError("cannot compare against a solution with a vacuum region")

    state = run(from_riemann(grid, prob), prob.pressure, prob.friction, t_end)
    _check_boundaries(state, prob)

    x = grid.centers()
    rho_ex = np.empty_like(x)
    u_ex = np.empty_like(x)
    for i, xi in enumerate(x):
        s = sample(exact, float(xi), t_end)
        rho_ex[i] = s.rho
        u_ex[i] = s.u

    dx = grid.dx
    l1_rho = float(np.sum(np.abs(state.rho - rho_ex)) * dx)
    l1_u = float(np.sum(np.abs(state.velocity() - u_ex)) * dx)

    shock_offset = math.nan
    strongest = None
    for w in exact.waves:
        if isinstance(w, ShockWave):
            jump = abs(w.state_after.rho - w.state_before.rho)
            if strongest is None or jump > strongest[0]:
                strongest = (jump, w.sigma0)
    if strongest is not None:
        x_shock = strongest[1] * t_end + 0.5 * prob.friction.beta * t_end * t_end
        window = (grid.x_max - grid.x_min) / 8.0
        interfaces = grid.x_min + np.arange(1, grid.cells) * dx
        near = np.abs(interfaces - x_shock) <= window
        if np.any(near):
            jumps = np.abs(np.diff(state.rho))
            jumps = np.where(near, jumps, -1.0)
            shock_offset = float(abs(interfaces[int(np.argmax(jumps))] - x_shock))
    return FvCompareResult(l1_rho=l1_rho, l1_u=l1_u, shock_offset=shock_offset, state=state)


@dataclass(frozen=True)
class ProbeResult:
    """Mass concentration observed in a window around the predicted delta path."""

    max_density: float
    local_mass: float
    window_cells: int
    delta_position: float
    state: FvState = field(repr=False)


def concentration_probe(
    prob: RiemannProblem, t_end: float, grid: Grid1D, window_cells: int = 10
) -> ProbeResult:
    """Run the scheme and weigh the mass collecting near the delta path.

    The path is the one of the pressureless limit of the data, so this
    only makes sense for tiny A and B with colliding velocities; the
    probe reports the mass inside a window of window_cells cells
    centered on the predicted position.
    """
    if t_end <= 0.0:
        raise DomainError(f"need t_end > 0, got {t_end}")
    if window_cells < 1 or window_cells > grid.cells:
        raise DomainError(f"window_cells must be in [1, {grid.cells}], got {window_cells}")
    delta = solve_pressureless(prob.left, prob.right, prob.friction)
    if not isinstance(delta, DeltaShockSolution):
        raise DomainError("concentration probe needs colliding data (u_l > u_r)")

    state = run(from_riemann(grid, prob), prob.pressure, prob.friction, t_end)
    _check_boundaries(state, prob)

    x_delta = delta.position(t_end)
    x = grid.centers()
    half_width = 0.5 * window_cells * grid.dx
    inside = np.abs(x - x_delta) <= half_width
    local_mass = float(np.sum(state.rho[inside]) * grid.dx)
    return ProbeResult(
        max_density=float(state.rho.max()),
        local_mass=local_mass,
        window_cells=window_cells,
        delta_position=x_delta,
        state=state,
    )

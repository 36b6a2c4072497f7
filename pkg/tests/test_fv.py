"""Finite-volume oracle: conservation, convergence, and concentration."""

from __future__ import annotations

import math
import os
import random
import subprocess
import sys
from dataclasses import replace

import numpy as np
import pytest

from chaplab.errors import (
    CflCollapseError,
    DomainError,
    DomainSizeError,
    PositivityError,
)
from chaplab.exact_solver import Region, VacuumRegion, solve
from chaplab.fv import (
    BACKEND,
    FvState,
    Grid1D,
    _kernel_py,
    compare_exact,
    concentration_probe,
    from_riemann,
    run,
    step,
)
from chaplab.model import Friction, PressureParams, PrimState, RiemannProblem
from helpers import make_region_problem

UNIT = PressureParams(1.0, 1.0, 1.0, 1.0)
NO_FRICTION = Friction(0.0)

COLLIDING = RiemannProblem(PrimState(1.0, 1.0), PrimState(1.0, -1.0), UNIT, NO_FRICTION)


def _bump_state(cells: int = 400, half_width: float = 20.0) -> FvState:
    grid = Grid1D(-half_width, half_width, cells)
    x = grid.centers()
    rho = 1.0 + 0.8 * np.exp(-x * x)
    return FvState(grid, rho, np.zeros_like(rho))


# ------------------------------------------------------------- validation


@pytest.mark.parametrize(
    "kwargs",
    [
        {"x_min": 1.0, "x_max": 1.0, "cells": 100},
        {"x_min": -1.0, "x_max": 1.0, "cells": 9},
        {"x_min": -1.0, "x_max": 1.0, "cells": 100, "cfl": 1.0},
        {"x_min": -1.0, "x_max": 1.0, "cells": 100, "cfl": 0.0},
    ],
)
def test_grid_rejects_bad_parameters(kwargs):
    with pytest.raises(DomainError):
        Grid1D(**kwargs)


def test_state_rejects_mismatched_shapes_and_nonpositive_density():
    grid = Grid1D(-1.0, 1.0, 16)
    with pytest.raises(DomainError):
        FvState(grid, np.ones(8), np.zeros(8))
    rho = np.ones(16)
    rho[3] = 0.0
    with pytest.raises(PositivityError):
        FvState(grid, rho, np.zeros(16))


def test_initial_data_puts_the_origin_cell_on_the_right():
    # dx = 0.25 exactly and the third center lands on x = 0
    grid = Grid1D(-0.625, 1.875, 10)
    assert grid.centers()[2] == 0.0
    state = from_riemann(grid, RiemannProblem(PrimState(2.0, 1.0), PrimState(1.0, -1.0), UNIT))
    assert np.all(state.rho[:2] == 2.0)
    assert np.all(state.rho[2:] == 1.0)
    assert state.mom[2] == -1.0


def test_run_rejects_earlier_target_time():
    state = _bump_state(cells=16, half_width=1.0)
    state.time = 1.0
    with pytest.raises(DomainError):
        run(state, UNIT, NO_FRICTION, 0.5)


def test_zero_step_cap_collapses():
    with pytest.raises(CflCollapseError):
        step(_bump_state(cells=16, half_width=1.0), UNIT, NO_FRICTION, dt_cap=0.0)


# ----------------------------------------------------------- conservation


def test_constant_state_is_preserved_and_friction_substep_is_exact():
    grid = Grid1D(-2.0, 2.0, 64)
    prob = RiemannProblem(PrimState(1.3, 0.4), PrimState(1.3, 0.4), UNIT, Friction(0.8))
    out = run(from_riemann(grid, prob), UNIT, Friction(0.8), 1.0)
    assert np.array_equal(out.rho, np.full(64, 1.3))
    assert np.max(np.abs(out.velocity() - (0.4 + 0.8 * 1.0))) < 1e-12

    frozen = run(from_riemann(grid, prob), UNIT, NO_FRICTION, 1.0)
    assert np.array_equal(frozen.rho, np.full(64, 1.3))
    assert np.array_equal(frozen.mom, np.full(64, 1.3 * 0.4))


def test_mass_conserved_to_roundoff_over_a_thousand_steps():
    # buffer of ~1190 quiet cells each side; information moves one cell
    # per step, so the boundary fluxes stay balanced for the whole loop
    state = _bump_state(cells=2400, half_width=120.0)
    mass0 = float(state.rho.sum()) * state.grid.dx
    p = PressureParams(1.0, 0.5, 2.0, 0.5)
    for _ in range(1000):
        state = step(state, p, NO_FRICTION)
    drift = abs(float(state.rho.sum()) * state.grid.dx - mass0)
    assert drift <= 1e-12 * mass0


def test_momentum_gains_beta_times_mass_per_step():
    state = _bump_state()
    p = PressureParams(1.0, 0.5, 2.0, 0.5)
    beta = 0.7
    out = step(state, p, Friction(beta))
    dt = out.time
    dx = state.grid.dx
    gained = (float(out.mom.sum()) - float(state.mom.sum())) * dx
    expected = beta * float(out.rho.sum()) * dx * dt
    assert gained == pytest.approx(expected, rel=1e-12, abs=1e-13)


# -------------------------------------------------------------- accuracy


def test_density_error_shrinks_under_refinement_for_a_two_shock_problem():
    coarse = compare_exact(COLLIDING, 0.4, Grid1D(-2.0, 2.0, 100))
    fine = compare_exact(COLLIDING, 0.4, Grid1D(-2.0, 2.0, 400))
    assert fine.l1_rho < coarse.l1_rho
    assert coarse.l1_rho / fine.l1_rho >= 1.5
    assert fine.l1_u < coarse.l1_u
    assert fine.shock_offset <= 2.0 * (4.0 / 400)


def test_smooth_two_rarefaction_problem_converges_near_first_order():
    smooth = RiemannProblem(PrimState(1.0, -0.3), PrimState(1.0, 0.3), UNIT, NO_FRICTION)
    assert solve(smooth).region is Region.I
    coarse = compare_exact(smooth, 0.4, Grid1D(-2.0, 2.0, 100))
    fine = compare_exact(smooth, 0.4, Grid1D(-2.0, 2.0, 400))
    assert coarse.l1_rho / fine.l1_rho >= 1.8
    assert math.isnan(fine.shock_offset)


def test_friction_shifts_the_profile_by_half_beta_t_squared():
    rng = random.Random(77)
    prob, _, _ = make_region_problem(rng, Region.IV)
    grid = Grid1D(-3.0, 3.0, 600)
    T = 0.5
    base = run(from_riemann(grid, prob), prob.pressure, NO_FRICTION, T)
    pushed_prob = replace(prob, friction=Friction(1.0))
    pushed = run(from_riemann(grid, pushed_prob), prob.pressure, Friction(1.0), T)
    interfaces = grid.x_min + np.arange(1, grid.cells) * grid.dx
    x_base = interfaces[int(np.argmax(np.abs(np.diff(base.rho))))]
    x_pushed = interfaces[int(np.argmax(np.abs(np.diff(pushed.rho))))]
    shift = 0.5 * 1.0 * T * T
    assert abs((x_pushed - x_base) - shift) <= grid.dx


def test_compare_exact_rejects_vacuum_solutions_and_bad_times():
    vac_prob = RiemannProblem(
        PrimState(1.0, -3.0), PrimState(1.0, 3.0), PressureParams(1.0, 0.0, 2.0, 1.0), NO_FRICTION
    )
    assert any(isinstance(w, VacuumRegion) for w in solve(vac_prob).waves)
    with pytest.raises(DomainError):
        compare_exact(vac_prob, 0.3, Grid1D(-4.0, 4.0, 100))
    with pytest.raises(DomainError):
        compare_exact(COLLIDING, 0.0, Grid1D(-2.0, 2.0, 100))


def test_waves_reaching_the_boundary_abort_the_comparison():
    with pytest.raises(DomainSizeError):
        compare_exact(COLLIDING, 0.4, Grid1D(-0.25, 0.25, 20))


# ----------------------------------------------------------- delta probes


def test_probe_mass_matches_delta_weight_near_the_limit():
    prob = replace(COLLIDING, pressure=PressureParams(1e-6, 1e-6, 1.0, 1.0))
    pr = concentration_probe(prob, 0.5, Grid1D(-2.0, 2.0, 1600))
    # w(T) = sqrt(rho_l rho_r) (u_l - u_r) T = 1 for this data
    assert pr.delta_position == 0.0
    assert abs(pr.local_mass - 1.0) <= 0.15


def test_probe_peak_density_grows_under_refinement():
    prob = replace(COLLIDING, pressure=PressureParams(1e-6, 1e-6, 1.0, 1.0))
    peaks = [
        concentration_probe(prob, 0.5, Grid1D(-2.0, 2.0, cells)).max_density
        for cells in (200, 400, 800)
    ]
    assert peaks[0] < peaks[1] < peaks[2]


def test_probe_far_from_the_limit_spreads_the_mass_past_the_window():
    prob = replace(COLLIDING, pressure=PressureParams(1e-1, 1e-1, 1.0, 1.0))
    pr = concentration_probe(prob, 0.5, Grid1D(-2.0, 2.0, 1600))
    assert pr.local_mass < 0.5


def test_probe_rejects_separating_data_and_bad_windows():
    grid = Grid1D(-2.0, 2.0, 100)
    apart = RiemannProblem(PrimState(1.0, -1.0), PrimState(1.0, 1.0), UNIT, NO_FRICTION)
    with pytest.raises(DomainError):
        concentration_probe(apart, 0.5, grid)
    with pytest.raises(DomainError):
        concentration_probe(COLLIDING, 0.5, grid, window_cells=0)
    with pytest.raises(DomainError):
        concentration_probe(COLLIDING, 0.5, grid, window_cells=101)
    with pytest.raises(DomainError):
        concentration_probe(COLLIDING, -0.1, grid)


# --------------------------------------------------------------- backends


def test_backend_name_is_reported():
    assert BACKEND in ("compiled", "python")


def test_compiled_and_python_kernels_agree():
    kernel = pytest.importorskip("chaplab.fv._kernel")
    state = _bump_state(cells=200, half_width=10.0)
    args = (state.grid.dx, state.grid.cfl, math.inf, 1.0, 0.5, 2.0, 0.5, 0.3)
    r_c, m_c = state.rho.copy(), state.mom.copy()
    r_p, m_p = state.rho.copy(), state.mom.copy()
    for _ in range(50):
        dt_c = kernel.step_kernel(r_c, m_c, *args)
        dt_p = _kernel_py.step_kernel(r_p, m_p, *args)
        assert dt_c == pytest.approx(dt_p, rel=1e-14)
    np.testing.assert_allclose(r_c, r_p, rtol=1e-12, atol=1e-14)
    np.testing.assert_allclose(m_c, m_p, rtol=1e-12, atol=1e-14)


def test_backend_env_override_selects_the_python_kernel():
    env = dict(os.environ, CHAPLYGIN_FV_BACKEND="python")
    out = subprocess.run(
        [sys.executable, "-c", "import chaplab.fv as m; print(m.BACKEND)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"

"""Riemann solutions and flux-approximation limits for the extended
Chaplygin gas with Coulomb-like friction.

The gas law is P(rho) = A rho^n - B rho^-alpha with A, B >= 0,
1 <= n <= 3, 0 < alpha <= 1.  ``exact_solver`` constructs the
self-similar solution for A, B not both zero; ``limit_systems`` holds
the closed-form delta-shock and vacuum solutions of the pressureless
(A = B = 0) and generalized Chaplygin (A = 0) limits; ``limit_lab``
sweeps the constants toward zero and verifies concentration and
cavitation against those closed forms; ``fv`` is an independent
finite-volume check.
"""

from chaplab.errors import (
    BracketError,
    BranchError,
    CflCollapseError,
    DegenerateJumpError,
    DeltaConditionError,
    DomainError,
    DomainSizeError,
    PositivityError,
    QuadratureError,
    SweepError,
    WaveKindError,
)
from chaplab.exact_solver import (
    VACUUM,
    ContactWave,
    IntermediateState,
    RarefactionFan,
    Region,
    RiemannSolution,
    ShockWave,
    Vacuum,
    VacuumRegion,
    classify,
    rh_residual,
    sample,
    solve,
)
from chaplab.limit_lab import (
    BoundVerdict,
    DivergenceVerdict,
    LimitVerdict,
    SweepRecord,
    geometric_schedule,
    sweep_A,
    sweep_AB,
    verify_cavitation_AB,
    verify_concentration_A,
    verify_concentration_AB,
)
from chaplab.limit_systems import (
    DeltaShockSolution,
    FormationReport,
    GRHResidual,
    LimitSystem,
    SingleContact,
    TwoContactsWithVacuum,
    delta_formation_report,
    grh_residual,
    solve_gchaplygin_delta,
    solve_pressureless,
)
from chaplab.model import (
    Friction,
    PressureParams,
    PrimState,
    RiemannProblem,
    TransState,
    from_trans,
    pressure,
    sound_speed,
    to_trans,
)
from chaplab.wave_curves import (
    CurveKind,
    Family,
    char_speed,
    curve_v,
    entropy_ok,
    hugoniot_jump,
    rarefaction_integral,
    shock_speed,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # model
    "PressureParams",
    "Friction",
    "PrimState",
    "TransState",
    "RiemannProblem",
    "pressure",
    "sound_speed",
    "to_trans",
    "from_trans",
    # wave curves
    "Family",
    "CurveKind",
    "char_speed",
    "curve_v",
    "hugoniot_jump",
    "rarefaction_integral",
    "shock_speed",
    "entropy_ok",
    # exact solver
    "Region",
    "IntermediateState",
    "RarefactionFan",
    "ShockWave",
    "ContactWave",
    "VacuumRegion",
    "Vacuum",
    "VACUUM",
    "RiemannSolution",
    "classify",
    "solve",
    "sample",
    "rh_residual",
    # limit systems
    "LimitSystem",
    "DeltaShockSolution",
    "TwoContactsWithVacuum",
    "SingleContact",
    "FormationReport",
    "GRHResidual",
    "delta_formation_report",
    "solve_pressureless",
    "solve_gchaplygin_delta",
    "grh_residual",
    # limit lab
    "SweepRecord",
    "LimitVerdict",
    "DivergenceVerdict",
    "BoundVerdict",
    "geometric_schedule",
    "sweep_AB",
    "sweep_A",
    "verify_concentration_AB",
    "verify_cavitation_AB",
    "verify_concentration_A",
    # errors
    "DomainError",
    "BranchError",
    "DegenerateJumpError",
    "QuadratureError",
    "BracketError",
    "WaveKindError",
    "DeltaConditionError",
    "PositivityError",
    "CflCollapseError",
    "DomainSizeError",
    "SweepError",
]

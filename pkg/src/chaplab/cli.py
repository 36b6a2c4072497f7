"""Command line front end.

Subcommands: solve (wave structure as JSON), profile (x,rho,u CSV at a
fixed time), phaseplane (wave-curve CSV through the left state), limit
(sweep toward a limit system, verdicts as JSON), fv (finite-volume
profile CSV).  Configs are flat JSON objects; see README.

Exit codes: 0 success, 2 invalid config or arguments, 3 numerical
failure, 4 limit verdict failure.  Output is deterministic: floats are
written with 17 significant digits in CSV and round-trip repr in JSON,
keys sorted.  Set CHAPLYGIN_LOG=debug|info|... for progress on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys

import numpy as np

from chaplab import fv as fv_mod
from chaplab.errors import DomainError
from chaplab.exact_solver import (
    VACUUM,
    ContactWave,
    RarefactionFan,
    ShockWave,
    VacuumRegion,
    rh_residual,
    sample,
    solve,
)
from chaplab.limit_lab import (
    geometric_schedule,
    sweep_A,
    sweep_AB,
    verify_cavitation_AB,
    verify_concentration_A,
    verify_concentration_AB,
)
from chaplab.model import Friction, PressureParams, PrimState, RiemannProblem, TransState
from chaplab.wave_curves import CurveKind, Family, curve_v

logger = logging.getLogger(__name__)

_REQUIRED_KEYS = ("rho_l", "u_l", "rho_r", "u_r", "A", "B")
_OPTIONAL_KEYS = {"n": 1.0, "alpha": 1.0, "beta": 0.0}


def _setup_logging() -> None:
    level_name = os.environ.get("CHAPLYGIN_LOG", "")
    if not level_name:
        return
    level = getattr(logging, level_name.upper(), None)
    if not isinstance(level, int):
        level = logging.INFO
    logging.basicConfig(
        stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s"
    )


def _load_config(path: str) -> dict[str, float]:
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise DomainError("config must be a JSON object")
    unknown = sorted(set(raw) - set(_REQUIRED_KEYS) - set(_OPTIONAL_KEYS))
    if unknown:
        raise DomainError(f"unknown config keys: {', '.join(unknown)}")
    missing = [k for k in _REQUIRED_KEYS if k not in raw]
    if missing:
        raise DomainError(f"missing config keys: {', '.join(missing)}")
    cfg = dict(_OPTIONAL_KEYS)
    cfg.update(raw)
    for key, value in cfg.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise DomainError(f"config key {key} must be a number, got {value!r}")
        cfg[key] = float(value)
    return cfg


def _problem_from_config(cfg: dict[str, float]) -> RiemannProblem:
    return RiemannProblem(
        left=PrimState(cfg["rho_l"], cfg["u_l"]),
        right=PrimState(cfg["rho_r"], cfg["u_r"]),
        pressure=PressureParams(A=cfg["A"], B=cfg["B"], n=cfg["n"], alpha=cfg["alpha"]),
        friction=Friction(cfg["beta"]),
    )


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv_text(header: list[str], rows: list[tuple]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([f"{v:.17g}" if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _json_text(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _state_dict(state) -> dict | None:
    if state is None:
        return None
    return {"rho": state.rho, "v": state.v}


def _wave_dicts(sol) -> list[dict]:
    out: list[dict] = []
    for i, w in enumerate(sol.waves):
        if isinstance(w, ShockWave):
            r_mass, r_mom = rh_residual(sol, i)
            out.append(
                {
                    "kind": "shock",
                    "family": int(w.family),
                    "sigma0": w.sigma0,
                    "before": _state_dict(w.state_before),
                    "after": _state_dict(w.state_after),
                    "rh_residual": [r_mass, r_mom],
                }
            )
        elif isinstance(w, RarefactionFan):
            out.append(
                {
                    "kind": "rarefaction",
                    "family": int(w.family),
                    "zeta_head": w.zeta_head,
                    "zeta_tail": w.zeta_tail,
                    "before": _state_dict(w.state_before),
                    "after": _state_dict(w.state_after),
                }
            )
        elif isinstance(w, VacuumRegion):
            out.append(
                {"kind": "vacuum", "zeta_left": w.zeta_left, "zeta_right": w.zeta_right}
            )
        elif isinstance(w, ContactWave):
            out.append(
                {
                    "kind": "contact",
                    "sigma0": w.sigma0,
                    "before": _state_dict(w.state_before),
                    "after": _state_dict(w.state_after),
                }
            )
    return out


def _cmd_solve(args: argparse.Namespace) -> int:
    prob = _problem_from_config(_load_config(args.config))
    sol = solve(prob)
    inter = None
    if sol.intermediate is not None:
        inter = {"rho_star": sol.intermediate.rho_star, "v_star": sol.intermediate.v_star}
    doc = {
        "region": sol.region.value if sol.region is not None else None,
        "intermediate": inter,
        "waves": _wave_dicts(sol),
        "notes": list(sol.notes),
    }
    logger.info("solved: region %s, %d waves", doc["region"], len(sol.waves))
    _write_text(args.out, _json_text(doc))
    return 0


def _cmd_profile(args: argparse.Namespace) -> int:
    prob = _problem_from_config(_load_config(args.config))
    if args.t <= 0.0:
        raise DomainError(f"need --t > 0, got {args.t}")
    sol = solve(prob)
    rows: list[tuple] = []
    for x in np.linspace(args.xmin, args.xmax, args.samples):
        s = sample(sol, float(x), args.t)
        if s is VACUUM:
            rows.append((float(x), 0.0, math.nan))
        else:
            rows.append((float(x), s.rho, s.u))
    _write_text(args.out, _csv_text(["x", "rho", "u"], rows))
    return 0


def _cmd_phaseplane(args: argparse.Namespace) -> int:
    prob = _problem_from_config(_load_config(args.config))
    p = prob.pressure
    if p.degenerate:
        raise DomainError("phase plane needs a nondegenerate pressure (A > 0 or B > 0)")
    anchor = TransState(prob.left.rho, prob.left.u)
    rho_min = args.rho_min if args.rho_min is not None else anchor.rho / 16.0
    rho_max = args.rho_max if args.rho_max is not None else anchor.rho * 16.0
    if not 0.0 < rho_min <= anchor.rho <= rho_max:
        raise DomainError(
            f"need 0 < rho_min <= rho_l <= rho_max, got {rho_min}, {anchor.rho}, {rho_max}"
        )
    rows: list[tuple] = []
    down = np.geomspace(rho_min, anchor.rho, args.samples)
    up = np.geomspace(anchor.rho, rho_max, args.samples)
    for label, family, kind, grid in (
        ("R1", Family.ONE, CurveKind.RAREFACTION, down),
        ("S1", Family.ONE, CurveKind.SHOCK, up),
        ("R2", Family.TWO, CurveKind.RAREFACTION, up),
        ("S2", Family.TWO, CurveKind.SHOCK, down),
    ):
        for rho in grid:
            rows.append((label, float(rho), curve_v(family, kind, anchor, float(rho), p)))
    _write_text(args.out, _csv_text(["curve", "rho", "v"], rows))
    return 0


def _parse_schedule(text: str) -> tuple[float, ...]:
    parts = text.split(":")
    if len(parts) not in (3, 4) or parts[2] != "geometric":
        raise DomainError(
            f"schedule must look like START:STOP:geometric[:COUNT], got {text!r}"
        )
    start, stop = float(parts[0]), float(parts[1])
    count = int(parts[3]) if len(parts) == 4 else None
    return geometric_schedule(start, stop, count)


def _records_csv(records) -> str:
    header = [
        "A",
        "B",
        "rho_star",
        "v_star",
        "sigma1_0",
        "sigma2_0",
        "mass_rate",
        "momentum_rate",
        "a_rho_n",
    ]
    rows = [
        (
            r.A,
            r.B,
            r.rho_star,
            r.v_star,
            r.sigma1_0,
            r.sigma2_0,
            r.mass_rate,
            r.momentum_rate,
            r.a_rho_n,
        )
        for r in records
    ]
    return _csv_text(header, rows)


def _cmd_limit(args: argparse.Namespace) -> int:
    prob = _problem_from_config(_load_config(args.config))
    schedule = _parse_schedule(args.schedule)
    if args.mode == "AB":
        records = sweep_AB(prob, schedule)
        if prob.left.u > prob.right.u:
            kind = "concentration"
            verdicts = verify_concentration_AB(records, prob)
        elif prob.left.u < prob.right.u:
            kind = "cavitation"
            verdicts = verify_cavitation_AB(records, prob)
        else:
            raise DomainError("equal data velocities: nothing concentrates or cavitates")
    else:
        kind = "concentration"
        records = sweep_A(prob, schedule)
        verdicts = verify_concentration_A(records, prob)
    logger.info("limit %s/%s: all_ok=%s", args.mode, kind, verdicts.all_ok)
    if args.records_out:
        _write_text(args.records_out, _records_csv(records))
    doc = {
        "mode": args.mode,
        "kind": kind,
        "schedule": list(schedule),
        "verdicts": verdicts.as_dict(),
        "all_ok": verdicts.all_ok,
    }
    _write_text(args.out, _json_text(doc))
    return 0 if verdicts.all_ok else 4


def _cmd_fv(args: argparse.Namespace) -> int:
    prob = _problem_from_config(_load_config(args.config))
    if args.t <= 0.0:
        raise DomainError(f"need --t > 0, got {args.t}")
    grid = fv_mod.Grid1D(args.xmin, args.xmax, args.cells, args.cfl)
    state = fv_mod.run(fv_mod.from_riemann(grid, prob), prob.pressure, prob.friction, args.t)
    logger.info("fv backend=%s cells=%d t=%g", fv_mod.BACKEND, args.cells, args.t)
    u = state.velocity()
    rows = [
        (float(x), float(r), float(v)) for x, r, v in zip(grid.centers(), state.rho, u)
    ]
    _write_text(args.out, _csv_text(["x", "rho", "u"], rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chaplab",
        description="Exact Riemann solutions and flux-approximation limits "
        "for the extended Chaplygin gas with friction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="wave structure of a Riemann problem as JSON")
    ps.add_argument("--config", required=True, help="path to a JSON config")
    ps.add_argument("--out", default=None, help="output path (default stdout)")
    ps.set_defaults(func=_cmd_solve)

    pp = sub.add_parser("profile", help="sampled exact profile at a fixed time as CSV")
    pp.add_argument("--config", required=True)
    pp.add_argument("--t", type=float, default=1.0)
    pp.add_argument("--xmin", type=float, default=-1.0)
    pp.add_argument("--xmax", type=float, default=1.0)
    pp.add_argument("--samples", type=int, default=401)
    pp.add_argument("--out", default=None)
    pp.set_defaults(func=_cmd_profile)

    pw = sub.add_parser("phaseplane", help="wave curves through the left state as CSV")
    pw.add_argument("--config", required=True)
    pw.add_argument("--rho-min", dest="rho_min", type=float, default=None)
    pw.add_argument("--rho-max", dest="rho_max", type=float, default=None)
    pw.add_argument("--samples", type=int, default=65)
    pw.add_argument("--out", default=None)
    pw.set_defaults(func=_cmd_phaseplane)

    pl = sub.add_parser("limit", help="sweep toward a limit system and verify")
    pl.add_argument("--config", required=True)
    pl.add_argument("--mode", choices=("AB", "A"), default="AB")
    pl.add_argument("--schedule", default="1e-1:1e-8:geometric")
    pl.add_argument("--records-out", dest="records_out", default=None)
    pl.add_argument("--out", default=None)
    pl.set_defaults(func=_cmd_limit)

    pf = sub.add_parser("fv", help="finite-volume profile at a fixed time as CSV")
    pf.add_argument("--config", required=True)
    pf.add_argument("--t", type=float, default=1.0)
    pf.add_argument("--xmin", type=float, default=-1.0)
    pf.add_argument("--xmax", type=float, default=1.0)
    pf.add_argument("--cells", type=int, default=400)
    pf.add_argument("--cfl", type=float, default=0.45)
    pf.add_argument("--out", default=None)
    pf.set_defaults(func=_cmd_fv)
    return parser


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"chaplab: cannot read or write: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"chaplab: invalid input: {exc}", file=sys.stderr)
        return 2
    except (RuntimeError, OverflowError) as exc:
        print(f"chaplab: numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: run benchmarks and mesh-refinement error studies.

    sgmix run --case B --n 500 --out results/
    sgmix run --config my_case.cfg --t-fin 1e-3 --out results/
    sgmix error-study --case B --n-list 250,500,1000 --n-ref 8000 --out study/

`run` writes the final state (state.csv) and per-step diagnostics
(diagnostics.csv); on solver failure it preserves the failure record
(failure.txt) plus the diagnostics collected so far and exits nonzero.
`error-study` writes error_study.csv and an aligned text table.

CSV output is deterministic: full double precision, '.' decimal,
comma separator, one header line.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .cases import CaseSpec, case_from_config, make_case
from .convergence import error_study
from .exceptions import SgmixError, SolverError
from .grid import Mesh
from .scheme import RunResult, run
from .cases import build_initial

STATE_COLUMNS = ("x", "rho1", "rho2", "rho", "y1", "alpha1", "alpha2", "p", "u", "theta", "cs")
DIAG_COLUMNS = (
    "step", "t", "dt", "mass1", "mass2", "momentum", "energy",
    "res_mass", "res_kinetic", "res_internal",
    "p_min", "p_max", "theta_min", "theta_max", "alpha1_min", "alpha1_max",
)


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return "%.17g" % value


def _write_csv(path: Path, header, rows):
    with open(path, "w", newline="\n") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(_fmt(v) for v in row) + "\n")


def write_state_csv(path: Path, state):
    x = state.mesh.main_x()
    cols = [x, state.rho1, state.rho2, state.rho, state.y1,
            state.alpha1, state.alpha2, state.p, state.u, state.theta, state.cs]
    _write_csv(path, STATE_COLUMNS, zip(*cols))


def write_diagnostics_csv(path: Path, history):
    rows = [
        (d.step, d.t, d.dt, d.mass1, d.mass2, d.momentum, d.energy,
         d.res_mass, d.res_kinetic, d.res_internal,
         d.p_min, d.p_max, d.theta_min, d.theta_max, d.alpha1_min, d.alpha1_max)
        for d in history
    ]
    _write_csv(path, DIAG_COLUMNS, rows)


def _load_spec(args) -> CaseSpec:
    if args.config is not None:
        return case_from_config(Path(args.config).read_text())
    if args.case is not None:
        return make_case(args.case)
    raise SgmixError("need --case or --config")


def _add_common_flags(p):
    p.add_argument("--case", help="benchmark id A..G")
    p.add_argument("--config", help="path to a key=value case file")
    p.add_argument("--reg", choices=("qgd", "qhd"), help="regularization (default: case setting)")
    p.add_argument("--a", type=float, help="relaxation-time parameter")
    p.add_argument("--beta", type=float, help="Courant parameter")
    p.add_argument("--schmidt", type=float, help="Schmidt number a_S")
    p.add_argument("--prandtl-inv", type=float, help="reported inverse-Prandtl knob")
    p.add_argument("--t-fin", type=float, help="final time override, s")
    p.add_argument("--out", default=".", help="output directory (default: current)")


def cmd_run(args) -> int:
    spec = _load_spec(args)
    n = args.n if args.n is not None else spec.defaults.n_coarse
    cfg = spec.scheme_config(
        reg=args.reg, a=args.a, beta=args.beta,
        a_s=args.schmidt, prandtl_inv=args.prandtl_inv,
        boundary=args.boundary,
    )
    t_fin = spec.t_fin if args.t_fin is None else args.t_fin
    mesh = Mesh(spec.x_half_extent, n)
    initial = build_initial(spec, mesh)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    if t_fin == 0.0:
        result = RunResult(final=initial, history=[], t_final=0.0, n_steps=0,
                           min_rho1=float(np.min(initial.rho1)),
                           min_rho2=float(np.min(initial.rho2)))
    else:
        try:
            result = run(initial, cfg, t_fin, diag_stride=args.stride)
        except SolverError as exc:
            write_diagnostics_csv(out / "diagnostics.csv", getattr(exc, "history", []))
            record = (
                f"error={type(exc).__name__}\n"
                f"message={exc}\n"
                f"node={exc.node}\n"
                f"time={'' if exc.time is None else '%.17g' % exc.time}\n"
            )
            (out / "failure.txt").write_text(record)
            print(f"solver failed: {exc}", file=sys.stderr)
            print(f"failure record written to {out / 'failure.txt'}", file=sys.stderr)
            return 1

    write_state_csv(out / "state.csv", result.final)
    write_diagnostics_csv(out / "diagnostics.csv", result.history)
    print(f"case {spec.case_id}: {result.n_steps} steps to t = {_fmt(result.t_final)} s "
          f"on N = {n}; output in {out}")
    return 0


def cmd_error_study(args) -> int:
    spec = _load_spec(args)
    cfg = spec.scheme_config(
        reg=args.reg, a=args.a, beta=args.beta,
        a_s=args.schmidt, prandtl_inv=args.prandtl_inv,
    )
    if args.t_fin is not None:
        spec = CaseSpec(**{**spec.__dict__, "t_fin": args.t_fin})
    n_list = [int(s) for s in args.n_list.split(",") if s.strip()]
    report = error_study(spec, n_list, args.n_ref, cfg=cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "error_study.csv").write_text(report.to_csv_text())
    table = report.to_table_text()
    (out / "error_study.txt").write_text(table)
    print(f"case {spec.case_id}, reference N = {args.n_ref}")
    print(table, end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sgmix",
        description="QGD/QHD-regularized 1D solver for binary stiffened-gas mixtures",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one case and write state/diagnostics CSV")
    _add_common_flags(p_run)
    p_run.add_argument("--n", type=int, help="number of cells (default: case coarse N)")
    p_run.add_argument("--boundary", choices=("copy", "periodic"),
                       help="boundary closure (default: copy)")
    p_run.add_argument("--stride", type=int, default=1,
                       help="record diagnostics every STRIDE steps (0 disables; default 1)")
    p_run.set_defaults(func=cmd_run)

    p_es = sub.add_parser("error-study",
                          help="L1 errors and convergence orders against a fine-mesh run")
    _add_common_flags(p_es)
    p_es.add_argument("--n-list", required=True,
                      help="comma-separated cell counts, each dividing --n-ref")
    p_es.add_argument("--n-ref", type=int, required=True,
                      help="cells of the pseudo-exact reference run")
    p_es.set_defaults(func=cmd_error_study)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SgmixError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

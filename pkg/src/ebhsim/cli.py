"""Command line front end: figure recipes and generic sweeps.

Subcommands: fig1, fig2, fig3, sweep.  A plain key=value config file can
seed any flag; explicit flags win.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .model import ModelParams
from .solver import ConvergenceError, SolverOptions
from .sweep import (
    ALL_OBSERVABLES,
    SweepSpec,
    emit,
    fig1_spec,
    fig2_spec,
    fig3_specs,
    run_sweep,
)

BOUNDARY_FLAGS = {"pbc": "periodic", "obc": "open"}


def _parse_values(text: str):
    """Either a comma list '0,0.5,1' or a range 'start:stop:count'."""
    if ":" in text:
        start, stop, count = text.split(":")
        return np.linspace(float(start), float(stop), int(count))
    return [float(x) for x in text.split(",")]


def _load_config(path):
    config = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line is not key=value: {raw!r}")
        key, value = line.split("=", 1)
        config[key.strip().replace("-", "_")] = value.strip()
    return config


def _build_parser():
    parser = argparse.ArgumentParser(prog="ebhsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="key=value file supplying defaults for any flag")
        p.add_argument("--q", help="witness momentum: zero, min, or a grid index m")
        p.add_argument("--cut", type=int, help="entropy bipartition size (default L//2)")
        p.add_argument("--seed", type=int, help="solver start-vector seed")
        p.add_argument("--tol", type=float, help="solver residual tolerance")
        p.add_argument("--out", help="output path")
        p.add_argument("--format", choices=("csv", "json"), help="output format")

    for name in ("fig1", "fig2", "fig3"):
        p = sub.add_parser(name, help=f"run the {name} reproduction recipe")
        p.add_argument("--points", type=int, help="sweep resolution (default 25)")
        add_common(p)

    p = sub.add_parser("sweep", help="generic parameter sweep")
    p.add_argument("--L", type=int, help="number of lattice sites")
    p.add_argument("--N", type=int, help="total boson number")
    p.add_argument("--J", type=float, help="fixed hopping (units of U)")
    p.add_argument("--U", type=float, help="on-site interaction (energy scale)")
    p.add_argument("--ULR", type=float, help="fixed long-range coupling (units of U)")
    p.add_argument("--axis", choices=("J", "ULR"), help="which coupling varies")
    p.add_argument("--values", help="axis values: comma list or start:stop:count")
    p.add_argument("--boundary", choices=tuple(BOUNDARY_FLAGS), help="pbc or obc")
    p.add_argument("--j-eps", type=float, help="tiny hopping for J=0 runs")
    p.add_argument("--pin-eps", type=float, help="tiny staggered pinning field")
    p.add_argument(
        "--observables",
        help=f"comma subset of {sorted(ALL_OBSERVABLES)} (default all)",
    )
    add_common(p)
    return parser


class _Options:
    """Flag values with config-file fallback."""

    def __init__(self, args):
        self.args = vars(args)
        self.config = _load_config(args.config) if getattr(args, "config", None) else {}

    def get(self, name, default=None, convert=str):
        flag = self.args.get(name)
        if flag is not None:
            return flag
        if name in self.config:
            return convert(self.config[name])
        return default


def _solver_options(opt: _Options) -> SolverOptions:
    return SolverOptions(
        tol=opt.get("tol", 1e-10, float),
        seed=opt.get("seed", 0, int),
    )


def _q_mode(opt: _Options):
    q = opt.get("q", "zero")
    if q in ("zero", "min"):
        return q
    return int(q)


def _sweep_spec(opt: _Options) -> SweepSpec:
    axis = opt.get("axis")
    if axis is None:
        raise ValueError("--axis is required for the sweep subcommand")
    values_text = opt.get("values")
    if values_text is None:
        raise ValueError("--values is required for the sweep subcommand")
    observables = opt.get("observables")
    fixed = ModelParams(
        L=opt.get("L", 8, int),
        N=opt.get("N", 8, int),
        J=opt.get("J", 0.0, float),
        U=opt.get("U", 1.0, float),
        U_LR=opt.get("ULR", 0.0, float),
        boundary=BOUNDARY_FLAGS[opt.get("boundary", "pbc")],
        j_epsilon=opt.get("j_eps", 0.0, float),
        pin_epsilon=opt.get("pin_eps", 0.0, float),
    )
    return SweepSpec(
        fixed=fixed,
        axis={"J": "J", "ULR": "U_LR"}[axis],
        values=_parse_values(values_text),
        observables=(
            frozenset(observables.split(",")) if observables else ALL_OBSERVABLES
        ),
        q_mode=_q_mode(opt),
        cut=opt.get("cut", None, int),
        solver=_solver_options(opt),
    )


def _override_recipe(spec: SweepSpec, opt: _Options) -> SweepSpec:
    import dataclasses

    changes = {"solver": _solver_options(opt)}
    q = opt.get("q")
    if q is not None:
        changes["q_mode"] = _q_mode(opt)
    cut = opt.get("cut", None, int)
    if cut is not None:
        changes["cut"] = cut
    return dataclasses.replace(spec, **changes)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    opt = _Options(args)
    fmt = opt.get("format", "csv")
    try:
        if args.command == "fig3":
            points = opt.get("points", 25, int)
            out = Path(opt.get("out", f"fig3.{fmt}"))
            for spec in fig3_specs(points=points):
                rows = run_sweep(_override_recipe(spec, opt))
                path = out.with_name(f"{out.stem}_ulr{spec.fixed.U_LR:g}{out.suffix}")
                emit(rows, fmt, path, spec.axis_label)
                print(path)
        else:
            if args.command == "fig1":
                spec = _override_recipe(fig1_spec(points=opt.get("points", 25, int)), opt)
            elif args.command == "fig2":
                spec = _override_recipe(fig2_spec(points=opt.get("points", 25, int)), opt)
            else:
                spec = _sweep_spec(opt)
            out = Path(opt.get("out", f"{args.command}.{fmt}"))
            rows = run_sweep(spec)
            emit(rows, fmt, out, spec.axis_label)
            print(out)
    except ConvergenceError as exc:
        print(f"error: solver failed to converge: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

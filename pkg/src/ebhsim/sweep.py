"""Parameter sweeps and machine-readable output (CSV / JSON).

Each sweep point is an independent ground-state solve followed by the
requested observables; rows come out in axis order regardless of how the
points were evaluated.  Axis values follow the usual reduced units:
2J/U when hopping varies, U_LR/U when the long-range coupling varies.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .fock import enumerate_basis
from .model import ModelParams, build_hamiltonian
from .obs import (
    energy_gap,
    entanglement_entropy,
    momentum_grid,
    theta_lr,
    witness,
    witness_min_over_q,
)
from .solver import ConvergenceError, SolverOptions, ground_state

ALL_OBSERVABLES = frozenset({"witness", "theta", "entropy", "gap", "structure_factor"})
AXES = {"J": "2J_over_U", "U_LR": "ULR_over_U"}
COLUMNS = (
    "E0",
    "lambda",
    "var_R",
    "r_sep",
    "mean_R",
    "q_used",
    "theta_signed",
    "theta_rms",
    "S_V",
    "delta",
    "residual",
)
WORKERS_ENV = "EBHSIM_NUM_THREADS"


@dataclass
class SweepRow:
    axis_value: float
    E0: float = math.nan
    lam: float = math.nan
    var_R: float = math.nan
    r_sep: float = math.nan
    mean_R: float = math.nan
    q_used: float = math.nan
    theta_signed: float = math.nan
    theta_rms: float = math.nan
    S_V: float = math.nan
    delta: float = math.nan
    residual: float = math.nan

    def values(self):
        return (
            self.E0,
            self.lam,
            self.var_R,
            self.r_sep,
            self.mean_R,
            self.q_used,
            self.theta_signed,
            self.theta_rms,
            self.S_V,
            self.delta,
            self.residual,
        )


@dataclass(frozen=True)
class SweepSpec:
    fixed: ModelParams
    axis: str  # "J" (values are 2J/U) or "U_LR" (values are U_LR/U)
    values: tuple
    observables: frozenset = ALL_OBSERVABLES
    q_mode: object = "zero"  # "zero" | "min" | integer grid index m
    cut: int | None = None  # entropy bipartition, defaults to L // 2
    solver: SolverOptions = field(default_factory=SolverOptions)

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {sorted(AXES)}, got {self.axis!r}")
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise ValueError("sweep needs at least one axis value")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("axis values must be strictly increasing")
        object.__setattr__(self, "values", vals)
        unknown = set(self.observables) - ALL_OBSERVABLES
        if unknown:
            raise ValueError(f"unknown observables: {sorted(unknown)}")
        object.__setattr__(self, "observables", frozenset(self.observables))
        if not isinstance(self.q_mode, int) and self.q_mode not in ("zero", "min"):
            raise ValueError(f"q_mode must be 'zero', 'min', or an integer, got {self.q_mode!r}")

    @property
    def axis_label(self) -> str:
        return AXES[self.axis]


def params_at(spec: SweepSpec, value: float) -> ModelParams:
    if spec.axis == "J":
        return dataclasses.replace(spec.fixed, J=0.5 * value * spec.fixed.U)
    return dataclasses.replace(spec.fixed, U_LR=value * spec.fixed.U)


def evaluate_point(spec: SweepSpec, value: float) -> SweepRow:
    """Solve one sweep point and fill its row; unrequested columns stay nan."""
    params = params_at(spec, value)
    basis = enumerate_basis(params.L, params.N)
    try:
        gs = ground_state(build_hamiltonian(params, basis), spec.solver)
    except ConvergenceError as exc:
        raise ConvergenceError(
            f"solve failed at {spec.axis_label}={value:g}: {exc}", exc.residual
        ) from exc
    row = SweepRow(axis_value=value, E0=gs.energy, residual=gs.residual)
    obs = spec.observables
    if "witness" in obs or "structure_factor" in obs:
        if spec.q_mode == "min":
            q_used, rep = witness_min_over_q(gs, basis)
        else:
            m = 0 if spec.q_mode == "zero" else int(spec.q_mode)
            q_used = float(momentum_grid(basis.L)[m % basis.L])
            rep = witness(gs, basis, q_used)
        row.lam, row.var_R, row.r_sep = rep.lam, rep.var_R, rep.r_sep
        row.mean_R, row.q_used = rep.mean_R, q_used
    if "theta" in obs:
        theta = theta_lr(gs, basis)
        row.theta_signed, row.theta_rms = theta["signed"], theta["rms"]
    if "entropy" in obs:
        cut = spec.cut if spec.cut is not None else params.L // 2
        row.S_V = entanglement_entropy(gs, basis, cut).S_V
    if "gap" in obs:
        row.delta = energy_gap(params, spec.solver).delta
    return row


def run_sweep(spec: SweepSpec) -> list:
    """Evaluate every axis value; honors EBHSIM_NUM_THREADS for a worker pool."""
    workers = int(os.environ.get(WORKERS_ENV, "1"))
    if workers > 1 and len(spec.values) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(evaluate_point, [spec] * len(spec.values), spec.values))
    return [evaluate_point(spec, v) for v in spec.values]


def _format(x) -> str:
    return repr(float(x))  # shortest round-trip decimal, >= 12 significant digits


def emit(rows, fmt: str, path, axis_label: str) -> None:
    """Write rows as CSV (header + one line per point) or a JSON array."""
    header = (axis_label,) + COLUMNS
    if fmt == "csv":
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            for row in rows:
                writer.writerow([_format(v) for v in (row.axis_value,) + row.values()])
    elif fmt == "json":
        payload = [dict(zip(header, (row.axis_value,) + row.values())) for row in rows]
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    else:
        raise ValueError(f"format must be 'csv' or 'json', got {fmt!r}")


def read_rows(path, fmt: str | None = None):
    """Parse an emitted file back into (axis_label, rows)."""
    if fmt is None:
        fmt = "json" if str(path).endswith(".json") else "csv"
    if fmt == "csv":
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            records = [[float(x) for x in line] for line in reader]
    else:
        with open(path) as fh:
            payload = json.load(fh)
        header = list(payload[0].keys()) if payload else []
        records = [[float(rec[k]) for k in header] for rec in payload]
    rows = []
    for rec in records:
        rows.append(
            SweepRow(
                axis_value=rec[0],
                E0=rec[1],
                lam=rec[2],
                var_R=rec[3],
                r_sep=rec[4],
                mean_R=rec[5],
                q_used=rec[6],
                theta_signed=rec[7],
                theta_rms=rec[8],
                S_V=rec[9],
                delta=rec[10],
                residual=rec[11],
            )
        )
    return (header[0] if header else None), rows


def fig1_spec(points: int = 25, solver: SolverOptions | None = None) -> SweepSpec:
    """Staggered-coupling sweep at (numerically) zero hopping, L = N = 8."""
    return SweepSpec(
        fixed=ModelParams(L=8, N=8, J=0.0, U=1.0, j_epsilon=1e-6),
        axis="U_LR",
        values=np.linspace(0.0, 1.2, points),
        observables=frozenset({"witness", "theta", "entropy"}),
        q_mode="zero",
        solver=solver or SolverOptions(),
    )


def fig2_spec(points: int = 25, solver: SolverOptions | None = None) -> SweepSpec:
    """Hopping sweep without the long-range coupling, L = N = 8; gap on."""
    return SweepSpec(
        fixed=ModelParams(L=8, N=8, J=0.0, U=1.0, U_LR=0.0),
        axis="J",
        values=np.linspace(0.0, 3.0, points),
        observables=frozenset({"witness", "gap", "entropy"}),
        q_mode="zero",
        solver=solver or SolverOptions(),
    )


def fig3_specs(points: int = 25, ulr_values=(0.0, 0.1, 0.2), solver: SolverOptions | None = None):
    """Hopping sweeps at several long-range couplings, for overlaying."""
    specs = []
    for ulr in ulr_values:
        specs.append(
            SweepSpec(
                fixed=ModelParams(L=8, N=8, J=0.0, U=1.0, U_LR=ulr),
                axis="J",
                values=np.linspace(0.0, 3.0, points),
                observables=frozenset({"witness", "gap", "entropy"}),
                q_mode="zero",
                solver=solver or SolverOptions(),
            )
        )
    return specs

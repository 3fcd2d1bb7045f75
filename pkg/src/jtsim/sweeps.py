"""Parameter sweeps over the model, with CSV output and a run manifest.

Six built-in sweeps reproduce the standard parameter scans (all in units
of the qubit frequency):

    fig1  detuning Delta in [-2, 2], omega_{1,2} = 1 -+ Delta/2,
          k_1 = k_2 = 0.1/sqrt(2), J = 0          (strong coupling)
    fig2  same with k_1 = k_2 = 1/sqrt(2)         (ultrastrong coupling)
    fig3  coupling asymmetry kappa in [-1, 1], k_{2,1} = (1 +- kappa)/2,
          omega_1 = 2*omega_2 = 0.1, J = 0
    fig4  same with omega_1 = 2*omega_2 = 1
    fig5  Delta in [0, 2] with k_1 = k_2 = Delta, omega_{1,2} = 1 -+ Delta/2
    fig6  hopping J in [0, 0.1], k_1 = k_2 = 1/sqrt(2),
          omega_1 = 2*omega_2 = 0.2

Grid points are independent; ``run_sweep`` can evaluate them in parallel
but always merges rows in grid order, so the CSV bytes do not depend on
the job count.  Failures at individual points become flagged rows rather
than aborting the sweep.
"""

from __future__ import annotations

import datetime
import json
import math
import os
import tempfile
import time
from dataclasses import dataclass, field, replace
from functools import partial

import numpy as np

from ._version import __version__
from .entanglement import EntanglementReport, report_from_state
from .groundstate import ground_state
from .model import (
    DegenerateTransformationError,
    SystemParams,
    mode_rotation_unitary,
    privileged_validity,
)

MAX_GRID_POINTS = 10_000

# Re-running a subsample at N + 4 should move no negativity by more than this.
VERIFY_TOL = 5e-3
VERIFY_CUTOFF_BUMP = 4
VERIFY_POINTS = 10

CSV_COLUMNS = (
    "t",
    "omega_1",
    "omega_2",
    "k_1",
    "k_2",
    "J",
    "N",
    "en_s_b1b2",
    "en_s_b1",
    "en_s_b2",
    "en_b1_b2",
    "energy",
    "gap",
    "r1",
    "r2",
    "degenerate",
)


@dataclass(frozen=True)
class SweepSpec:
    """Declarative sweep: a scalar control variable t mapped to parameters."""

    name: str
    parameter_rule: "callable"
    t_min: float
    t_max: float
    step: float
    basis: str = "transformed"
    N: int = 10
    emit_validity: bool = True

    def __post_init__(self):
        if not self.t_min < self.t_max:
            raise ValueError("t_min must be below t_max")
        if not self.step > 0:
            raise ValueError("step must be positive")
        if (self.t_max - self.t_min) / self.step > MAX_GRID_POINTS:
            raise ValueError(f"grid exceeds {MAX_GRID_POINTS} points")


@dataclass(frozen=True)
class SweepRow:
    t: float
    params: SystemParams | None
    report: EntanglementReport | None
    energy: float
    gap: float
    r1: float
    r2: float
    r3: float
    valid: bool | None
    error: str | None = None

    @property
    def flagged(self) -> bool:
        return self.error is not None or (
            self.report is not None and self.report.degeneracy_caveat
        )


@dataclass
class SweepResult:
    spec: SweepSpec
    rows: list[SweepRow]
    manifest: dict = field(default_factory=dict)


def grid_points(spec: SweepSpec) -> list[float]:
    n_steps = int(math.floor((spec.t_max - spec.t_min) / spec.step + 1e-9))
    return [round(spec.t_min + i * spec.step, 12) for i in range(n_steps + 1)]


def run_point(
    p: SystemParams,
    basis: str = "transformed",
    emit_validity: bool = True,
    t: float = math.nan,
) -> SweepRow:
    """One fully evaluated parameter point (ground state + negativities)."""
    gs = ground_state(p, basis)
    rep = report_from_state(gs.state, degeneracy_caveat=gs.degenerate_flag)
    r1 = r2 = r3 = math.nan
    valid = None
    if emit_validity:
        try:
            v = privileged_validity(p)
            r1, r2, r3, valid = v.r1, v.r2, v.r3, v.valid
        except DegenerateTransformationError:
            pass  # k_p = 0: ratios undefined, leave them nan
    return SweepRow(
        t=t,
        params=p,
        report=rep,
        energy=gs.energy,
        gap=gs.gap,
        r1=r1,
        r2=r2,
        r3=r3,
        valid=valid,
        error=None,
    )


def _evaluate_grid_point(spec: SweepSpec, t: float) -> SweepRow:
    try:
        p = replace(spec.parameter_rule(t), N=spec.N)
        return run_point(p, spec.basis, spec.emit_validity, t=t)
    except Exception as exc:  # noqa: BLE001 - flagged row, sweep must finish
        return SweepRow(
            t=t,
            params=None,
            report=None,
            energy=math.nan,
            gap=math.nan,
            r1=math.nan,
            r2=math.nan,
            r3=math.nan,
            valid=None,
            error=f"{type(exc).__name__}: {exc}",
        )


def _verify_subsample(spec: SweepSpec, rows: list[SweepRow]) -> dict:
    """Recompute a few clean rows at a larger cutoff and record the drift."""
    clean = [r for r in rows if not r.flagged]
    if not clean:
        return {"points": [], "max_abs_negativity_diff": None, "within_tol": None}
    picks = sorted(
        {int(i) for i in np.linspace(0, len(clean) - 1, min(VERIFY_POINTS, len(clean)))}
    )
    worst = 0.0
    ts = []
    for i in picks:
        row = clean[i]
        p_hi = replace(row.params, N=spec.N + VERIFY_CUTOFF_BUMP)
        hi = run_point(p_hi, spec.basis, emit_validity=False, t=row.t)
        diff = max(
            abs(a - b)
            for a, b in zip(
                row.report.as_dict().values(), hi.report.as_dict().values()
            )
        )
        worst = max(worst, diff)
        ts.append(row.t)
    return {
        "points": ts,
        "cutoff_check": spec.N + VERIFY_CUTOFF_BUMP,
        "tolerance": VERIFY_TOL,
        "max_abs_negativity_diff": worst,
        "within_tol": worst < VERIFY_TOL,
    }


def run_sweep(spec: SweepSpec, jobs: int = 1, verify_subsample: bool = True) -> SweepResult:
    """Evaluate every grid point; rows come back sorted by t.

    jobs > 1 distributes points over worker processes.  Results are merged
    in grid order, so output is independent of the job count.
    """
    start = time.perf_counter()
    ts = grid_points(spec)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(partial(_evaluate_grid_point, spec), ts))
    else:
        rows = [_evaluate_grid_point(spec, t) for t in ts]

    manifest = {
        "code_version": __version__,
        "sweep": spec.name,
        "basis": spec.basis,
        "cutoff": spec.N,
        "grid": {"t_min": spec.t_min, "t_max": spec.t_max, "step": spec.step},
        "rows": len(rows),
        "flagged_rows": sum(1 for r in rows if r.flagged),
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    if verify_subsample:
        manifest["verification"] = _verify_subsample(spec, rows)
    manifest["runtime_s"] = time.perf_counter() - start
    return SweepResult(spec=spec, rows=rows, manifest=manifest)


# ---------------------------------------------------------------------------
# Built-in sweep definitions
# ---------------------------------------------------------------------------

K_STRONG = 0.1 / math.sqrt(2.0)
K_ULTRA = 1.0 / math.sqrt(2.0)


def _detuning_params(t: float, k: float) -> SystemParams:
    return SystemParams(omega_1=1 + t / 2, omega_2=1 - t / 2, k_1=k, k_2=k, J=0.0)


def _asymmetry_params(t: float, omega_1: float) -> SystemParams:
    return SystemParams(
        omega_1=omega_1,
        omega_2=omega_1 / 2,
        k_1=(1 - t) / 2,
        k_2=(1 + t) / 2,
        J=0.0,
    )


def _detuning_coupled_params(t: float) -> SystemParams:
    return SystemParams(omega_1=1 + t / 2, omega_2=1 - t / 2, k_1=t, k_2=t, J=0.0)


def _hopping_params(t: float) -> SystemParams:
    return SystemParams(omega_1=0.2, omega_2=0.1, k_1=K_ULTRA, k_2=K_ULTRA, J=t)


PRESETS = {
    "fig1": (partial(_detuning_params, k=K_STRONG), -2.0, 2.0, 0.05),
    "fig2": (partial(_detuning_params, k=K_ULTRA), -2.0, 2.0, 0.05),
    "fig3": (partial(_asymmetry_params, omega_1=0.1), -1.0, 1.0, 0.05),
    "fig4": (partial(_asymmetry_params, omega_1=1.0), -1.0, 1.0, 0.05),
    "fig5": (_detuning_coupled_params, 0.0, 2.0, 0.05),
    "fig6": (_hopping_params, 0.0, 0.1, 0.0025),
}


def figure_sweep(
    name: str,
    N: int = 10,
    basis: str = "transformed",
    t_min: float | None = None,
    t_max: float | None = None,
    step: float | None = None,
) -> SweepSpec:
    """Built-in sweep by name (fig1 .. fig6), with optional grid overrides."""
    if name not in PRESETS:
        raise KeyError(f"unknown sweep {name!r}; presets are {sorted(PRESETS)}")
    rule, lo, hi, st = PRESETS[name]
    return SweepSpec(
        name=name,
        parameter_rule=rule,
        t_min=lo if t_min is None else t_min,
        t_max=hi if t_max is None else t_max,
        step=st if step is None else step,
        basis=basis,
        N=N,
    )


# ---------------------------------------------------------------------------
# Lab vs transformed cross-check
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BasisDivergence:
    energy_lab: float
    energy_transformed: float
    energy_divergence: float
    report_divergence: float
    rotation_norm_loss: float


def compare_bases(p: SystemParams) -> BasisDivergence:
    """Quantify the truncation mismatch between the two builders.

    The ground energies would be identical without the Fock cutoff.  For the
    negativity comparison the lab ground state is re-expressed in rotated-mode
    coordinates (the rotation drops weight beyond the truncated grid;
    rotation_norm_loss records how much) and its four cuts are compared with
    the transformed-basis report.
    """
    if p.k_1 == 0.0 and p.k_2 == 0.0:
        gs = ground_state(p, "lab")
        return BasisDivergence(gs.energy, gs.energy, 0.0, 0.0, 0.0)

    gs_lab = ground_state(p, "lab")
    gs_tr = ground_state(p, "transformed")

    w = mode_rotation_unitary(p)
    u = np.kron(np.eye(2, dtype=complex), w)
    psi_b = u.conj().T @ gs_lab.state.amplitudes
    norm = np.linalg.norm(psi_b)
    loss = abs(1.0 - norm**2)
    from .hilbert import StateVector

    rep_lab = report_from_state(StateVector(psi_b / norm, (2, p.N, p.N)))
    rep_tr = report_from_state(gs_tr.state)
    div = max(
        abs(a - b)
        for a, b in zip(rep_lab.as_dict().values(), rep_tr.as_dict().values())
    )
    return BasisDivergence(
        energy_lab=gs_lab.energy,
        energy_transformed=gs_tr.energy,
        energy_divergence=abs(gs_lab.energy - gs_tr.energy),
        report_divergence=div,
        rotation_norm_loss=loss,
    )


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def csv_row(row: SweepRow, N: int) -> str:
    p = row.params
    if p is None:
        pfields = [_fmt(math.nan)] * 5
    else:
        pfields = [_fmt(v) for v in (p.omega_1, p.omega_2, p.k_1, p.k_2, p.J)]
    rep = row.report
    en = (
        [_fmt(v) for v in rep.as_dict().values()]
        if rep is not None
        else [_fmt(math.nan)] * 4
    )
    degenerate = row.flagged
    cells = (
        [_fmt(row.t)]
        + pfields
        + [str(N)]
        + en
        + [_fmt(row.energy), _fmt(row.gap), _fmt(row.r1), _fmt(row.r2)]
        + ["true" if degenerate else "false"]
    )
    return ",".join(cells)


def write_csv(result: SweepResult, path: str) -> None:
    """Write rows as CSV (12 significant digits, LF endings, atomic rename).

    Failed points keep their t and show nan numeric fields with the
    degenerate column set to true, so flagged rows are visible downstream.
    """
    lines = [",".join(CSV_COLUMNS)]
    lines += [csv_row(r, result.spec.N) for r in result.rows]
    payload = "\n".join(lines) + "\n"
    _atomic_write(path, payload)


def write_manifest(result: SweepResult, path: str) -> None:
    _atomic_write(path, json.dumps(result.manifest, indent=2, sort_keys=True) + "\n")


def _atomic_write(path: str, payload: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise

"""Command-line front end.

Usage examples:

  jtsim point --omega1 1.05 --omega2 0.95 --k1 0.0707107 --k2 0.0707107 --J 0 --N 10
  jtsim point --delta 0.1 --k1 0.0707107 --k2 0.0707107
  jtsim sweep fig1 -o fig1.csv
  jtsim sweep custom --var delta --tmin 0 --tmax 1 --step 0.1 --k1 0.5 --k2 0.5
  jtsim converge --delta 0 --k1 0.7071068 --k2 0.7071068
  jtsim xcheck --delta 0.05 --k1 0.0707107 --k2 0.0707107 --N 16

Exit codes: 0 success, 2 usage or parameter error, 3 sweep completed with
flagged rows, 4 threshold failure (converge/xcheck).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import replace
from functools import partial

from ._version import __version__
from .groundstate import convergence_study, successive_differences
from .model import SystemParams
from .sweeps import (
    CSV_COLUMNS,
    PRESETS,
    SweepSpec,
    compare_bases,
    csv_row,
    figure_sweep,
    run_point,
    run_sweep,
    write_csv,
    write_manifest,
    _atomic_write,
)

OUTPUT_DIR_ENV = "JTSIM_OUTDIR"


def _add_param_flags(ap: argparse.ArgumentParser) -> None:
    ap.add_argument("--omega1", type=float, default=1.0, help="mode-1 frequency (units of omega_q)")
    ap.add_argument("--omega2", type=float, default=1.0, help="mode-2 frequency")
    ap.add_argument("--k1", type=float, default=0.0, help="mode-1 coupling scale (g_1 = omega_1*k_1)")
    ap.add_argument("--k2", type=float, default=0.0, help="mode-2 coupling scale")
    ap.add_argument("--J", type=float, default=0.0, help="inter-mode hopping rate")
    ap.add_argument("--N", type=int, default=10, help="Fock cutoff per mode")
    ap.add_argument("--omegaq", type=float, default=1.0, help="qubit frequency (rescaling unit)")
    ap.add_argument(
        "--delta",
        type=float,
        default=None,
        help="set omega_{1,2} = 1 +- delta/2 (overrides --omega1/--omega2)",
    )
    ap.add_argument(
        "--kappa",
        type=float,
        default=None,
        help="set k_{2,1} = (1 +- kappa)/2 (overrides --k1/--k2)",
    )


def _params_from_args(args) -> SystemParams:
    omega1, omega2 = args.omega1, args.omega2
    k1, k2 = args.k1, args.k2
    if args.delta is not None:
        omega1, omega2 = 1 + args.delta / 2, 1 - args.delta / 2
    if args.kappa is not None:
        k1, k2 = (1 - args.kappa) / 2, (1 + args.kappa) / 2
    return SystemParams(
        omega_1=omega1, omega_2=omega2, k_1=k1, k_2=k2, J=args.J, N=args.N,
        omega_q=args.omegaq,
    )


def _default_out(filename: str) -> str:
    return os.path.join(os.environ.get(OUTPUT_DIR_ENV, "."), filename)


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        _atomic_write(path, text)


def cmd_point(args) -> int:
    p = _params_from_args(args)
    row = run_point(p, basis=args.basis)
    if args.format == "csv":
        _emit(",".join(CSV_COLUMNS) + "\n" + csv_row(row, p.N) + "\n", args.output)
    elif args.format == "json":
        payload = {
            "params": {
                "omega_1": p.omega_1, "omega_2": p.omega_2, "k_1": p.k_1,
                "k_2": p.k_2, "J": p.J, "N": p.N, "omega_q": p.omega_q,
            },
            **row.report.as_dict(),
            "energy": row.energy,
            "gap": row.gap,
            "r1": row.r1,
            "r2": row.r2,
            "r3": row.r3,
            "valid": row.valid,
            "degenerate": row.report.degeneracy_caveat,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
    else:
        valid_label = {True: "yes", False: "no", None: "n/a"}[row.valid]
        lines = [
            f"omega_1={p.omega_1:g} omega_2={p.omega_2:g} k_1={p.k_1:g} "
            f"k_2={p.k_2:g} J={p.J:g} N={p.N} omega_q={p.omega_q:g}",
            f"E_N(S|B1B2) = {row.report.en_s_b1b2:.9f}",
            f"E_N(S|B1)   = {row.report.en_s_b1:.9f}",
            f"E_N(S|B2)   = {row.report.en_s_b2:.9f}",
            f"E_N(B1|B2)  = {row.report.en_b1_b2:.9f}",
            f"energy = {row.energy:.9f}   gap = {row.gap:.3e}",
            f"validity: r1 = {row.r1:.4g}  r2 = {row.r2:.4g}  r3 = {row.r3:.4g}"
            f"  valid = {valid_label}",
        ]
        if row.report.degeneracy_caveat:
            lines.append("caveat: degenerate ground state, values depend on solver pick")
        _emit("\n".join(lines) + "\n", args.output)
    return 0


def _custom_rule(t: float, var: str, base: SystemParams) -> SystemParams:
    if var == "delta":
        return replace(base, omega_1=1 + t / 2, omega_2=1 - t / 2)
    if var == "kappa":
        return replace(base, k_1=(1 - t) / 2, k_2=(1 + t) / 2)
    return replace(base, J=t)


def cmd_sweep(args) -> int:
    if args.name != "custom":
        try:
            spec = figure_sweep(
                args.name, N=args.N, basis=args.basis,
                t_min=args.tmin, t_max=args.tmax, step=args.step,
            )
        except KeyError as exc:
            print(f"error: {exc.args[0]}", file=sys.stderr)
            return 2
    else:
        if args.var is None or args.tmin is None or args.tmax is None or args.step is None:
            print(
                "error: custom sweep needs --var, --tmin, --tmax and --step",
                file=sys.stderr,
            )
            return 2
        base = _params_from_args(args)
        spec = SweepSpec(
            name="custom",
            parameter_rule=partial(_custom_rule, var=args.var, base=base),
            t_min=args.tmin,
            t_max=args.tmax,
            step=args.step,
            basis=args.basis,
            N=args.N,
        )
    result = run_sweep(spec, jobs=args.jobs, verify_subsample=not args.no_verify)
    out = args.output or _default_out(f"{spec.name}.csv")
    write_csv(result, out)
    write_manifest(result, out + ".manifest.json")
    flagged = result.manifest["flagged_rows"]
    print(
        f"{spec.name}: {len(result.rows)} rows -> {out} "
        f"({flagged} flagged, {result.manifest['runtime_s']:.2f} s)"
    )
    return 3 if flagged else 0


def cmd_converge(args) -> int:
    p = _params_from_args(args)
    cutoffs = [int(c) for c in args.cutoffs.split(",")]
    rows = convergence_study(p, cutoffs, basis=args.basis)
    diffs = successive_differences(rows)
    print("N      energy          E_N(S|B1B2)  E_N(S|B1)    E_N(S|B2)    E_N(B1|B2)")
    for r in rows:
        d = r.report
        print(
            f"{r.N:<6d} {r.energy:< 15.9f} {d.en_s_b1b2:<12.9f} "
            f"{d.en_s_b1:<12.9f} {d.en_s_b2:<12.9f} {d.en_b1_b2:<12.9f}"
        )
    for d in diffs:
        print(
            f"N {d['N_from']:>2d} -> {d['N_to']:<2d}  |d energy| = {d['d_energy']:.3e}"
            f"  max |d E_N| = {d['d_negativity_max']:.3e}"
        )
    if diffs and diffs[-1]["d_negativity_max"] >= args.tol:
        print(
            f"not converged: final max |d E_N| {diffs[-1]['d_negativity_max']:.3e}"
            f" >= {args.tol:g}",
            file=sys.stderr,
        )
        return 4
    return 0


def cmd_xcheck(args) -> int:
    p = _params_from_args(args)
    div = compare_bases(p)
    print(f"ground energy (lab)         = {div.energy_lab:.12g}")
    print(f"ground energy (transformed) = {div.energy_transformed:.12g}")
    print(f"energy divergence           = {div.energy_divergence:.3e}")
    print(f"report divergence (max E_N) = {div.report_divergence:.3e}")
    print(f"rotation norm loss          = {div.rotation_norm_loss:.3e}")
    if div.energy_divergence >= args.threshold:
        print(
            f"divergence {div.energy_divergence:.3e} >= threshold {args.threshold:g}",
            file=sys.stderr,
        )
        return 4
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="jtsim",
        description="Ground-state entanglement of the two-mode Jahn-Teller circuit model",
    )
    ap.add_argument("--version", action="version", version=f"jtsim {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p_point = sub.add_parser("point", help="evaluate one parameter point")
    _add_param_flags(p_point)
    p_point.add_argument("--basis", choices=("lab", "transformed"), default="transformed")
    p_point.add_argument("--format", choices=("human", "csv", "json"), default="human")
    p_point.add_argument("-o", "--output", default=None, help="write instead of stdout")
    p_point.set_defaults(func=cmd_point)

    p_sweep = sub.add_parser("sweep", help="run a named or custom sweep to CSV")
    p_sweep.add_argument("name", help="fig1..fig6 or 'custom'")
    _add_param_flags(p_sweep)
    p_sweep.add_argument("--basis", choices=("lab", "transformed"), default="transformed")
    p_sweep.add_argument("--var", choices=("delta", "kappa", "J"), default=None,
                         help="control variable for custom sweeps")
    p_sweep.add_argument("--tmin", type=float, default=None)
    p_sweep.add_argument("--tmax", type=float, default=None)
    p_sweep.add_argument("--step", type=float, default=None)
    p_sweep.add_argument("--jobs", type=int, default=1, help="parallel workers")
    p_sweep.add_argument("--no-verify", action="store_true",
                         help="skip the higher-cutoff verification subsample")
    p_sweep.add_argument("-o", "--output", default=None,
                         help=f"CSV path (default: ${OUTPUT_DIR_ENV}/<name>.csv)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_conv = sub.add_parser("converge", help="Fock-cutoff convergence study")
    _add_param_flags(p_conv)
    p_conv.add_argument("--basis", choices=("lab", "transformed"), default="transformed")
    p_conv.add_argument("--cutoffs", default="6,8,10,12,14,16",
                        help="comma-separated ascending cutoffs")
    p_conv.add_argument("--tol", type=float, default=5e-3,
                        help="pass threshold on the final successive difference")
    p_conv.set_defaults(func=cmd_converge)

    p_x = sub.add_parser("xcheck", help="lab vs transformed basis cross-check")
    _add_param_flags(p_x)
    p_x.add_argument("--threshold", type=float, default=1e-4,
                     help="pass threshold on the energy divergence")
    p_x.set_defaults(func=cmd_xcheck)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line front end: construct codes, check feasibility, simulate
protocol runs, and sweep parameter grids into CSV.

Subcommands:

* ``construct``: build one plan, print its degree table and verdicts.
* ``feasibility``: brute-force minimum privacy level vs the quadratic
  estimate, as CSV.
* ``simulate``: run the protocol end to end and report verdicts.
* ``sweep``: rate comparison grids (quantum family vs classical
  baseline) as CSV.

All output is deterministic for a fixed ``--seed``; CSV has a header
row, LF line endings, exact integers, rationals as ``num/den`` next to
a 6-place decimal column.
"""

from __future__ import annotations

import argparse
import csv
import sys

from . import degree_tables as dt
from . import feasibility as fs
from .protocol import ProtocolConfig, rate_ratio, rate_report, run_protocol, transcript_dump


def _add_family_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("family", choices=sorted(_BUILDERS))
    parser.add_argument("-K", type=int)
    parser.add_argument("-L", type=int)
    parser.add_argument("-T", type=int)
    parser.add_argument("-r", type=int)
    parser.add_argument("-s", type=int)
    parser.add_argument("-n", type=int)
    parser.add_argument("-k", type=int)
    parser.add_argument("-m", type=int)
    parser.add_argument("-l", "--ell", dest="ell", type=int)
    parser.add_argument("-x", type=int)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n if n != "l" else "ell") is None]
    if missing:
        raise SystemExit(f"error: {args.family} requires {' '.join('-' + n for n in missing)}")
    return [getattr(args, n if n != "l" else "ell") for n in names]


def _build_gasp(args):
    K, L, T = _need(args, "K", "L", "T")
    if args.r is not None:
        return dt.build_gasp_r(K, L, T, args.r)
    return dt.optimal_gasp_r(K, L, T)


_BUILDERS = {
    "gasp": _build_gasp,
    "gasp-rs": lambda a: dt.build_gasp_rs(*_need(a, "K", "L", "T", "r", "s")),
    "dog": lambda a: dt.build_dog(*_need(a, "K", "L", "T", "r", "s")),
    "cat": lambda a: dt.build_cat(*_need(a, "K", "L", "T"), x=a.x),
    "qf-square": lambda a: dt.build_qf_square(*_need(a, "n")),
    "qf-power": lambda a: dt.build_qf_power(*_need(a, "n", "k", "m")),
    "qf-additive": lambda a: dt.build_qf_additive(*_need(a, "n", "k", "r")),
    "qf-klt": lambda a: dt.build_qf_klt(*_need(a, "K", "T")),
    "qf-kt": lambda a: dt.build_qf_kt(*_need(a, "n", "k", "l")),
    "qf-kt-shift": lambda a: dt.build_qf_kt_shift(*_need(a, "n", "l", "r")),
    "low-privacy": lambda a: dt.build_low_privacy(*_need(a, "K", "L", "T")),
}


def _feasibility_report(plan):
    if plan.family in ("lp_equal", "lp_general"):
        return fs.check_feasible_low_privacy(plan)
    return fs.check_feasible(plan)


def _cmd_construct(args) -> int:
    plan = _BUILDERS[args.family](args)
    table = dt.outer_sum(plan)
    print(f"family: {plan.family}  params: "
          + (" ".join(f"{k}={v}" for k, v in plan.params) or "-"))
    print(f"K={plan.K} L={plan.L} T={plan.T}"
          + (f" q={plan.modulus_q}" if plan.modulus_q else ""))
    print("alpha:", " ".join(map(str, plan.alpha)))
    print("beta: ", " ".join(map(str, plan.beta)))
    width = len(str(max(max(row) for row in table.table)))
    print("degree table:")
    for row in table.table:
        print("  " + " ".join(str(v).rjust(width) for v in row))
    print(f"servers: {table.n_servers}")
    print("info sums:   ", " ".join(map(str, sorted(table.info_sums))))
    print("interference:", " ".join(map(str, sorted(table.interference))))
    decodable = dt.check_decodable(plan)
    print(f"decodable: {'yes' if decodable.ok else 'no (' + decodable.reason + ')'}")
    feas = _feasibility_report(plan)
    print(f"quantum feasible: {'yes' if feas.feasible else 'no'} "
          f"(run {len(feas.run)}, need {feas.threshold})")
    if args.export:
        with open(args.export, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(dt.plan_record(plan) + "\n")
        print(f"exported: {args.export}")
    return 0 if decodable.ok else 1


def _cmd_simulate(args) -> int:
    plan = _BUILDERS[args.family](args)
    dims = tuple(int(v) for v in args.dims.split(",")) if args.dims else None
    cfg = ProtocolConfig(plan=plan, dims=dims, mode=args.mode, seed=args.seed,
                         prime=args.prime)
    t = run_protocol(cfg)
    print(f"family: {plan.family}  mode: {t.mode}  modulus: {t.modulus}  seed: {t.seed}")
    print(f"servers: {t.rate.n_servers}  instances: {t.rate.instances}")
    print(f"decode: {'ok' if t.decode_ok else 'FAIL'}")
    print(f"privacy audit: {'ok' if t.audit.ok else 'FAIL'} "
          f"(checked {t.audit.checked} subsets, "
          f"{'exhaustive' if t.audit.exhaustive else 'sampled'})")
    kl = t.rate.instances * plan.K * plan.L
    print(f"rate: {kl}/{t.rate.n_servers} = {float(t.rate.rate):.6f}")
    if args.transcript:
        with open(args.transcript, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(transcript_dump(t))
        print(f"transcript: {args.transcript}")
    return 0 if (t.decode_ok and t.audit.ok) else 1


def _parse_range(text: str) -> range:
    lo, hi = text.split(":")
    return range(int(lo), int(hi) + 1)


def _cmd_feasibility(args) -> int:
    rows = fs.feasibility_rows(_parse_range(args.k_range),
                               None if args.l_range is None
                               else _parse_range(args.l_range),
                               t_max=args.t_max)
    writer = csv.writer(args_out(args), lineterminator="\n")
    writer.writerow(["K", "L", "T_min_bruteforce", "T_hat", "delta"])
    for row in rows:
        writer.writerow([row["K"], row["L"], row["T_min_bruteforce"],
                         f"{row['T_hat']:.6f}", row["delta"]])
    return 0


def args_out(args):
    if getattr(args, "out", None):
        return open(args.out, "w", encoding="utf-8", newline="")
    return sys.stdout


_SWEEP_AXES = {
    # family -> (swept parameter, plan factory taking (value, args))
    "qf-square": ("n", lambda v, a: dt.build_qf_square(v)),
    "qf-power": ("n", lambda v, a: dt.build_qf_power(v, a.k, a.m)),
    "qf-additive": ("r", lambda v, a: dt.build_qf_additive(a.n, a.k, v)),
    "qf-klt": ("K", lambda v, a: dt.build_qf_klt(v, a.T)),
    "qf-kt": ("k", lambda v, a: dt.build_qf_kt(a.n, v, a.ell)),
    "qf-kt-shift": ("r", lambda v, a: dt.build_qf_kt_shift(a.n, a.ell, v)),
    "low-privacy": ("L", lambda v, a: dt.build_low_privacy(a.K if a.K else v, v, a.T)),
    "cat": ("K", lambda v, a: dt.build_cat(v, a.L, a.T)),
}


def _classical_baseline(plan) -> "dt.ExponentPlan":
    if plan.family in ("lp_equal", "lp_general", "cat_x"):
        return dt.best_classical_plan(plan.K, plan.L, plan.T)
    return dt.optimal_gasp_r(plan.K, plan.L, plan.T)


def _cmd_sweep(args) -> int:
    axis, factory = _SWEEP_AXES[args.family]
    rows = []
    for value in _parse_range(args.range):
        plan = factory(value, args)
        baseline = _classical_baseline(plan)
        quantum = rate_report(plan, "quantum")
        classical = rate_report(baseline, "classical")
        ratio = rate_ratio(quantum, classical)
        rows.append([
            plan.family, plan.K, plan.L, plan.T,
            classical.n_servers, quantum.n_servers,
            f"{plan.K * plan.L}/{classical.n_servers}", f"{float(classical.rate):.6f}",
            f"{2 * plan.K * plan.L}/{quantum.n_servers}", f"{float(quantum.rate):.6f}",
            f"{ratio.numerator}/{ratio.denominator}", f"{float(ratio):.6f}",
        ])
    rows.sort(key=lambda row: (row[1], row[2], row[3]))
    writer = csv.writer(args_out(args), lineterminator="\n")
    writer.writerow(["family", "K", "L", "T", "N_classical", "N_quantum",
                     "R_C", "R_C_decimal", "R_Q", "R_Q_decimal",
                     "ratio", "ratio_decimal"])
    writer.writerows(rows)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="pdmm",
        description="Private distributed matrix multiplication code toolbox")
    sub = parser.add_subparsers(dest="command", required=True)

    p_con = sub.add_parser("construct", help="build a plan and print its degree table")
    _add_family_arguments(p_con)
    p_con.add_argument("--export", help="write the plan record to this path")
    p_con.set_defaults(func=_cmd_construct)

    p_sim = sub.add_parser("simulate", help="run the protocol end to end")
    _add_family_arguments(p_sim)
    p_sim.add_argument("--mode", choices=["classical", "quantum"], default="classical")
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--prime", type=int)
    p_sim.add_argument("--dims", help="rows_A,inner,cols_B (default 1x1 blocks)")
    p_sim.add_argument("--transcript", help="write the transcript dump to this path")
    p_sim.set_defaults(func=_cmd_simulate)

    p_fea = sub.add_parser("feasibility",
                           help="minimum privacy level: brute force vs estimate (CSV)")
    p_fea.add_argument("--k-range", default="2:6")
    p_fea.add_argument("--l-range", help="optional L range; default L = K")
    p_fea.add_argument("--t-max", type=int, default=64)
    p_fea.add_argument("--out")
    p_fea.set_defaults(func=_cmd_feasibility)

    p_swp = sub.add_parser("sweep", help="rate-ratio grid (CSV)")
    p_swp.add_argument("family", choices=sorted(_SWEEP_AXES))
    p_swp.add_argument("--range", required=True, help="swept value, as lo:hi")
    p_swp.add_argument("-K", type=int)
    p_swp.add_argument("-L", type=int)
    p_swp.add_argument("-T", type=int)
    p_swp.add_argument("-n", type=int)
    p_swp.add_argument("-k", type=int)
    p_swp.add_argument("-m", type=int)
    p_swp.add_argument("-l", "--ell", dest="ell", type=int)
    p_swp.add_argument("--out")
    p_swp.set_defaults(func=_cmd_sweep)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``bosonic-renyi <command> ...``.

Exit codes: 0 success / all checks pass, 2 invalid input or an inequality
failure, 1 operational error (I/O, malformed files).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import harness
from .entropy import state_entropy
from .errors import GaussianError
from .gaussian import GaussianState, make_state, symplectic_eigenvalues
from .convolution import beam_splitter_mix
from .report import write_jsonl, write_rows_csv, write_summary_csv

EXIT_OK, EXIT_OPERATIONAL, EXIT_FAIL = 0, 1, 2


class OperationalError(Exception):
    pass


def _scale(units: str) -> float:
    return 1.0 if units == "nats" else 1.0 / math.log(2.0)


def load_state(path: str) -> GaussianState:
    """Read a state JSON file. Malformed files raise :class:`OperationalError`."""
    try:
        data = json.loads(Path(path).read_text())
        mean, cov = data["mean"], data["cov"]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise OperationalError(f"cannot read state from {path}: {exc}") from exc
    state = make_state(mean, cov)
    if "modes" in data and data["modes"] != state.modes:
        raise GaussianError(f"modes={data['modes']} but arrays describe {state.modes} modes")
    return state


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline=""), True


def cmd_validate(args) -> int:
    state = load_state(args.path)
    nu = symplectic_eigenvalues(state)
    print(f"valid {state.modes}-mode Gaussian state")
    print("symplectic eigenvalues: " + " ".join(f"{v:.12g}" for v in nu))
    return EXIT_OK


def cmd_entropy(args) -> int:
    state = load_state(args.path)
    e = state_entropy(state, args.functional, args.p)
    unit = args.units
    print(f"{e.functional} p={e.order_p:g} modes={e.dims}: {e.in_units(unit):.15g} {unit}")
    return EXIT_OK


def cmd_convolve(args) -> int:
    x, y = load_state(args.x), load_state(args.y)
    tau = args.tau if args.convention == "eq5" else 1.0 - args.tau
    z = beam_splitter_mix(x, y, tau)
    fh, close = _open_out(args.out)
    fh.write(z.to_json())
    if close:
        fh.close()
    return EXIT_OK


def _battery_config(args, functionals) -> harness.BatteryConfig:
    kw = dict(
        functionals=tuple(functionals),
        modes=tuple(args.modes),
        taus=tuple(args.tau),
        trials=args.trials,
        seed=args.seed,
        workers=args.workers,
        convention=getattr(args, "convention", "eq5"),
    )
    if hasattr(args, "p"):
        kw.update(ps=tuple(args.p), experimental_p=args.experimental_p)
        if args.kappa:
            kw.update(kappa_mode="fixed", kappas=tuple(args.kappa))
        else:
            kw.update(kappa_mode="minimal", kappa_offsets=tuple(args.kappa_offset))
    return harness.BatteryConfig(**kw)


def _emit_battery(result, out: str | None) -> None:
    if out is None:
        write_summary_csv(result.summary, sys.stdout)
        return
    outdir = Path(out)
    outdir.mkdir(parents=True, exist_ok=True)
    with open(outdir / "records.jsonl", "w") as fh:
        write_jsonl(result.records, fh)
    with open(outdir / "summary.csv", "w", newline="") as fh:
        write_summary_csv(result.summary, fh)


def cmd_epi_sweep(args) -> int:
    config = _battery_config(args, args.functional)
    result = harness.run_battery(config, keep_records=args.out is not None)
    _emit_battery(result, args.out)
    print(f"checks={result.total_checks} failures={result.total_failures}", file=sys.stderr)
    return EXIT_FAIL if result.total_failures else EXIT_OK


def cmd_epni_check(args) -> int:
    if args.x and args.y:
        x, y = load_state(args.x), load_state(args.y)
        failures = 0
        for tau in args.tau:
            rec = harness.epni_check(x, y, tau)
            failures += not rec.passed
            print(f"tau={tau:g} N(Z)={rec.lhs:.15g} rhs={rec.rhs:.15g} slack={rec.slack:.3e} {'ok' if rec.passed else 'VIOLATED'}")
        return EXIT_FAIL if failures else EXIT_OK
    config = _battery_config(args, ["epni"])
    result = harness.run_battery(config, keep_records=args.out is not None)
    _emit_battery(result, args.out)
    print(f"checks={result.total_checks} violations={result.total_failures}", file=sys.stderr)
    return EXIT_FAIL if result.total_failures else EXIT_OK


def cmd_young_check(args) -> int:
    sweep = harness.young_sweep(
        pairs=args.pairs, modes=args.modes, tau=args.tau, seed=args.seed, exponent_mode=args.young_exponent
    )
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_rows_csv([r.to_row() for r in sweep.records], fh)
    print(f"records={len(sweep.records)}")
    for key, n in sweep.violations().items():
        print(f"violations {key}: {n}")
    for mode, v in sweep.tightest().items():
        print(f"tightest resolved slack {mode}: {v:.3e}")
    failed = sum(not r.passed for r in sweep.records)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_lemma1(args) -> int:
    if args.t is not None:
        total = 1 - 1 / args.t
        a = args.a if args.a is not None else total / 2
        cases = [(args.t, a, total - a)]
    else:
        cases = [(t, f * (1 - 1 / t), (1 - f) * (1 - 1 / t)) for t in (1.5, 2.0, 3.0, 5.0) for f in np.linspace(0.1, 0.9, 9)]
    failed = 0
    for t, a, b in cases:
        res = harness.lemma1_search(t, a, b)
        failed += not res.passed
        print(
            f"t={t:g} a={a:.6g} b={b:.6g} r={res.r:.10g} s={res.s:.10g} "
            f"lhs={res.lhs:.10g} bound={res.bound:.10g} {'pass' if res.passed else 'FAIL'}"
        )
    return EXIT_FAIL if failed else EXIT_OK


def cmd_lemma2(args) -> int:
    if args.c is not None:
        d = args.d if args.d is not None else 2 / args.c - 1
        cases = [(args.c, d)]
    else:
        cases = [(c, 2 / c - 1 + extra) for c in np.linspace(0.05, 0.95, args.grid) for extra in np.linspace(0, 20, args.grid)]
    failed = 0
    for c, d in cases:
        res = harness.lemma2_minimize(c, d)
        failed += not res.claim_holds
        print(f"c={c:.6g} d={d:.6g} x*={res.x_star:.10g} F={res.min_value:.10g} at {res.location}")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_capacity(args) -> int:
    k = _scale(args.units)
    u = args.units
    if args.grid:
        taus = np.linspace(0.05, 1.0, args.grid)
        ns = np.linspace(0.0, 10.0, args.grid)
        rows = []
        for tau in taus:
            for N in ns:
                for NE in ns:
                    ub = harness.capacity_upper_bound(tau, N, NE)
                    lb = harness.holevo_lower_bound(tau, N, NE)
                    rows.append({"tau": float(tau), "N": float(N), "N_E": float(NE), f"ub_{u}": ub * k, f"lb_{u}": lb * k, f"gap_{u}": (ub - lb) * k})
        fh, close = _open_out(args.out)
        write_rows_csv(rows, fh)
        if close:
            fh.close()
        bad = sum(r[f"lb_{u}"] > r[f"ub_{u}"] + 1e-12 for r in rows)
        return EXIT_FAIL if bad else EXIT_OK
    ub = harness.capacity_upper_bound(args.tau, args.N, args.N_E)
    lb = harness.holevo_lower_bound(args.tau, args.N, args.N_E)
    print(f"upper_bound {ub * k:.15g} {u}")
    print(f"holevo_lower_bound {lb * k:.15g} {u}")
    print(f"gap {(ub - lb) * k:.15g} {u}")
    return EXIT_OK


def cmd_witness(args) -> int:
    state = load_state(args.path)
    rec = harness.entanglement_witness(state, args.zeta, args.renyi_p)
    k, u = _scale(args.units), args.units
    tag = " (conjectural)" if rec.conjectural else ""
    print(f"{rec.functional}{tag} output entropy {rec.entropy * k:.15g} {u}; threshold ln(2*zeta-1) = {rec.entropy_threshold * k:.15g} {u}")
    print(f"entropy margin {rec.entropy_margin * k:.15g} {u} -> flag {rec.entropy_flag}")
    print(f"purity {rec.purity:.15g}; threshold {rec.purity_threshold:.15g} -> flag {rec.purity_flag}")
    if rec.entropy_flag or rec.purity_flag:
        print("entanglement detected")
    return EXIT_OK


def _add_battery_args(sp, with_p: bool) -> None:
    sp.add_argument("--modes", type=int, nargs="+", default=[1, 2, 3])
    sp.add_argument("--tau", type=float, nargs="+", default=list(harness.DEFAULT_TAUS))
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out", help="output directory for records.jsonl and summary.csv")
    if with_p:
        sp.add_argument("--p", type=float, nargs="+", default=[1.5, 2.0, 3.0])
        sp.add_argument("--kappa", type=float, nargs="+", help="fixed kappa values (overrides --kappa-offset)")
        sp.add_argument("--kappa-offset", type=float, nargs="+", default=[0.0], help="kappa = (p+1)/2 + offset")
        sp.add_argument("--convention", choices=["eq5", "eq9"], default="eq5")
        sp.add_argument("--experimental-p", action="store_true", help="allow orders p < 1 (conjectural)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bosonic-renyi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="check a Gaussian state JSON file")
    sp.add_argument("path")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("entropy", help="evaluate an entropy functional of a state")
    sp.add_argument("path")
    sp.add_argument("--functional", choices=["wehrl", "wigner", "von_neumann", "trace_renyi"], default="wehrl")
    sp.add_argument("--p", type=float, default=2.0)
    sp.add_argument("--units", choices=["nats", "bits"], default="nats")
    sp.set_defaults(func=cmd_entropy)

    sp = sub.add_parser("convolve", help="beam-splitter mix of two states")
    sp.add_argument("x")
    sp.add_argument("y")
    sp.add_argument("--tau", type=float, required=True)
    sp.add_argument("--convention", choices=["eq5", "eq9"], default="eq5")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_convolve)

    sp = sub.add_parser("epi-sweep", help="seeded Renyi EPI battery")
    sp.add_argument("--functional", nargs="+", choices=list(harness.EPI_FUNCTIONALS), default=list(harness.EPI_FUNCTIONALS))
    _add_battery_args(sp, with_p=True)
    sp.set_defaults(func=cmd_epi_sweep)

    sp = sub.add_parser("epni-check", help="entropy photon-number inequality (two files or a random battery)")
    sp.add_argument("x", nargs="?")
    sp.add_argument("y", nargs="?")
    _add_battery_args(sp, with_p=False)
    sp.set_defaults(func=cmd_epni_check)

    sp = sub.add_parser("young-check", help="sharp Young inequality sweep, both exponent conventions")
    sp.add_argument("--pairs", type=int, default=50)
    sp.add_argument("--modes", type=int, default=1)
    sp.add_argument("--tau", type=float, default=0.5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--young-exponent", choices=list(harness.YOUNG_MODES), default="full_dimension")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_young_check)

    sp = sub.add_parser("lemma1", help="homogeneity lemma search (default: standard grid)")
    sp.add_argument("--t", type=float)
    sp.add_argument("--a", type=float)
    sp.set_defaults(func=cmd_lemma1)

    sp = sub.add_parser("lemma2", help="calculus lemma minimizer (default: grid)")
    sp.add_argument("--c", type=float)
    sp.add_argument("--d", type=float)
    sp.add_argument("--grid", type=int, default=20)
    sp.set_defaults(func=cmd_lemma2)

    sp = sub.add_parser("capacity", help="thermal-noise channel capacity bounds")
    sp.add_argument("--tau", type=float, default=0.5)
    sp.add_argument("--N", type=float, default=1.0)
    sp.add_argument("--N-E", dest="N_E", type=float, default=0.0)
    sp.add_argument("--grid", type=int, help="emit a grid^3 CSV instead of a single point")
    sp.add_argument("--units", choices=["nats", "bits"], default="nats")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_capacity)

    sp = sub.add_parser("witness", help="amplifier entanglement witness on a (signal, idler) state")
    sp.add_argument("path")
    sp.add_argument("--zeta", type=float, required=True)
    sp.add_argument("--renyi-p", type=float, help="use the order-p trace entropy (conjectural)")
    sp.add_argument("--units", choices=["nats", "bits"], default="nats")
    sp.set_defaults(func=cmd_witness)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OperationalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OPERATIONAL
    except GaussianError as exc:
        print(f"invalid: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OPERATIONAL


if __name__ == "__main__":
    sys.exit(main())

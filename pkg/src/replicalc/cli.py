"""Command-line front end.

Exit codes: 0 success, 2 usage, 3 unreachable target, 4 I/O failure,
5 Monte Carlo calibration failure.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

from . import datasets, discrete, montecarlo, power, replication as rep
from ._format import fmt, to_csv, to_json, to_plain
from .normal import Probability, Sidedness
from .study import StudyDesign

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNREACHABLE = 3
EXIT_IO = 4
EXIT_CALIBRATION = 5

FORMATS = ("plain", "csv", "json")


class UsageError(Exception):
    pass


def _precision(text: str) -> int:
    v = int(text)
    if not 1 <= v <= 15:
        raise argparse.ArgumentTypeError("precision must be between 1 and 15")
    return v


def _n2(text: str):
    if text.lower() in ("inf", "infinite", "infinity"):
        return rep.INFINITE
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'inf', got {text!r}")
    return v


def _emit(args, columns, rows, record=None):
    """Print rows in the selected format; ``record`` overrides the JSON body."""
    p = args.precision
    if args.format == "json":
        if record is not None:
            body = record
        elif len(rows) == 1:
            body = dict(zip(columns, rows[0]))
        else:
            body = [dict(zip(columns, r)) for r in rows]
        sys.stdout.write(to_json(body, p))
    elif args.format == "csv":
        sys.stdout.write(to_csv(columns, rows, p))
    elif len(rows) == 1 and len(columns) <= 2 and record is None:
        sys.stdout.write(fmt(rows[0][0], p) + "\n")
    elif len(rows) == 1:
        width = max(len(c) for c in columns)
        for c, v in zip(columns, rows[0]):
            sys.stdout.write(f"{c.ljust(width)}  {fmt(v, p)}\n")
    else:
        sys.stdout.write(to_plain(columns, rows, p))


def _write(path, text: str):
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise _IOFailure(str(exc)) from exc


class _IOFailure(Exception):
    pass


def _check_open(name, value):
    if not 0.0 < value < 1.0:
        raise UsageError(f"{name} must lie strictly between 0 and 1, got {value}")


def _p1_one_sided(args) -> float:
    _check_open("--p1", args.p1)
    side = Sidedness.TWO_SIDED if args.two_sided else Sidedness.ONE_SIDED
    return Probability(args.p1, side).one_sided


def _design_from_args(args) -> StudyDesign:
    missing = [f for f, v in (("--b", args.b), ("--sd", args.sd), ("--n1", args.n1))
               if v is None]
    if missing:
        raise UsageError(f"missing {', '.join(missing)}")
    if args.sd <= 0:
        raise UsageError(f"--sd must be positive, got {args.sd}")
    if args.n1 < 2:
        raise UsageError(f"--n1 must be >= 2, got {args.n1}")
    return StudyDesign(args.b, args.sd, args.n1)


def _query(args, n2) -> rep.ReplicationQuery:
    _check_open("--p3", args.p3)
    if n2 is not rep.INFINITE and n2 < 2:
        raise UsageError(f"--n2 must be >= 2 or 'inf', got {n2}")
    return rep.ReplicationQuery(args.p3, n2)


def _uses_design(args) -> bool:
    return any(v is not None for v in (args.b, args.sd, args.n1))


def cmd_replicate(args) -> int:
    if args.p1 is not None and _uses_design(args):
        raise UsageError("--p1 cannot be combined with --b/--sd/--n1")
    if args.p1 is None and not _uses_design(args):
        raise UsageError("give either --p1 or --b --sd --n1 --n2")
    if args.p1 is not None:
        p1 = _p1_one_sided(args)
        _check_open("--p3", args.p3)
        if args.n2 is None:
            res = rep.prob_replication_from_p(p1, args.p3)
        elif args.n2 is rep.INFINITE:
            res = rep.prob_replication_infinite_from_p(p1, args.p3)
        else:
            raise UsageError("--n2 with --p1 must be 'inf'; equal sizes are assumed otherwise")
    else:
        if args.n2 is None:
            raise UsageError("missing --n2")
        res = rep.prob_replication(_design_from_args(args), _query(args, args.n2))
    _emit(args, ["probability", "formula"], [[res.probability, res.formula.value]])
    return EXIT_OK


def cmd_prep(args) -> int:
    p1 = _p1_one_sided(args)
    res = rep.p_rep(p1, infinite_n2=args.infinite)
    _emit(args, ["probability", "formula"], [[res.probability, res.formula.value]])
    return EXIT_OK


def cmd_power(args) -> int:
    modes = [m for m in ("target_power", "target_predictive", "n") if getattr(args, m) is not None]
    if len(modes) != 1:
        raise UsageError("give exactly one of --target-power, --target-predictive, --n")
    mode = modes[0]
    if args.sd <= 0:
        raise UsageError(f"--sd must be positive, got {args.sd}")
    _check_open("--alpha", args.alpha)
    m = args.multiplicity
    if mode == "target_power":
        if m not in (None, 1):
            raise UsageError("--target-power is likelihood power; --multiplicity must be 1")
        m = 1
    elif mode == "target_predictive":
        m = 2 if m is None else m
        if m == 1:
            raise UsageError("--target-predictive needs --multiplicity 2 or 3")
    else:
        m = 1 if m is None else m
    target = getattr(args, mode) if mode != "n" else 0.5
    if mode != "n":
        _check_open(f"--{mode.replace('_', '-')}", target)
    spec = power.PowerSpec(args.b, args.sd, args.alpha, target, m)
    parallel = args.design == "parallel"

    if mode == "n":
        if args.n < 2:
            raise UsageError(f"--n must be >= 2, got {args.n}")
        prob = power.predictive_power(args.n, spec)
        cols, row = ["probability", "multiplicity"], [prob, m]
        if parallel:
            cols.append("parallel_total")
            row.append(power.parallel_total(args.n))
        _emit(args, cols, [row], record=dict(zip(cols, row)) if parallel else None)
        return EXIT_OK

    try:
        size = power.required_n_predictive(spec)
    except (power.UnreachableTarget, power.UndetectableEffect) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNREACHABLE
    cols, row = ["n_exact", "n", "multiplicity"], [size.exact, size.n, m]
    if parallel:
        cols.append("parallel_total")
        row.append(power.parallel_total(size.n))
    _emit(args, cols, [row], record=dict(zip(cols, row)))
    return EXIT_OK


def _empirical_rows():
    report = datasets.compare()
    return list(report.columns), report.table(), report.as_dict()


def _power_rows():
    cols = ["n", "power", "predictive_2", "predictive_3", "parallel_total", "note"]
    rows = [[c.n, c.power, c.predictive_2, c.predictive_3, c.parallel_total,
             "; ".join(c.notes)] for c in power.table2()]
    return cols, rows, [dict(zip(cols, r)) for r in rows]


def cmd_table(args) -> int:
    if args.precision_given is None:
        args.precision = 3
    cols, rows, record = _empirical_rows() if args.which == 1 else _power_rows()
    _emit(args, cols, rows, record=record)
    return EXIT_OK


def _noise_range(sd: float, delta: float) -> discrete.RangeSpec:
    half = math.ceil(8.0 * sd / delta) * delta
    return discrete.RangeSpec(-half, half, delta)


def cmd_discretize(args) -> int:
    try:
        rng = discrete.RangeSpec(args.lo, args.hi, args.delta)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.sd <= 0:
        raise UsageError(f"--sd must be positive, got {args.sd}")
    dist = discrete.discretize_gaussian(args.mean, args.sd, rng)
    if args.convolve_sd is not None:
        if args.convolve_sd <= 0:
            raise UsageError(f"--convolve-sd must be positive, got {args.convolve_sd}")
        noise = discrete.discretize_gaussian(0.0, args.convolve_sd,
                                             _noise_range(args.convolve_sd, args.delta))
        dist = discrete.convolve(dist, noise)
    text = dist.to_csv()
    summary = {"bins": len(dist), "origin": dist.origin, "delta": dist.delta,
               "total_mass": dist.total}
    if args.tail is not None:
        summary["tail_threshold"] = args.tail
        summary["tail_at_or_above"] = discrete.tail_mass(dist, args.tail, interpolate=True)
    if args.out is None:
        sys.stdout.write(text)
        return EXIT_OK
    _write(args.out, text)
    _emit(args, list(summary), [list(summary.values())], record=summary)
    return EXIT_OK


def cmd_simulate(args) -> int:
    if args.trials < 1:
        raise UsageError(f"--trials must be >= 1, got {args.trials}")
    if not 0 <= args.seed < 2 ** 64:
        raise UsageError("--seed must be a 64-bit unsigned integer")
    if args.p1 is not None and _uses_design(args):
        raise UsageError("--p1 cannot be combined with --b/--sd/--n1")
    if args.p1 is not None:
        design = montecarlo.design_for_p(_p1_one_sided(args))
        n2 = design.n if args.n2 is None else args.n2
    else:
        design = _design_from_args(args)
        n2 = design.n if args.n2 is None else args.n2
    query = _query(args, n2)
    if args.mode == "rival":
        if n2 is rep.INFINITE:
            raise UsageError("--mode rival needs a finite --n2")
        cfg = montecarlo.SimConfig(args.trials, args.seed, design, query)
        report = montecarlo.simulate_rival(cfg)
    else:
        mode = montecarlo.Mode.SAME_SIGN if args.mode == "same-sign" else montecarlo.Mode.P_VALUE
        cfg = montecarlo.SimConfig(args.trials, args.seed, design, query, mode)
        report = montecarlo.simulate(cfg)
    rec = report.as_dict()
    _emit(args, list(rec), [list(rec.values())], record=rec)
    return EXIT_OK if report.within(args.max_z) else EXIT_CALIBRATION


def cmd_curves(args) -> int:
    try:
        text = datasets.emit_figure3(args.z_lo, args.z_hi, args.step,
                                     precision=args.precision)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.out is None:
        sys.stdout.write(text)
    else:
        _write(args.out, text)
    return EXIT_OK


def _add_p1(p, required=False):
    p.add_argument("--p1", type=float, required=required,
                   help="original P value (one-sided unless --two-sided)")
    side = p.add_mutually_exclusive_group()
    side.add_argument("--one-sided", dest="two_sided", action="store_false",
                      default=False, help="--p1 is one-sided (default)")
    side.add_argument("--two-sided", dest="two_sided", action="store_true",
                      help="--p1 is two-sided")


def _add_design(p):
    p.add_argument("--b", type=float, help="observed raw effect size")
    p.add_argument("--sd", type=float, help="outcome standard deviation")
    p.add_argument("--n1", type=int, help="original sample size")
    p.add_argument("--n2", type=_n2, help="replicating sample size, or 'inf'")
    p.add_argument("--p3", type=float, default=0.025,
                   help="one-sided replication threshold (default 0.025)")


def build_parser() -> argparse.ArgumentParser:
    env_fmt = os.environ.get("REPLICALC_FORMAT", "plain")
    if env_fmt not in FORMATS:
        env_fmt = "plain"
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=env_fmt,
                        help="output format (default from REPLICALC_FORMAT, else plain)")
    common.add_argument("--precision", type=_precision, default=None,
                        help="decimals to round to (1-15, default 6)")

    parser = argparse.ArgumentParser(prog="replicalc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("replicate", parents=[common],
                       help="probability that a replication reaches P <= p3")
    _add_design(p)
    _add_p1(p)
    p.set_defaults(func=cmd_replicate)

    p = sub.add_parser("prep", parents=[common], help="same-sign replication probability")
    _add_p1(p, required=True)
    p.add_argument("--infinite", action="store_true",
                   help="replicating study of unbounded size")
    p.set_defaults(func=cmd_prep)

    p = sub.add_parser("power", parents=[common], help="likelihood and predictive power")
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--sd", type=float, required=True)
    p.add_argument("--alpha", type=float, default=0.05, help="two-sided alpha")
    p.add_argument("--target-power", type=float)
    p.add_argument("--target-predictive", type=float)
    p.add_argument("--n", type=int, help="evaluate power at this sample size")
    p.add_argument("--multiplicity", type=int, choices=(1, 2, 3))
    p.add_argument("--design", choices=("crossover", "parallel"), default="crossover")
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("table", parents=[common], help="reproduce the reference tables")
    p.add_argument("--which", type=int, choices=(1, 2), required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("discretize", parents=[common], help="binned Gaussian as CSV")
    p.add_argument("--mean", type=float, default=2.0)
    p.add_argument("--sd", type=float, default=1.0)
    p.add_argument("--lo", type=float, default=-4.0)
    p.add_argument("--hi", type=float, default=8.0)
    p.add_argument("--delta", type=float, default=discrete.DEFAULT_DELTA)
    p.add_argument("--convolve-sd", type=float,
                   help="convolve with N(0, sd^2) replicate noise")
    p.add_argument("--tail", type=float, help="report mass at or above this value")
    p.add_argument("--out", type=Path, help="CSV path (default stdout)")
    p.set_defaults(func=cmd_discretize)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo check")
    _add_design(p)
    _add_p1(p)
    p.add_argument("--trials", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("p-value", "same-sign", "rival"), default="p-value")
    p.add_argument("--max-z", type=float, default=4.0,
                   help="calibration tolerance in standard errors")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("curves", parents=[common], help="replication curves and markers")
    p.add_argument("--z-lo", type=float, default=0.0)
    p.add_argument("--z-hi", type=float, default=4.0)
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_curves)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.precision_given = args.precision
    if args.precision is None:
        args.precision = 6
    try:
        return args.func(args)
    except UsageError as exc:
        parser.exit(EXIT_USAGE, f"replicalc {args.command}: error: {exc}\n")
    except _IOFailure as exc:
        print(f"replicalc {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

"""hidden-pair: batch command line for the hidden pair experiments."""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from contextlib import contextmanager
from fractions import Fraction

from . import harness
from .algorithms import DEFAULT_OMEGA, GROVER_C
from .core import BitString, HiddenPairInstance, Rng, random_instance, trial_seed
from .matroid import AXIOM_CAP, TwoBasesMatroid, validate_matroid_axioms
from .quantum.ball import BallSpec, ball_distribution, default_k, lambda_k
from .quantum.wht import EXACT_CAP, wht_distribution

FORMATS = ("table", "csv", "json")


class UsageError(Exception):
    pass


def parse_ns(text: str) -> list[int]:
    """'8', '8,16,32' or 'a:b[:step]' (inclusive)."""
    ns = []
    for part in text.split(","):
        part = part.strip()
        if ":" in part:
            bits = [int(x) for x in part.split(":")]
            if len(bits) not in (2, 3):
                raise argparse.ArgumentTypeError(f"bad range {part!r}")
            lo, hi = bits[0], bits[1]
            step = bits[2] if len(bits) == 3 else 1
            ns.extend(range(lo, hi + 1, step))
        elif part:
            ns.append(int(part))
    if not ns:
        raise argparse.ArgumentTypeError("empty n list")
    return ns


def default_seed() -> int:
    raw = os.environ.get("HS_SEED")
    if raw is None:
        return 0
    try:
        return int(raw, 0)
    except ValueError as exc:
        raise UsageError(f"HS_SEED must be an integer, got {raw!r}") from exc


@contextmanager
def open_out(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _cell(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, int) and value.bit_length() > 60:
        return f"~2^{value.bit_length() - 1}"
    return str(value)


def write_rows(rows: list[dict], fmt: str, fh) -> None:
    if not rows:
        return
    columns = list(dict.fromkeys(c for r in rows for c in r))
    if fmt == "json":
        for r in rows:
            fh.write(json.dumps(r) + "\n")
    elif fmt == "csv":
        writer = csv.DictWriter(fh, fieldnames=columns)
        writer.writeheader()
        writer.writerows(rows)
    else:
        cells = [[_cell(r.get(c)) for c in columns] for r in rows]
        widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(columns)]
        fh.write("  ".join(c.rjust(w) for c, w in zip(columns, widths)) + "\n")
        for row in cells:
            fh.write("  ".join(v.rjust(w) for v, w in zip(row, widths)) + "\n")


def cmd_gen(args) -> int:
    if args.n < 3:
        raise UsageError("n must be >= 3 (n=2 is trivial)")
    if args.count < 1:
        raise UsageError("count must be >= 1")
    with open_out(args.out) as fh:
        for i in range(args.count):
            inst = random_instance(args.n, Rng(trial_seed(args.seed, i)))
            fh.write(json.dumps(inst.to_json()) + "\n")
    return 0


def _load_jsonl(path: str) -> list[dict]:
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]


def cmd_run(args) -> int:
    if args.replay:
        return _replay(args.replay)
    config = harness.ExperimentConfig(
        algorithm=args.algorithm,
        ns=args.n,
        trials=args.trials,
        omega=args.omega,
        k=args.k,
        lam=args.lam,
        mode=args.mode,
        seed=args.seed,
        grover_c=args.grover_c,
        retries=args.retries,
        timing=args.timing,
        instances=_load_jsonl(args.instances) if args.instances else None,
    )
    try:
        config.validate()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    reports = []
    if args.out:
        with open(args.out, "w") as fh:
            for r in harness.iter_reports(config, args.workers):
                fh.write(harness.report_line(r) + "\n")
                reports.append(r)
    else:
        reports = list(harness.iter_reports(config, args.workers))
    write_rows(harness.summarize(config, reports), args.format, sys.stdout)
    return 0


def _replay(path: str) -> int:
    mismatches = 0
    total = 0
    for record in _load_jsonl(path):
        total += 1
        again = dict(harness.replay_report(record))
        original = dict(record)
        original.pop("wall_time", None)
        again.pop("wall_time", None)
        if harness.report_line(again) != harness.report_line(original):
            mismatches += 1
            print(f"trial {record['trial']} (n={record['n']}) did not replay", file=sys.stderr)
    print(f"replayed {total} reports, {mismatches} mismatches")
    return 1 if mismatches else 0


def cmd_dist(args) -> int:
    if args.engine == "maxip":
        if not (args.s and args.s_prime):
            raise UsageError("dist maxip needs --s and --s-prime")
        try:
            inst = HiddenPairInstance.from_strings(args.s, args.s_prime)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if inst.n > args.cap:
            raise UsageError(f"n={inst.n} exceeds the exact WHT cap {args.cap}")
        dist = wht_distribution(inst, args.cap)
    else:
        if args.t:
            t = BitString.parse(args.t)
            n = t.n
            if args.n is not None and args.n != n:
                raise UsageError("--n disagrees with the length of --t")
        elif args.n is not None:
            n = args.n
            t = BitString.ones(n)
        else:
            raise UsageError("dist ball needs --n or --t")
        if args.k is not None and args.lam is not None:
            raise UsageError("give --k or --lambda, not both")
        k = args.k if args.k is not None else (lambda_k(n, args.lam) if args.lam is not None else default_k(n))
        try:
            spec = BallSpec(n, k)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        dist = ball_distribution(spec, t)
    data = dist.to_json()
    if args.format == "json":
        print(json.dumps(data))
        return 0
    if dist.form == "weight_class":
        p_t = dist.probability(dist.center)
        print(f"n={dist.n} k={spec.k} M_k={spec.M_k if spec.M_k.bit_length() < 64 else '~2^%d' % (spec.M_k.bit_length() - 1)}")
        print(f"p(t) = {float(p_t):.4f}  exact M_k/2^n = {_short_fraction(p_t)}")
        rows = [
            {"distance": e["distance"], "class_size": e["class_size"], "p_string": e["p_float"],
             "p_class": float(dist.class_mass(e["distance"]))}
            for e in data["entries"]
        ]
    else:
        rows = [{"outcome": e["outcome"], "p": e["p"], "p_float": e["p_float"]} for e in data["entries"]]
    write_rows(rows, args.format, sys.stdout)
    return 0


def _short_fraction(p: Fraction) -> str:
    text = f"{p.numerator}/{p.denominator}"
    return text if len(text) <= 60 else f"(~{float(p):.12g}, {len(text)} chars)"


def cmd_bounds(args) -> int:
    if min(args.n) < 3:
        raise UsageError("every n must be >= 3")
    rows = harness.bounds_rows(args.n, args.omega, args.grover_c)
    write_rows(rows, args.format, sys.stdout)
    return 0


def cmd_oscillation(args) -> int:
    try:
        rows = harness.oscillation_rows(args.n_min, args.n_max, args.lam)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    with open_out(args.out) as fh:
        if args.format == "dat":
            cols = list(rows[0])
            fh.write("# " + " ".join(cols) + "\n")
            for r in rows:
                fh.write(" ".join(str(r[c]) for c in cols) + "\n")
        else:
            write_rows(rows, args.format, fh)
    lo = min(rows, key=lambda r: r["p_exact"])
    hi = max(rows, key=lambda r: r["p_exact"])
    print(
        f"min p(t) = {lo['p_exact']:.6f} at n={lo['n']}; max p(t) = {hi['p_exact']:.6f} at n={hi['n']}",
        file=sys.stderr,
    )
    return 0


def cmd_matroid(args) -> int:
    try:
        with open(args.file) as fh:
            matroid = TwoBasesMatroid.from_json(json.load(fh))
    except ValueError as exc:
        raise UsageError(f"invalid matroid: {exc}") from exc
    if matroid.n <= AXIOM_CAP and not validate_matroid_axioms(matroid):
        raise UsageError("invalid matroid: independence axioms violated")
    mode = "exact" if args.mode == "exact" else "analytic"
    reports, summary = harness.run_matroid(
        matroid, args.kind, args.trials, args.seed, args.omega, mode, args.grover_c
    )
    if args.out:
        with open(args.out, "w") as fh:
            for r in reports:
                fh.write(harness.report_line(r) + "\n")
    write_rows([summary], args.format, sys.stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hidden-pair", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=FORMATS):
        p.add_argument("--seed", type=lambda s: int(s, 0), default=None, help="default: $HS_SEED or 0")
        p.add_argument("--format", choices=formats, default="table")
        p.add_argument("--out", default=None)

    p = sub.add_parser("gen", help="write random instances as JSON lines")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("run", help="run seeded trials of one algorithm")
    common(p)
    p.add_argument("--algorithm", choices=harness.ALGORITHMS, default="maxip")
    p.add_argument("--n", type=parse_ns, default=[8], help="8 | 8,16,32 | lo:hi[:step]")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--omega", type=int, default=DEFAULT_OMEGA)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--mode", choices=harness.RUN_MODES, default="sampled")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--retries", type=int, default=0, help="re-run NULL outcomes up to this many times")
    p.add_argument("--grover-c", type=float, default=GROVER_C)
    p.add_argument("--instances", default=None, help="JSON-lines file from 'gen'")
    p.add_argument("--timing", action="store_true", help="record wall_time in reports")
    p.add_argument("--replay", default=None, help="re-run a report file and compare")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("dist", help="print an exact outcome distribution")
    common(p)
    p.add_argument("engine", choices=("maxip", "ball"))
    p.add_argument("--s")
    p.add_argument("--s-prime")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--t")
    p.add_argument("--cap", type=int, default=EXACT_CAP)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("bounds", help="classical lower bounds next to quantum costs")
    common(p)
    p.add_argument("--n", type=parse_ns, required=True)
    p.add_argument("--omega", type=int, default=DEFAULT_OMEGA)
    p.add_argument("--grover-c", type=float, default=GROVER_C)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("oscillation", help="exact M_k/2^n across a range of n")
    common(p, FORMATS + ("dat",))
    p.set_defaults(format="csv")
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=1000)
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.set_defaults(func=cmd_oscillation)

    p = sub.add_parser("matroid", help="identify the bases of a 2-bases matroid")
    common(p)
    p.add_argument("file", help='JSON: {"n": int, "bases": [string, string]}')
    p.add_argument("--kind", choices=harness.MATROID_KINDS, default="rank")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--omega", type=int, default=DEFAULT_OMEGA)
    p.add_argument("--mode", choices=harness.RUN_MODES, default="sampled")
    p.add_argument("--grover-c", type=float, default=GROVER_C)
    p.set_defaults(func=cmd_matroid)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.seed is None:
            args.seed = default_seed()
        return args.func(args)
    except UsageError as exc:
        print(f"hidden-pair {args.command}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"hidden-pair {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point.

    btoeplitz run --all --seed 42 --trials 100 --json report.json
    btoeplitz run --theorem T5.2 --n 2..4 --d 1..2 --trials 500
    btoeplitz verify instance.json

Exit codes: 0 on a full pass, 1 if any trial disagrees with its oracle,
2 for bad flags or an unreadable instance file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional, Sequence

from . import __version__
from .errors import PreconditionViolation
from .harness import ALGEBRA_KINDS, IFF_THEOREMS, THEOREMS, TrialConfig, coverage, run_theorem_suite
from .normality import normality_criterion
from .serialize import InstanceError, load_instance
from .toeplitz import commutant_S_classify, commutant_SX_classify, displacement_form, toeplitz_recognize

__all__ = ["main", "build_parser", "cmd_run", "cmd_verify"]

SEED_ENV = "BTOEPLITZ_SEED"


class _Parser(argparse.ArgumentParser):
    # argparse already exits with status 2 on usage errors; keep that explicit.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _int_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        lo_i = int(lo)
        hi_i = int(hi) if sep else lo_i
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if lo_i < 1 or lo_i > hi_i:
        raise argparse.ArgumentTypeError(f"range {text!r} must satisfy 1 <= A <= B")
    return lo_i, hi_i


def _theorem(text: str) -> str:
    if text not in THEOREMS:
        raise argparse.ArgumentTypeError(
            f"unknown theorem {text!r}; choose from {', '.join(THEOREMS)}")
    return text


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="btoeplitz", description="Exact checks of block Toeplitz structure results.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("run", help="run randomized theorem suites")
    r.add_argument("--theorem", action="append", type=_theorem, default=[],
                   help="suite id (repeatable)")
    r.add_argument("--all", action="store_true", help="run every suite")
    default_seed = os.environ.get(SEED_ENV, "42")
    r.add_argument("--seed", type=int, default=int(default_seed) if default_seed.lstrip("-").isdigit() else 42)
    r.add_argument("--trials", type=int, default=100)
    r.add_argument("--n", type=_int_range, default=(2, 5), metavar="A..B")
    r.add_argument("--d", type=_int_range, default=(1, 3), metavar="A..B")
    r.add_argument("--algebra", action="append", choices=ALGEBRA_KINDS, default=[],
                   help="algebra kind (repeatable); default diagonal, circulant, poly")
    r.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")
    r.add_argument("--counterexamples", metavar="PATH", help="JSON-lines file of failing trials")
    r.add_argument("--jobs", type=int, default=1, help="worker processes per suite")

    v = sub.add_parser("verify", help="classify a block matrix or ToeplitzSpec from a JSON file")
    v.add_argument("instance", help="JSON instance file")
    v.add_argument("--x", metavar="JSON", help="X as a JSON matrix, overriding the file's X")
    return p


def _suite_entry(theorem_id: str, outcomes) -> dict:
    passed = sum(o.agreement for o in outcomes)
    entry = {"trials": len(outcomes), "passed": passed, "failed": len(outcomes) - passed}
    if theorem_id in IFF_THEOREMS:
        t, f = coverage(outcomes)
        entry["criterion_true"], entry["criterion_false"] = t, f
    return entry


def cmd_run(args) -> int:
    theorems = list(THEOREMS) if args.all else list(dict.fromkeys(args.theorem))
    if not theorems:
        print("run: give --theorem ID or --all", file=sys.stderr)
        return 2
    try:
        config = TrialConfig(seed=args.seed, trials=args.trials, n_range=args.n, d_range=args.d,
                             algebra_kinds=tuple(args.algebra) or TrialConfig.algebra_kinds)
    except ValueError as exc:
        print(f"run: {exc}", file=sys.stderr)
        return 2

    start = time.perf_counter()
    suites, failures = {}, []
    for tid in theorems:
        outcomes = run_theorem_suite(tid, config, jobs=args.jobs)
        suites[tid] = _suite_entry(tid, outcomes)
        failures.extend(o for o in outcomes if not o.agreement)
        s = suites[tid]
        print(f"{'PASS' if not s['failed'] else 'FAIL'} {tid:7s} {s['passed']}/{s['trials']}")

    if args.counterexamples:
        with open(args.counterexamples, "w") as fh:
            for o in failures:
                fh.write(json.dumps(o.to_json(), sort_keys=True) + "\n")

    failed_total = len(failures)
    report = {
        "tool": "btoeplitz",
        "version": __version__,
        "seed": config.seed,
        "config": {
            "trials": config.trials,
            "n_range": list(config.n_range),
            "d_range": list(config.d_range),
            "algebra_kinds": list(config.algebra_kinds),
            "coefficient_bound": config.coefficient_bound,
        },
        "suites": suites,
        "counterexamples": args.counterexamples,
        "failed_total": failed_total,
        "wall_time": round(time.perf_counter() - start, 3),
    }
    if args.json:
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
        if args.json == "-":
            sys.stdout.write(text)
        else:
            with open(args.json, "w") as fh:
                fh.write(text)
    print(f"{len(theorems)} suites, {failed_total} failing trials")
    return 1 if failed_total else 0


def _fmt_column(col) -> str:
    return json.dumps(col.to_json())


def cmd_verify(args) -> int:
    try:
        inst = load_instance(args.instance)
        x = inst.x
        if args.x:
            from .serialize import dense_from_json
            try:
                x = dense_from_json(json.loads(args.x), "--x")
            except json.JSONDecodeError as exc:
                raise InstanceError("--x", exc.msg) from None
            if x.d != inst.matrix.d:
                raise InstanceError("--x", f"X is {x.d}x{x.d}, blocks are {inst.matrix.d}x{inst.matrix.d}")
    except OSError as exc:
        print(f"verify: cannot read {args.instance}: {exc.strerror}", file=sys.stderr)
        return 2
    except InstanceError as exc:
        print(f"verify: {args.instance}: {exc}", file=sys.stderr)
        return 2

    m = inst.matrix
    print(f"block matrix: n={m.n}, d={m.d}")
    spec = toeplitz_recognize(m, inst.algebra)
    if spec is None and inst.algebra is not None and toeplitz_recognize(m) is not None:
        print("toeplitz: yes, but some block lies outside the given algebra")
    else:
        print(f"toeplitz: {'yes' if spec is not None else 'no'}")

    form = displacement_form(m)
    if form is None:
        print("displacement form: none (Delta(M) is not supported on the first block row and column)")
    else:
        a, omega = form
        print(f"displacement form: A = {_fmt_column(a)}")
        print(f"                   Omega = {_fmt_column(omega)}")

    print(f"commutant of S / S^*: {commutant_S_classify(m).kind}")
    if x is not None:
        print(f"commutant of S_X / S_X^*: {commutant_SX_classify(m, x).kind}")

    spec = toeplitz_recognize(m)
    if spec is None:
        print("normality: criterion not applicable (not Toeplitz)")
    else:
        try:
            report = normality_criterion(spec, inst.algebra)
        except PreconditionViolation as exc:
            print(f"normality: {exc}")
        else:
            print(f"normal: {'yes' if report.is_normal else 'no'}")
            witness = report.criterion_witness
            print(f"criterion witness: {'none' if witness is None else '(s, k) = %s' % (witness,)}")
            print(f"defect M^*M - MM^* is zero: {'yes' if report.defect_matrix.is_zero else 'no'}")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return cmd_run(args)
    return cmd_verify(args)


if __name__ == "__main__":
    sys.exit(main())

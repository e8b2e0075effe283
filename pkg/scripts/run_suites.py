"""Run every theorem suite at a chosen size and write the JSON report.

    python3 scripts/run_suites.py --trials 500 --out runs/report.json
"""

import argparse
import os
import sys

from btoeplitz.cli import main


def parse():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument("--out", default="runs/report.json")
    return p.parse_args()


if __name__ == "__main__":
    args = parse()
    os.makedirs(os.path.dirname(args.out) or ".", exist_ok=True)
    cex = os.path.splitext(args.out)[0] + ".counterexamples.jsonl"
    sys.exit(main(["run", "--all", "--seed", str(args.seed), "--trials", str(args.trials),
                   "--jobs", str(args.jobs), "--json", args.out, "--counterexamples", cex,
                   "--algebra", "diagonal", "--algebra", "circulant",
                   "--algebra", "poly", "--algebra", "explicit"]))

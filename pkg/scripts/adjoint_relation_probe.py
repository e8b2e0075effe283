"""Compare two readings of the head term in the adjoint relation.

The AB = CD test compares B^* Omega + A_0^* Lambda + (head term) P_0^*
across the two products. Taking adjoints of the zeroth relation gives the
head A_0^* B_0^*; the alternative A_0^* B_0 is also run here against the
direct AB = CD oracle.
"""

import argparse
from unittest import mock

from btoeplitz import toeplitz
from btoeplitz.harness import TrialConfig, run_theorem_suite


def alternative_side(aspec, bspec):
    a0s = aspec.diag.adjoint()
    return (bspec.build().adjoint() @ aspec.upper_column()
            + bspec.upper_column().left_mul(a0s)
            + toeplitz._head(aspec.n, a0s @ bspec.diag))


def count(config):
    outs = run_theorem_suite("T3.2ii", config)
    return sum(not o.agreement for o in outs), len(outs)


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trials", type=int, default=400)
    p.add_argument("--seed", type=int, default=42)
    a = p.parse_args()
    config = TrialConfig(seed=a.seed, trials=a.trials)
    bad, total = count(config)
    print(f"head A_0^* B_0^*: {bad}/{total} disagreements with AB = CD")
    with mock.patch.object(toeplitz, "_adjoint_side", alternative_side):
        bad, total = count(config)
    print(f"head A_0^* B_0  : {bad}/{total} disagreements with AB = CD")

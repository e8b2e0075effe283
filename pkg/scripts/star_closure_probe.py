"""Why the generators only produce algebras closed under adjoints.

The upper triangle of T(A, Omega) + A_0 holds Omega_k^*. Over an algebra
that is not closed under adjoints, drawing Omega_k from the algebra puts
the upper blocks outside it and the product displacement formula stops
matching brute force. Drawing the upper *blocks* from the algebra instead
restores it. The normality column is printed for comparison; random specs
are almost never normal, so it rarely separates the two cases.

Uses the algebra spanned by I and the nilpotent N = [[0, 1], [0, 0]].
"""

import argparse
import random

from btoeplitz.blocks import displacement
from btoeplitz.harness import Sampler
from btoeplitz.matrix import DenseMat, poly_algebra
from btoeplitz.normality import normal_defect, normality_criterion
from btoeplitz.toeplitz import ToeplitzSpec, product_displacement_rhs


def spec(s, alg, n, upper_blocks_in_alg):
    def el():
        return s.element(alg)
    upper = [el() for _ in range(n - 1)]
    if upper_blocks_in_alg:
        upper = [w.adjoint() for w in upper]
    return ToeplitzSpec(n, alg.d, el(), [el() for _ in range(n - 1)], upper)


def probe(trials, seed):
    alg = poly_algebra(DenseMat.from_rows([[1, 1], [0, 1]]))
    print(f"algebra dim {alg.dim}, closed under adjoints: {alg.is_star_closed()}")
    for upper_in_alg in (False, True):
        s = Sampler(random.Random(seed))
        product_bad = normal_bad = 0
        for _ in range(trials):
            n = s.rng.randint(2, 4)
            c, d = spec(s, alg, n, upper_in_alg), spec(s, alg, n, upper_in_alg)
            if product_displacement_rhs(c, d) != displacement(c.build() @ d.build()):
                product_bad += 1
            if normality_criterion(c).is_normal != normal_defect(c.build()).is_zero:
                normal_bad += 1
        where = "upper blocks Omega_k^*" if upper_in_alg else "stored Omega_k"
        print(f"{where} in the algebra: product formula fails {product_bad}/{trials}, "
              f"normality criterion disagrees {normal_bad}/{trials}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description="product formula over a non-adjoint-closed algebra")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args()
    probe(a.trials, a.seed)

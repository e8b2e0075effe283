"""Seeded generators and per-theorem trial runners.

Every trial draws its own ``random.Random`` from a seed derived by hashing
(config seed, theorem id, trial index), so outcomes do not depend on the
order or process in which trials run. Each runner compares the criterion
under test against an independent brute-force oracle.

For the iff statements, even-indexed trials start from an instance that
satisfies the criterion by construction and odd-indexed trials perturb one
entry of such an instance.
"""

from __future__ import annotations

import hashlib
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Any, Callable, Optional

from .blocks import (
    BlockMatrix,
    basis_row,
    displacement,
    displacement_reconstruct,
    shift_x,
)
from .errors import UnknownConstraint, UnknownTheorem
from .matrix import (
    CommAlgebra,
    DenseMat,
    algebra_to_descriptor,
    circulant_algebra,
    diagonal_algebra,
    poly_algebra,
    verify_algebra,
)
from .normality import circulant_normality, lemma51_all_zero, normal_defect, normality_criterion
from .scalar import GaussianRational
from .toeplitz import (
    ToeplitzSpec,
    commutant_S_classify,
    commutant_SX_classify,
    displacement_form,
    product_commute_check,
    product_displacement_rhs,
    product_toeplitz_test,
    product_zero_test,
    single_product_toeplitz_test,
    sx_closure_product,
    sx_commutant_spec,
    sx_displacement_form,
    sx_residual_has_form,
    sx_star_commutant_spec,
    toeplitz_recognize,
)

__all__ = [
    "TrialConfig",
    "TrialOutcome",
    "THEOREMS",
    "IFF_THEOREMS",
    "ALGEBRA_KINDS",
    "CONSTRAINTS",
    "derive_seed",
    "gen_algebra",
    "gen_spec",
    "gen_unitary",
    "run_theorem_suite",
    "coverage",
]

ALGEBRA_KINDS = ("diagonal", "circulant", "poly", "explicit")
CONSTRAINTS = ("none", "lower_only", "upper_only", "diagonal_only", "hermitian",
               "rotated_hermitian", "sx_commutant", "sx_star_commutant")


@dataclass(frozen=True)
class TrialConfig:
    seed: int = 42
    trials: int = 100
    n_range: tuple[int, int] = (2, 5)
    d_range: tuple[int, int] = (1, 3)
    algebra_kinds: tuple[str, ...] = ("diagonal", "circulant", "poly")
    coefficient_bound: int = 8

    def __post_init__(self):
        object.__setattr__(self, "n_range", tuple(self.n_range))
        object.__setattr__(self, "d_range", tuple(self.d_range))
        object.__setattr__(self, "algebra_kinds", tuple(self.algebra_kinds))
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.coefficient_bound < 1:
            raise ValueError("coefficient_bound must be at least 1")
        for name, (lo, hi) in (("n_range", self.n_range), ("d_range", self.d_range)):
            if lo < 1 or lo > hi:
                raise ValueError(f"{name} must be a nonempty range of positive integers")
        if not self.algebra_kinds:
            raise ValueError("algebra_kinds must be nonempty")
        for k in self.algebra_kinds:
            if k not in ALGEBRA_KINDS:
                raise ValueError(f"unknown algebra kind {k!r}")


@dataclass
class TrialOutcome:
    theorem_id: str
    trial: int
    instance: dict
    criterion_result: Any
    oracle_result: Any
    agreement: bool = field(init=False)

    def __post_init__(self):
        self.agreement = self.criterion_result == self.oracle_result

    @property
    def criterion_truth(self) -> Optional[bool]:
        r = self.criterion_result
        if isinstance(r, list):
            r = r[0] if r else None
        return r if isinstance(r, bool) else None

    def to_json(self) -> dict:
        return asdict(self)


def derive_seed(seed: int, theorem_id: str, index: int) -> int:
    digest = hashlib.blake2b(f"{seed}:{theorem_id}:{index}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


# ---- random exact values ------------------------------------------------------

# Pythagorean units (a + bi)/c with a^2 + b^2 = c^2, plus the Gaussian units.
_TRIPLES = ((3, 4, 5), (5, 12, 13), (8, 15, 17))
UNITS = tuple(
    [GaussianRational(1), GaussianRational(-1), GaussianRational(0, 1), GaussianRational(0, -1)]
    + [GaussianRational(Fraction(sa * a, c), Fraction(sb * b, c))
       for a, b, c in _TRIPLES for a, b in ((a, b), (b, a)) for sa in (1, -1) for sb in (1, -1)]
)


class Sampler:
    def __init__(self, rng: random.Random, bound: int = 8):
        self.rng = rng
        self.bound = bound

    def rational(self) -> Fraction:
        b = self.bound
        return Fraction(self.rng.randint(-b, b), self.rng.randint(1, b))

    def scalar(self) -> GaussianRational:
        return GaussianRational(self.rational(), self.rational())

    def nonzero_scalar(self) -> GaussianRational:
        while True:
            s = self.scalar()
            if s:
                return s

    def unit(self) -> GaussianRational:
        return self.rng.choice(UNITS)

    def element(self, alg: CommAlgebra) -> DenseMat:
        return alg.combination([self.scalar() for _ in alg.basis])

    def nonzero_element(self, alg: CommAlgebra) -> DenseMat:
        while True:
            m = self.element(alg)
            if not m.is_zero:
                return m

    def hermitian_element(self, alg: CommAlgebra) -> DenseMat:
        e = self.element(alg)
        return e + e.adjoint()

    def matrix(self, d: int) -> DenseMat:
        return DenseMat.from_entries(d, [self.scalar() for _ in range(d * d)])

    def commutant_element(self, alg: CommAlgebra) -> DenseMat:
        basis = _commutant_basis(alg)
        out = DenseMat.zeros(alg.d)
        for b in basis:
            out = out + b.scale(self.scalar())
        return out

    def block_matrix(self, alg: CommAlgebra, n: int) -> BlockMatrix:
        return BlockMatrix.from_function(n, lambda i, j: self.element(alg))


_COMMUTANT_CACHE: dict = {}


def _commutant_basis(alg: CommAlgebra) -> list[DenseMat]:
    key = id(alg)
    hit = _COMMUTANT_CACHE.get(key)
    if hit is None or hit[0] is not alg:
        hit = (alg, alg.commutant_basis())
        _COMMUTANT_CACHE.clear()
        _COMMUTANT_CACHE[key] = hit
    return hit[1]


# ---- generators ---------------------------------------------------------------

def _rotation(d: int, rng: random.Random) -> DenseMat:
    """Rational orthogonal matrix rotating one random coordinate plane."""
    a, b, c = rng.choice(_TRIPLES)
    i, j = sorted(rng.sample(range(d), 2))
    rows = [[Fraction(int(r == s)) for s in range(d)] for r in range(d)]
    rows[i][i] = rows[j][j] = Fraction(a, c)
    rows[i][j] = Fraction(-b, c)
    rows[j][i] = Fraction(b, c)
    return DenseMat.from_rows([[GaussianRational(x) for x in r] for r in rows])


def gen_algebra(kind: str, d: int, seed: int) -> CommAlgebra:
    """A *-closed commutative algebra of d x d matrices, deterministic per seed.

    ``poly`` closes the powers of a random Hermitian matrix; ``explicit``
    conjugates the diagonal algebra by a rational rotation.
    """
    if d < 1:
        raise ValueError("d must be positive")
    rng = random.Random(seed)
    if kind == "diagonal":
        return diagonal_algebra(d)
    if kind == "circulant":
        return circulant_algebra(d)
    if kind == "poly":
        while True:
            m = DenseMat.from_entries(d, [GaussianRational(rng.randint(-2, 2), rng.randint(-2, 2))
                                          for _ in range(d * d)])
            h = m + m.adjoint()
            alg = poly_algebra(h)
            if d == 1 or alg.dim > 1:
                return alg
    if kind == "explicit":
        if d == 1:
            return verify_algebra([DenseMat.identity(1)], kind="explicit")
        r = _rotation(d, rng)
        rt = r.adjoint()
        units = [r @ b @ rt for b in diagonal_algebra(d).basis]
        return verify_algebra(units, kind="explicit")
    raise ValueError(f"unknown algebra kind {kind!r}")


def gen_unitary(alg: CommAlgebra, seed: int, budget: int = 200) -> DenseMat:
    """An exactly unitary X in the commutant of ``alg``.

    Tries unit-diagonal times permutation candidates (entries drawn from
    Pythagorean units and {±1, ±i}); falls back to a unit scalar.
    """
    rng = random.Random(seed)
    d = alg.d
    perms = list(permutations(range(d)))
    for _ in range(budget):
        perm = rng.choice(perms)
        if rng.random() < 0.5:
            u = rng.choice(UNITS)
            diag = [u] * d
        else:
            diag = [rng.choice(UNITS) for _ in range(d)]
        rows = [[GaussianRational(0)] * d for _ in range(d)]
        for i, p in enumerate(perm):
            rows[i][p] = diag[i]
        x = DenseMat.from_rows(rows)
        if alg.in_commutant(x):
            return x
    return DenseMat.scalar(d, rng.choice(UNITS))


def gen_spec(alg: CommAlgebra, n: int, seed, constraints: str = "none", *,
             x: Optional[DenseMat] = None, bound: int = 8) -> ToeplitzSpec:
    """Random spec with entries in ``alg`` subject to a constraint mode.

    ``seed`` may be an int or an existing ``random.Random``.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    s = Sampler(rng, bound)
    d = alg.d
    z = DenseMat.zeros(d)
    k = n - 1

    def vec():
        return tuple(s.element(alg) for _ in range(k))

    if constraints == "none":
        return ToeplitzSpec(n, d, s.element(alg), vec(), vec())
    if constraints == "lower_only":
        return ToeplitzSpec(n, d, s.element(alg), vec(), (z,) * k)
    if constraints == "upper_only":
        return ToeplitzSpec(n, d, s.element(alg), (z,) * k, vec())
    if constraints == "diagonal_only":
        return ToeplitzSpec(n, d, s.element(alg), (z,) * k, (z,) * k)
    if constraints == "hermitian":
        low = vec()
        return ToeplitzSpec(n, d, s.hermitian_element(alg), low, low)
    if constraints == "rotated_hermitian":
        # u H + c I with |u| = 1 and H Hermitian
        u = s.unit()
        h = gen_spec(alg, n, rng, "hermitian", bound=bound)
        base = h.left_mul(DenseMat.scalar(d, u))
        return ToeplitzSpec(n, d, base.diag + DenseMat.scalar(d, s.scalar()), base.lower, base.upper)
    if constraints in ("sx_commutant", "sx_star_commutant"):
        if x is None:
            raise UnknownConstraint(f"{constraints} needs an X")
        if constraints == "sx_commutant":
            return sx_commutant_spec(s.element(alg), vec(), x)
        return sx_star_commutant_spec(s.element(alg), vec(), x)
    raise UnknownConstraint(f"unknown constraint {constraints!r}")


def perturb_spec(spec: ToeplitzSpec, s: Sampler, alg: CommAlgebra,
                 parts=("lower", "upper")) -> ToeplitzSpec:
    """Add a random nonzero algebra element to one lower or upper entry."""
    part = s.rng.choice(parts)
    if spec.n == 1:
        part = "diag"
    delta = s.nonzero_element(alg)
    if part == "diag":
        return ToeplitzSpec(spec.n, spec.d, spec.diag + delta, spec.lower, spec.upper)
    vals = list(getattr(spec, part))
    k = s.rng.randrange(len(vals))
    vals[k] = vals[k] + delta
    if part == "lower":
        return ToeplitzSpec(spec.n, spec.d, spec.diag, tuple(vals), spec.upper)
    return ToeplitzSpec(spec.n, spec.d, spec.diag, spec.lower, tuple(vals))


def perturb_block(m: BlockMatrix, s: Sampler, alg: CommAlgebra) -> BlockMatrix:
    """Add a random nonzero element to one block lying on a diagonal of length >= 2."""
    n = m.n
    cells = [(i, j) for i in range(n) for j in range(n) if abs(i - j) <= n - 2] or [(0, 0)]
    i0, j0 = s.rng.choice(cells)
    delta = s.nonzero_element(alg)
    return BlockMatrix.from_function(n, lambda i, j: m[i, j] + delta if (i, j) == (i0, j0) else m[i, j])


def _rescaled(spec: ToeplitzSpec, lower_factor: GaussianRational,
              upper_factor: GaussianRational, diag: DenseMat) -> ToeplitzSpec:
    return ToeplitzSpec(spec.n, spec.d, diag,
                        tuple(a.scale(lower_factor) for a in spec.lower),
                        tuple(w.scale(upper_factor) for w in spec.upper))


def _swap_partner(aspec: ToeplitzSpec, bspec: ToeplitzSpec, c0: DenseMat, d0: DenseMat):
    """(C, D) with C Theta^* - Gamma~ D~^* equal to A Lambda^* - Omega~ B~^*.

    C = T(-Omega~, -A~) + C_0 and D = T(Lambda~, B~) + D_0.
    """
    from .blocks import tilde
    n, d = aspec.n, aspec.d
    om_t = tilde(aspec.upper_column())
    a_t = tilde(aspec.lower_column())
    lam_t = tilde(bspec.upper_column())
    b_t = tilde(bspec.lower_column())
    cspec = ToeplitzSpec(n, d, c0, tuple(-m for m in om_t.entries[1:]),
                         tuple(-m for m in a_t.entries[1:]))
    dspec = ToeplitzSpec(n, d, d0, lam_t.entries[1:], b_t.entries[1:])
    return cspec, dspec


# ---- per-trial context --------------------------------------------------------

@dataclass
class _Trial:
    index: int
    rng: random.Random
    s: Sampler
    n: int
    d: int
    alg: CommAlgebra

    @property
    def want_true(self) -> bool:
        return self.index % 2 == 0

    def base(self, **extra) -> dict:
        out = {"n": self.n, "d": self.d, "algebra": algebra_to_descriptor(self.alg)}
        out.update(extra)
        return out

    def spec(self, constraints="none", x=None) -> ToeplitzSpec:
        return gen_spec(self.alg, self.n, self.rng, constraints, x=x, bound=self.s.bound)


def _make_trial(theorem_id: str, index: int, config: TrialConfig) -> _Trial:
    rng = random.Random(derive_seed(config.seed, theorem_id, index))
    n = rng.randint(*config.n_range)
    d = rng.randint(*config.d_range)
    kind = rng.choice(config.algebra_kinds)
    alg = gen_algebra(kind, d, rng.getrandbits(64))
    return _Trial(index, rng, Sampler(rng, config.coefficient_bound), n, d, alg)


def _specs_json(**specs) -> dict:
    return {k: v.to_json() for k, v in specs.items()}


# ---- product families ---------------------------------------------------------

def _toeplitz_product_pair(t: _Trial):
    """(family, A, B) with AB block Toeplitz by construction."""
    fam = t.rng.choice(("lower_pair", "upper_pair", "sx_pair", "diagonal_factor"))
    if fam == "lower_pair":
        return fam, t.spec("lower_only"), t.spec("lower_only"), None
    if fam == "upper_pair":
        return fam, t.spec("upper_only"), t.spec("upper_only"), None
    if fam == "sx_pair":
        x = t.s.commutant_element(t.alg)
        return fam, t.spec("sx_commutant", x), t.spec("sx_commutant", x), x
    a, b = t.spec("diagonal_only"), t.spec("none")
    if t.rng.random() < 0.5:
        a, b = b, a
    return fam, a, b, None


def _break_pair(t: _Trial, fam: str, a: ToeplitzSpec, b: ToeplitzSpec):
    """Perturb the part of a Toeplitz-product pair that carries its structure."""
    parts = {"lower_pair": ("upper",), "upper_pair": ("lower",)}.get(fam, ("lower", "upper"))
    if fam == "diagonal_factor":
        first = all(m.is_zero for m in (*a.lower, *a.upper))
    else:
        first = t.rng.random() < 0.5
    if first:
        return perturb_spec(a, t.s, t.alg, parts), b
    return a, perturb_spec(b, t.s, t.alg, parts)


def _product_pair(t: _Trial):
    fam, a, b, x = _toeplitz_product_pair(t)
    if not t.want_true:
        a, b = _break_pair(t, fam, a, b)
        fam += "+perturbed"
    extra = {"X": x.to_json()} if x is not None else {}
    return t.base(family=fam, specs=_specs_json(A=a, B=b), **extra), a, b


def _criterion_quadruple(t: _Trial):
    """(family, A, B, C, D) satisfying the AB - CD Toeplitz criterion."""
    fam = t.rng.choice(("rescaled", "swapped", "both_zero"))
    if fam == "rescaled":
        a, b = t.spec(), t.spec()
        c1, c2 = t.s.nonzero_scalar(), t.s.nonzero_scalar()
        # C = (c A, conj(c2) Omega), D = (B / c2, Lambda / conj(c1))
        cspec = _rescaled(a, c1, c2.conj(), t.s.element(t.alg))
        dspec = _rescaled(b, 1 / c2, 1 / c1.conj(), t.s.element(t.alg))
        return fam, a, b, cspec, dspec
    if fam == "swapped":
        a, b = t.spec(), t.spec()
        cspec, dspec = _swap_partner(a, b, t.s.element(t.alg), t.s.element(t.alg))
        return fam, a, b, cspec, dspec
    fam_ab, a, b, _ = _toeplitz_product_pair(t)
    fam_cd, c, dd, _ = _toeplitz_product_pair(t)
    if not t.want_true:
        if t.rng.random() < 0.5:
            a, b = _break_pair(t, fam_ab, a, b)
        else:
            c, dd = _break_pair(t, fam_cd, c, dd)
        fam += "+perturbed"
    return fam, a, b, c, dd


# ---- theorem runners ----------------------------------------------------------
# Each returns (instance, criterion_result, oracle_result).

def _run_L21(t: _Trial):
    m = t.s.block_matrix(t.alg, t.n)
    return (t.base(matrix=m.to_json()),
            displacement_reconstruct(displacement(m)).to_json(), m.to_json())


def _toeplitz_or_not(t: _Trial):
    spec = t.spec()
    m = spec.build()
    if t.want_true:
        return "toeplitz", m
    return "perturbed", perturb_block(m, t.s, t.alg)


def _run_L22(t: _Trial):
    fam, m = _toeplitz_or_not(t)
    return (t.base(family=fam, matrix=m.to_json()),
            displacement_form(m) is not None, toeplitz_recognize(m) is not None)


def _run_L31(t: _Trial):
    c, d = t.spec(), t.spec()
    direct = displacement(c.build() @ d.build())
    return (t.base(specs=_specs_json(C=c, D=d)),
            product_displacement_rhs(c, d).to_json(), direct.to_json())


def _run_T32i(t: _Trial):
    fam, a, b, c, d = _criterion_quadruple(t)
    if not t.want_true and not fam.endswith("+perturbed"):
        fam += "+perturbed"
        which = t.rng.randrange(4)
        specs = [a, b, c, d]
        specs[which] = perturb_spec(specs[which], t.s, t.alg)
        a, b, c, d = specs
    direct = a.build() @ b.build() - c.build() @ d.build()
    return (t.base(family=fam, specs=_specs_json(A=a, B=b, C=c, D=d)),
            product_toeplitz_test(a, b, c, d), toeplitz_recognize(direct) is not None)


def _run_T32ii(t: _Trial):
    fam = t.rng.choice(("identical", "scaled", "swapped_commuting"))
    if fam == "identical":
        a, b = t.spec(), t.spec()
        c, d = a, b
    elif fam == "scaled":
        a, b = t.spec(), t.spec()
        u = t.s.nonzero_scalar()
        c = a.left_mul(DenseMat.scalar(t.d, u))
        d = b.left_mul(DenseMat.scalar(t.d, 1 / u))
    else:
        _, a, b, _ = _toeplitz_product_pair(t)
        c, d = b, a
    if not t.want_true:
        # a constant block-diagonal shift keeps AB - CD Toeplitz
        e = t.s.nonzero_element(t.alg)
        if t.rng.random() < 0.5:
            fam += "+diag_shift_C"
            c = ToeplitzSpec(c.n, c.d, c.diag + e, c.lower, c.upper)
        else:
            fam += "+diag_shift_D"
            d = ToeplitzSpec(d.n, d.d, d.diag + e, d.lower, d.upper)
    ab, cd = a.build() @ b.build(), c.build() @ d.build()
    return (t.base(family=fam, specs=_specs_json(A=a, B=b, C=c, D=d)),
            product_zero_test(a, b, c, d), ab == cd)


def _run_C33(t: _Trial):
    inst, a, b = _product_pair(t)
    return inst, single_product_toeplitz_test(a, b), toeplitz_recognize(a.build() @ b.build()) is not None


def _run_C34(t: _Trial):
    inst, a, b = _product_pair(t)
    am, bm = a.build(), b.build()
    ab = toeplitz_recognize(am @ bm) is not None
    ba = toeplitz_recognize(bm @ am) is not None
    return (inst, [single_product_toeplitz_test(a, b), single_product_toeplitz_test(b, a), ba],
            [ab, ab, ab])


def _run_T35(t: _Trial):
    fam, a, b, x = _toeplitz_product_pair(t)
    extra = {"X": x.to_json()} if x is not None else {}
    inst = t.base(family=fam, specs=_specs_json(A=a, B=b), **extra)
    return inst, product_commute_check(a, b), True


def _run_P41(t: _Trial):
    fam, m = _toeplitz_or_not(t)
    x = t.s.commutant_element(t.alg)
    return (t.base(family=fam, matrix=m.to_json(), X=x.to_json()),
            sx_displacement_form(m, x) is not None, sx_residual_has_form(m, x))


def _run_R42(t: _Trial):
    x = t.s.matrix(t.d)
    n, d = t.n, t.d
    sx = shift_x(n, d, x)
    p0, pl = basis_row(0, n, d), basis_row(n - 1, n, d)
    lhs = BlockMatrix.identity(n, d) - sx @ sx.adjoint()
    rhs = p0.adjoint() @ p0 - (sx @ pl.adjoint() @ p0).right_mul(x.adjoint())
    return t.base(X=x.to_json()), lhs.to_json(), rhs.to_json()


def _run_T44(t: _Trial):
    if t.want_true:
        fam = t.rng.choice(("lower_only", "upper_only", "diagonal_only"))
        m = t.spec(fam).build()
    else:
        fam = t.rng.choice(("none", "perturbed"))
        m = t.spec().build()
        if fam == "perturbed":
            m = perturb_block(m, t.s, t.alg)
    cls = commutant_S_classify(m)
    return t.base(family=fam, matrix=m.to_json()), cls.kind, cls.direct_kind


def _run_T45(t: _Trial):
    x = t.s.commutant_element(t.alg) if t.rng.random() < 0.7 else gen_unitary(t.alg, t.rng.getrandbits(64))
    if t.want_true:
        fam = t.rng.choice(("sx_commutant", "sx_star_commutant"))
        m = t.spec(fam, x).build()
    else:
        fam = t.rng.choice(("none", "sx_commutant+perturbed", "non_toeplitz"))
        if fam == "none":
            m = t.spec().build()
        elif fam == "non_toeplitz":
            m = perturb_block(t.spec("sx_commutant", x).build(), t.s, t.alg)
        else:
            m = perturb_spec(t.spec("sx_commutant", x), t.s, t.alg).build()
    cls = commutant_SX_classify(m, x)
    return t.base(family=fam, matrix=m.to_json(), X=x.to_json()), cls.kind, cls.direct_kind


def _run_C46(t: _Trial):
    x = gen_unitary(t.alg, t.rng.getrandbits(64))
    a, b = t.spec("sx_commutant", x), t.spec("sx_commutant", x)
    inst = t.base(X=x.to_json(), specs=_specs_json(A=a, B=b))
    return inst, sx_closure_product(a, b, x), toeplitz_recognize(a.build() @ b.build()) is not None


def _normal_spec(t: _Trial):
    fam = t.rng.choice(("hermitian", "rotated_hermitian", "sx_commutant_unitary"))
    if fam == "sx_commutant_unitary":
        x = gen_unitary(t.alg, t.rng.getrandbits(64))
        return fam, t.spec("sx_commutant", x)
    return fam, t.spec(fam)


def _run_L51(t: _Trial):
    roll = t.rng.random()
    if t.want_true:
        if roll < 0.5:
            fam, spec = _normal_spec(t)
            m = spec.build()
        else:
            fam = "hermitian_blocks"
            blocks = [[None] * t.n for _ in range(t.n)]
            for i in range(t.n):
                blocks[i][i] = t.s.hermitian_element(t.alg)
                for j in range(i + 1, t.n):
                    e = t.s.element(t.alg)
                    blocks[i][j], blocks[j][i] = e, e.adjoint()
            m = BlockMatrix(blocks)
    else:
        fam, spec = _normal_spec(t)
        fam += "+perturbed"
        m = perturb_block(spec.build(), t.s, t.alg)
    return (t.base(family=fam, matrix=m.to_json()),
            lemma51_all_zero(m), normal_defect(m).is_zero)


def _run_T52(t: _Trial):
    fam, spec = _normal_spec(t)
    if not t.want_true:
        fam += "+perturbed"
        spec = perturb_spec(spec, t.s, t.alg)
    m = spec.build()
    report = normality_criterion(spec, t.alg if fam.startswith(("hermitian", "rotated")) else None)
    defect_zero = normal_defect(m).is_zero
    return (t.base(family=fam, specs=_specs_json(A=spec)),
            [report.is_normal, lemma51_all_zero(m)], [defect_zero, defect_zero])


def _run_C53(t: _Trial):
    x = gen_unitary(t.alg, t.rng.getrandbits(64))
    spec = t.spec("sx_commutant", x)
    inst = t.base(X=x.to_json(), specs=_specs_json(A=spec))
    return inst, circulant_normality(spec, x, t.alg), normal_defect(spec.build()).is_zero


THEOREMS: dict[str, Callable[[_Trial], tuple]] = {
    "L2.1": _run_L21,
    "L2.2": _run_L22,
    "L3.1": _run_L31,
    "T3.2i": _run_T32i,
    "T3.2ii": _run_T32ii,
    "C3.3": _run_C33,
    "C3.4": _run_C34,
    "T3.5": _run_T35,
    "P4.1": _run_P41,
    "R4.2": _run_R42,
    "T4.4": _run_T44,
    "T4.5": _run_T45,
    "C4.6": _run_C46,
    "L5.1": _run_L51,
    "T5.2": _run_T52,
    "C5.3": _run_C53,
}

# Suites whose criterion is an iff and must see both truth values.
IFF_THEOREMS = ("L2.2", "T3.2i", "T3.2ii", "C3.3", "C3.4", "P4.1", "L5.1", "T5.2")


def run_trial(theorem_id: str, index: int, config: TrialConfig) -> TrialOutcome:
    t = _make_trial(theorem_id, index, config)
    try:
        instance, crit, oracle = THEOREMS[theorem_id](t)
    except Exception as exc:  # any failure is a reportable counterexample
        return TrialOutcome(theorem_id, index,
                            t.base(error=f"{type(exc).__name__}: {exc}"), "error", "no error")
    return TrialOutcome(theorem_id, index, instance, crit, oracle)


def _run_chunk(args):
    theorem_id, indices, config = args
    return [run_trial(theorem_id, i, config) for i in indices]


def run_theorem_suite(theorem_id: str, config: TrialConfig, jobs: int = 1) -> list[TrialOutcome]:
    """Run ``config.trials`` trials of one statement; results come back in trial order."""
    if theorem_id not in THEOREMS:
        raise UnknownTheorem(f"unknown theorem id {theorem_id!r}; choose from {', '.join(THEOREMS)}")
    indices = list(range(config.trials))
    if jobs <= 1:
        return [run_trial(theorem_id, i, config) for i in indices]
    chunks = [(theorem_id, indices[k::jobs], config) for k in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = [o for chunk in pool.map(_run_chunk, chunks) for o in chunk]
    return sorted(results, key=lambda o: o.trial)


def coverage(outcomes: list[TrialOutcome]) -> tuple[int, int]:
    """(number of trials with criterion true, number with criterion false)."""
    truths = [o.criterion_truth for o in outcomes]
    return sum(1 for x in truths if x is True), sum(1 for x in truths if x is False)

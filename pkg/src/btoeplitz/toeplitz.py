"""Block Toeplitz matrices T(A, Omega) + A_0 and the decision procedures on them.

A :class:`ToeplitzSpec` stores the constant diagonal block ``diag``, the
lower vector ``lower = (A_1, ..., A_{n-1})`` and the upper vector
``upper = (Omega_1, ..., Omega_{n-1})``.  The built matrix has ``A_{i-j}``
below the diagonal and ``Omega_{j-i}^*`` above it, so the upper triangle
holds adjoints of the stored entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .blocks import (
    BlockColumn,
    BlockMatrix,
    basis_row,
    diamond,
    displacement,
    shift,
    shift_x,
    tilde,
)
from .errors import DimensionMismatch, IdentityFailure, PreconditionViolation
from .matrix import CommAlgebra, DenseMat

__all__ = [
    "ToeplitzSpec",
    "CommutantClass",
    "toeplitz_build",
    "toeplitz_recognize",
    "displacement_form",
    "sx_displacement_form",
    "sx_residual",
    "sx_residual_has_form",
    "product_displacement_rhs",
    "product_criterion_side",
    "product_toeplitz_test",
    "product_zero_test",
    "single_product_toeplitz_test",
    "product_commute_check",
    "commutant_S_classify",
    "commutant_SX_classify",
    "sx_commutant_spec",
    "sx_star_commutant_spec",
    "sx_closure_product",
]


@dataclass(frozen=True)
class ToeplitzSpec:
    n: int
    d: int
    diag: DenseMat
    lower: tuple[DenseMat, ...]
    upper: tuple[DenseMat, ...]

    def __post_init__(self):
        object.__setattr__(self, "lower", tuple(self.lower))
        object.__setattr__(self, "upper", tuple(self.upper))
        if self.n < 1 or self.d < 1:
            raise ValueError("n and d must be positive")
        if len(self.lower) != self.n - 1 or len(self.upper) != self.n - 1:
            raise DimensionMismatch(f"expected {self.n - 1} lower and upper entries")
        for m in (self.diag, *self.lower, *self.upper):
            if m.d != self.d:
                raise DimensionMismatch(f"entry of size {m.d}, expected {self.d}")

    @classmethod
    def zeros(cls, n: int, d: int) -> "ToeplitzSpec":
        z = DenseMat.zeros(d)
        return cls(n, d, z, (z,) * (n - 1), (z,) * (n - 1))

    @classmethod
    def identity(cls, n: int, d: int) -> "ToeplitzSpec":
        z = DenseMat.zeros(d)
        return cls(n, d, DenseMat.identity(d), (z,) * (n - 1), (z,) * (n - 1))

    @classmethod
    def from_vectors(cls, diag: DenseMat, lower: BlockColumn, upper: BlockColumn) -> "ToeplitzSpec":
        """From zero-headed columns A, Omega (their heads are ignored)."""
        return cls(lower.n, lower.d, diag, lower.entries[1:], upper.entries[1:])

    def build(self) -> BlockMatrix:
        return toeplitz_build(self)

    def lower_column(self) -> BlockColumn:
        """A = (0, A_1, ..., A_{n-1})^T."""
        return BlockColumn((DenseMat.zeros(self.d),) + self.lower)

    def upper_column(self) -> BlockColumn:
        """Omega = (0, Omega_1, ..., Omega_{n-1})^T."""
        return BlockColumn((DenseMat.zeros(self.d),) + self.upper)

    def diag_matrix(self) -> BlockMatrix:
        return BlockMatrix.block_diagonal(self.n, self.diag)

    def adjoint(self) -> "ToeplitzSpec":
        # T(A, Omega)^* = T(Omega, A)
        return ToeplitzSpec(self.n, self.d, self.diag.adjoint(), self.upper, self.lower)

    def left_mul(self, x: DenseMat) -> "ToeplitzSpec":
        """Spec of the block matrix X * M (every block left-multiplied by X)."""
        xs = x.adjoint()
        return ToeplitzSpec(self.n, self.d, x @ self.diag,
                            tuple(x @ a for a in self.lower),
                            tuple(w @ xs for w in self.upper))

    def in_algebra(self, alg: CommAlgebra) -> bool:
        return all(m in alg for m in (self.diag, *self.lower, *self.upper))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "diag": self.diag.to_json(),
            "lower": [m.to_json() for m in self.lower],
            "upper": [m.to_json() for m in self.upper],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ToeplitzSpec":
        diag = DenseMat.from_rows(obj["diag"])
        lower = [DenseMat.from_rows(m) for m in obj.get("lower", [])]
        upper = [DenseMat.from_rows(m) for m in obj.get("upper", [])]
        n = int(obj.get("n", len(lower) + 1))
        d = int(obj.get("d", diag.d))
        return cls(n, d, diag, tuple(lower), tuple(upper))


def toeplitz_build(spec: ToeplitzSpec) -> BlockMatrix:
    up = [None] + [w.adjoint() for w in spec.upper]
    low = spec.lower

    def block(i, j):
        if i == j:
            return spec.diag
        if i > j:
            return low[i - j - 1]
        return up[j - i]

    return BlockMatrix.from_function(spec.n, block)


def toeplitz_recognize(m: BlockMatrix, alg: Optional[CommAlgebra] = None) -> Optional[ToeplitzSpec]:
    """Return the unique spec with ``build(spec) == m``, or None.

    With ``alg``, every block of ``m`` must also lie in the algebra.
    """
    n, b = m.n, m.blocks
    for i in range(1, n):
        for j in range(1, n):
            if b[i][j] != b[i - 1][j - 1]:
                return None
    if alg is not None and not all(x in alg for r in b for x in r):
        return None
    return ToeplitzSpec(n, m.d, b[0][0],
                        tuple(b[k][0] for k in range(1, n)),
                        tuple(b[0][k].adjoint() for k in range(1, n)))


def _head(n: int, x: DenseMat) -> BlockColumn:
    """Column with x at index 0 and zeros elsewhere."""
    return BlockColumn([x] + [DenseMat.zeros(x.d)] * (n - 1))


def displacement_form(m: BlockMatrix):
    """(A, Omega) with Delta(M) = A P_0 + P_0^* Omega^*, or None if M is not Toeplitz.

    Such vectors exist exactly when Delta(M) vanishes off its first row and
    column. The whole (0, 0) block goes into A's head; Omega's head is 0.
    """
    dm = displacement(m)
    n, b = m.n, dm.blocks
    if not _border_supported(dm):
        return None
    a = dm.column(0)
    omega = BlockColumn([DenseMat.zeros(m.d)] + [b[0][k].adjoint() for k in range(1, n)])
    p0 = basis_row(0, n, m.d)
    if dm != a @ p0 + p0.adjoint() @ omega.adjoint():
        raise IdentityFailure("displacement form does not reproduce Delta(M)")
    return a, omega


def _border_supported(m: BlockMatrix) -> bool:
    """True when every block outside row 0 and column 0 is zero."""
    return all(m.blocks[i][j].is_zero for i in range(1, m.n) for j in range(1, m.n))


def sx_residual(m: BlockMatrix, x: DenseMat) -> BlockMatrix:
    """M - S_X M S_X^*."""
    sx = shift_x(m.n, m.d, x)
    return m - sx @ m @ sx.adjoint()


def sx_residual_has_form(m: BlockMatrix, x: DenseMat) -> bool:
    """Whether M - S_X M S_X^* = A P_0 + P_0^* B^* for some A, B."""
    return _border_supported(sx_residual(m, x))


def sx_displacement_form(m: BlockMatrix, x: DenseMat):
    """(A, B) with M - S_X M S_X^* = A P_0 + P_0^* B^*, or None if M is not Toeplitz.

    The vectors come from the plain displacement form (A', Omega') by

        A = A' - S_X M (X^* at slot n-1)
        B = Omega' - S_X M^* (X^* at slot n-1) + (X (M^*)_{n-1,n-1} X^* at slot 0)
    """
    form = displacement_form(m)
    if form is None:
        return None
    a1, omega1 = form
    n, d = m.n, m.d
    xs = x.adjoint()
    sx = shift_x(n, d, x)
    last = BlockColumn([DenseMat.zeros(d)] * (n - 1) + [xs])
    ms = m.adjoint()
    a = a1 - sx @ m @ last
    b = omega1 - sx @ ms @ last + _head(n, x @ ms[n - 1, n - 1] @ xs)
    p0 = basis_row(0, n, d)
    if sx_residual(m, x) != a @ p0 + p0.adjoint() @ b.adjoint():
        raise IdentityFailure("S_X displacement form does not reproduce M - S_X M S_X^*")
    return a, b


def _check_pair(*specs: ToeplitzSpec):
    n, d = specs[0].n, specs[0].d
    for s in specs[1:]:
        if (s.n, s.d) != (n, d):
            raise DimensionMismatch("specs differ in n or d")


def product_displacement_rhs(cspec: ToeplitzSpec, dspec: ToeplitzSpec) -> BlockMatrix:
    """Closed form of Delta(C D) for C = T(C, Gamma) + C_0, D = T(D, Theta) + D_0:

        C Theta^* - Gamma~ D~^* + [C D + D_0 C + C_0 D_0 P_0^*] P_0
                                + P_0^* [Gamma^* S D S^* + Theta^* C_0]
    """
    _check_pair(cspec, dspec)
    n, d = cspec.n, cspec.d
    c, gamma = cspec.lower_column(), cspec.upper_column()
    dv, theta = dspec.lower_column(), dspec.upper_column()
    cm, dm = cspec.build(), dspec.build()
    c0, d0 = cspec.diag, dspec.diag
    s = shift(n, d)
    p0 = basis_row(0, n, d)

    col = cm @ dv + c.left_mul(d0) + _head(n, c0 @ d0)
    row = gamma.adjoint() @ (s @ dm @ s.adjoint()) + theta.adjoint().right_mul(c0)
    return (c @ theta.adjoint() - tilde(gamma) @ tilde(dv).adjoint()
            + col @ p0 + p0.adjoint() @ row)


def product_criterion_side(aspec: ToeplitzSpec, bspec: ToeplitzSpec) -> BlockMatrix:
    """A Lambda^* - Omega~ B~^* for A = T(A, Omega) + A_0, B = T(B, Lambda) + B_0."""
    _check_pair(aspec, bspec)
    a, omega = aspec.lower_column(), aspec.upper_column()
    b, lam = bspec.lower_column(), bspec.upper_column()
    return a @ lam.adjoint() - tilde(omega) @ tilde(b).adjoint()


def product_toeplitz_test(aspec, bspec, cspec, dspec) -> bool:
    """Decide whether AB - CD is block Toeplitz from the generating vectors alone."""
    _check_pair(aspec, bspec, cspec, dspec)
    return product_criterion_side(aspec, bspec) == product_criterion_side(cspec, dspec)


def _zeroth_side(aspec: ToeplitzSpec, bspec: ToeplitzSpec) -> BlockColumn:
    # A B + B_0 A + A_0 B_0 P_0^*
    return (aspec.build() @ bspec.lower_column()
            + aspec.lower_column().left_mul(bspec.diag)
            + _head(aspec.n, aspec.diag @ bspec.diag))


def _adjoint_side(aspec: ToeplitzSpec, bspec: ToeplitzSpec) -> BlockColumn:
    # B^* Omega + A_0^* Lambda + A_0^* B_0^* P_0^*
    a0s = aspec.diag.adjoint()
    return (bspec.build().adjoint() @ aspec.upper_column()
            + bspec.upper_column().left_mul(a0s)
            + _head(aspec.n, a0s @ bspec.diag.adjoint()))


def product_zero_test(aspec, bspec, cspec, dspec) -> bool:
    """Given AB - CD Toeplitz, decide AB = CD via the zeroth and adjoint relations."""
    if not product_toeplitz_test(aspec, bspec, cspec, dspec):
        raise PreconditionViolation("AB - CD is not block Toeplitz")
    return (_zeroth_side(aspec, bspec) == _zeroth_side(cspec, dspec)
            and _adjoint_side(aspec, bspec) == _adjoint_side(cspec, dspec))


def single_product_toeplitz_test(aspec: ToeplitzSpec, bspec: ToeplitzSpec) -> bool:
    """AB is block Toeplitz iff A Lambda^* = Omega~ B~^*."""
    _check_pair(aspec, bspec)
    a, lam = aspec.lower_column(), bspec.upper_column()
    omega, b = aspec.upper_column(), bspec.lower_column()
    return a @ lam.adjoint() == tilde(omega) @ tilde(b).adjoint()


def product_commute_check(aspec: ToeplitzSpec, bspec: ToeplitzSpec) -> bool:
    if not single_product_toeplitz_test(aspec, bspec):
        raise PreconditionViolation("AB is not block Toeplitz")
    am, bm = aspec.build(), bspec.build()
    return am @ bm == bm @ am


# ---- commutants of S, S^*, S_X, S_X^* ------------------------------------------

@dataclass(frozen=True)
class CommutantClass:
    """Structural label, label from direct commutation, and the recognized spec."""

    kind: str
    direct_kind: str
    spec: Optional[ToeplitzSpec]

    @property
    def agrees(self) -> bool:
        return self.kind == self.direct_kind


def _label(first: bool, second: bool, names: Sequence[str]) -> str:
    if first and second:
        return "both"
    if first:
        return names[0]
    if second:
        return names[1]
    return "neither"


def commutant_S_classify(m: BlockMatrix) -> CommutantClass:
    names = ("lower_toeplitz", "upper_toeplitz")
    spec = toeplitz_recognize(m)
    lower = spec is not None and all(w.is_zero for w in spec.upper)
    upper = spec is not None and all(a.is_zero for a in spec.lower)
    s = shift(m.n, m.d)
    ss = s.adjoint()
    direct = _label(m @ s == s @ m, m @ ss == ss @ m, names)
    return CommutantClass(_label(lower, upper, names), direct, spec)


def sx_commutant_spec(diag: DenseMat, lower: Sequence[DenseMat], x: DenseMat) -> ToeplitzSpec:
    """T(A, X^* ⋄ A~) + A_0, the general member commuting with S_X."""
    a = BlockColumn([DenseMat.zeros(diag.d)] + list(lower))
    omega = diamond(x.adjoint(), tilde(a))
    return ToeplitzSpec(a.n, a.d, diag, tuple(lower), omega.entries[1:])


def sx_star_commutant_spec(diag: DenseMat, upper: Sequence[DenseMat], x: DenseMat) -> ToeplitzSpec:
    """T(X^* ⋄ A~, A) + A_0, the general member commuting with S_X^*."""
    a = BlockColumn([DenseMat.zeros(diag.d)] + list(upper))
    low = diamond(x.adjoint(), tilde(a))
    return ToeplitzSpec(a.n, a.d, diag, low.entries[1:], tuple(upper))


def commutant_SX_classify(m: BlockMatrix, x: DenseMat) -> CommutantClass:
    if x.d != m.d:
        raise DimensionMismatch(f"X is {x.d}x{x.d}, blocks are {m.d}x{m.d}")
    names = ("sx_commutant", "sx_star_commutant")
    spec = toeplitz_recognize(m)
    xs = x.adjoint()
    if spec is None:
        sx_form = sxs_form = False
    else:
        a, omega = spec.lower_column(), spec.upper_column()
        sx_form = omega == diamond(xs, tilde(a))
        sxs_form = a == diamond(xs, tilde(omega))
    sx = shift_x(m.n, m.d, x)
    sxa = sx.adjoint()
    direct = _label(m @ sx == sx @ m, m @ sxa == sxa @ m, names)
    return CommutantClass(_label(sx_form, sxs_form, names), direct, spec)


def sx_closure_product(aspec: ToeplitzSpec, bspec: ToeplitzSpec, x: DenseMat) -> bool:
    """For A, B both commuting with S_X, confirm that AB is block Toeplitz.

    Checks A Lambda^* = X ⋄ (A B~^*) = Omega~ B~^* and returns the product
    test on the pair.
    """
    _check_pair(aspec, bspec)
    for name, spec in (("A", aspec), ("B", bspec)):
        cls = commutant_SX_classify(spec.build(), x)
        if cls.kind not in ("sx_commutant", "both"):
            raise PreconditionViolation(f"{name} does not commute with S_X")
    a, omega = aspec.lower_column(), aspec.upper_column()
    b, lam = bspec.lower_column(), bspec.upper_column()
    left = a @ lam.adjoint()
    middle = (a @ tilde(b).adjoint()).left_mul(x)
    right = tilde(omega) @ tilde(b).adjoint()
    if not (left == middle == right):
        raise IdentityFailure("A Lambda^* = X ⋄ A B~^* = Omega~ B~^* fails")
    return single_product_toeplitz_test(aspec, bspec)

"""Normality of block matrices and of block Toeplitz matrices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .blocks import BlockMatrix
from .errors import IdentityFailure, PreconditionViolation
from .matrix import CommAlgebra, DenseMat
from .toeplitz import ToeplitzSpec, commutant_SX_classify

__all__ = [
    "NormalityReport",
    "normal_defect",
    "lemma51_sums",
    "criterion_residual",
    "normality_criterion",
    "circulant_normality",
]


@dataclass(frozen=True)
class NormalityReport:
    is_normal: bool
    criterion_witness: Optional[tuple[int, int]]
    defect_matrix: BlockMatrix

    @property
    def consistent(self) -> bool:
        """Criterion verdict matches the defect matrix."""
        return self.is_normal == self.defect_matrix.is_zero

    def to_json(self) -> dict:
        return {
            "is_normal": self.is_normal,
            "criterion_witness": list(self.criterion_witness) if self.criterion_witness else None,
            "defect_is_zero": self.defect_matrix.is_zero,
            "defect_matrix": self.defect_matrix.to_json(),
        }


def normal_defect(m: BlockMatrix) -> BlockMatrix:
    """M^* M - M M^*."""
    ms = m.adjoint()
    return ms @ m - m @ ms


def lemma51_sums(m: BlockMatrix):
    """Entrywise defect sums.

    Returns ``(diag, off)`` where ``diag[p]`` is
    sum_{k != p} (M_{kp}^* M_{kp} - M_{pk} M_{pk}^*) and ``off[(i, j)]`` for
    i < j is sum_k (M_{ki}^* M_{kj} - M_{ik} M_{jk}^*).
    """
    n, b = m.n, m.blocks
    z = DenseMat.zeros(m.d)
    diag = []
    for p in range(n):
        s = z
        for k in range(n):
            if k != p:
                s = s + b[k][p].adjoint() @ b[k][p] - b[p][k] @ b[p][k].adjoint()
        diag.append(s)
    off = {}
    for i in range(n):
        for j in range(i + 1, n):
            s = z
            for k in range(n):
                s = s + b[k][i].adjoint() @ b[k][j] - b[i][k] @ b[j][k].adjoint()
            off[(i, j)] = s
    return diag, off


def lemma51_all_zero(m: BlockMatrix) -> bool:
    diag, off = lemma51_sums(m)
    return all(x.is_zero for x in diag) and all(x.is_zero for x in off.values())


def criterion_residual(spec: ToeplitzSpec, s: int, k: int) -> DenseMat:
    """A_s A_k^* + A_{n-s}^* A_{n-k} - Omega_s Omega_k^* - Omega_{n-s}^* Omega_{n-k}.

    Indices are 1-based, 1 <= s, k <= n-1.
    """
    n = spec.n
    if not (1 <= s < n and 1 <= k < n):
        raise IndexError(f"(s, k) = ({s}, {k}) out of range for n = {n}")
    a = (None,) + spec.lower
    w = (None,) + spec.upper
    return (a[s] @ a[k].adjoint() + a[n - s].adjoint() @ a[n - k]
            - w[s] @ w[k].adjoint() - w[n - s].adjoint() @ w[n - k])


def normality_criterion(spec: ToeplitzSpec, alg: Optional[CommAlgebra] = None) -> NormalityReport:
    """Decide normality of T(A, Omega) + A_0 from (n-1)^2 block equations."""
    if alg is not None and not spec.in_algebra(alg):
        raise PreconditionViolation("spec entries are not in the algebra")
    witness = None
    for s in range(1, spec.n):
        for k in range(1, spec.n):
            if not criterion_residual(spec, s, k).is_zero:
                witness = (s, k)
                break
        if witness:
            break
    return NormalityReport(witness is None, witness, normal_defect(spec.build()))


def circulant_normality(spec: ToeplitzSpec, x: DenseMat, alg: Optional[CommAlgebra] = None) -> bool:
    """Normality of a spec commuting with S_X for a unitary X."""
    if not x.is_unitary():
        raise PreconditionViolation("X is not unitary")
    if alg is not None and not alg.in_commutant(x):
        raise PreconditionViolation("X is not in the commutant of the algebra")
    cls = commutant_SX_classify(spec.build(), x)
    if cls.kind not in ("sx_commutant", "both"):
        raise PreconditionViolation("spec does not commute with S_X")
    n = spec.n
    a = (None,) + spec.lower
    w = (None,) + spec.upper
    for s in range(1, n):
        for k in range(1, n):
            lhs = w[s] @ w[k].adjoint() + w[n - s].adjoint() @ w[n - k]
            rhs = a[s] @ a[k].adjoint() + a[n - s].adjoint() @ a[n - k]
            if lhs != rhs:
                raise IdentityFailure(f"Omega-side and A-side sums differ at (s, k) = ({s}, {k})")
    return normality_criterion(spec).is_normal

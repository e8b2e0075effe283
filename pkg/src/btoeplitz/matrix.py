"""Dense d x d matrices over Q(i) and commutative matrix algebras.

A :class:`DenseMat` keeps real and imaginary parts as two flat tuples of
``mpq`` in row-major order; the inner product loops work on those directly
rather than through :class:`GaussianRational` objects.
"""

from __future__ import annotations

from fractions import Fraction

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import DimensionMismatch, NotClosedError, NotCommutativeError
from .scalar import ONE, ZERO, GaussianRational, parse_scalar

__all__ = [
    "DenseMat",
    "CommAlgebra",
    "mat_ops",
    "adjoint",
    "verify_algebra",
    "in_span",
    "in_commutant",
    "cyclic_shift",
    "diagonal_algebra",
    "circulant_algebra",
    "poly_algebra",
    "algebra_from_descriptor",
    "algebra_to_descriptor",
]

_Q0 = mpq(0)
_Q1 = mpq(1)


class DenseMat:
    """Immutable square matrix with Gaussian rational entries."""

    __slots__ = ("d", "_re", "_im", "_zero")

    def __init__(self, d: int, re: Sequence, im: Sequence | None = None):
        if d < 1:
            raise ValueError("matrix dimension must be positive")
        re = tuple(mpq(x) for x in re)
        im = tuple(mpq(x) for x in im) if im is not None else (_Q0,) * (d * d)
        if len(re) != d * d or len(im) != d * d:
            raise DimensionMismatch(f"expected {d * d} entries")
        self._init(d, re, im)

    def _init(self, d, re, im):
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "_re", re)
        object.__setattr__(self, "_im", im)
        object.__setattr__(self, "_zero", None)

    @classmethod
    def _raw(cls, d: int, re: tuple, im: tuple) -> "DenseMat":
        obj = object.__new__(cls)
        obj._init(d, re, im)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("DenseMat is immutable")

    def __reduce__(self):
        return (DenseMat._raw, (self.d, self._re, self._im))

    # ---- constructors -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows) -> "DenseMat":
        rows = [list(r) for r in rows]
        d = len(rows)
        if d == 0 or any(len(r) != d for r in rows):
            raise DimensionMismatch("matrix rows must form a nonempty square array")
        entries = [GaussianRational(x) if isinstance(x, Fraction) else parse_scalar(x)
                   for r in rows for x in r]
        return cls._raw(d, tuple(e.re for e in entries), tuple(e.im for e in entries))

    @classmethod
    def from_entries(cls, d: int, entries: Iterable[GaussianRational]) -> "DenseMat":
        entries = [GaussianRational.coerce(e) for e in entries]
        if len(entries) != d * d:
            raise DimensionMismatch(f"expected {d * d} entries")
        return cls._raw(d, tuple(e.re for e in entries), tuple(e.im for e in entries))

    @classmethod
    def zeros(cls, d: int) -> "DenseMat":
        z = (_Q0,) * (d * d)
        return cls._raw(d, z, z)

    @classmethod
    def identity(cls, d: int) -> "DenseMat":
        return cls.scalar(d, ONE)

    @classmethod
    def scalar(cls, d: int, c) -> "DenseMat":
        c = GaussianRational.coerce(c)
        re = [_Q0] * (d * d)
        im = [_Q0] * (d * d)
        for i in range(d):
            re[i * d + i] = c.re
            im[i * d + i] = c.im
        return cls._raw(d, tuple(re), tuple(im))

    @classmethod
    def diag(cls, values) -> "DenseMat":
        values = [GaussianRational.coerce(v) for v in values]
        d = len(values)
        re = [_Q0] * (d * d)
        im = [_Q0] * (d * d)
        for i, v in enumerate(values):
            re[i * d + i] = v.re
            im[i * d + i] = v.im
        return cls._raw(d, tuple(re), tuple(im))

    # ---- access -----------------------------------------------------------

    def __getitem__(self, ij) -> GaussianRational:
        i, j = ij
        k = i * self.d + j
        return GaussianRational._new(self._re[k], self._im[k])

    def entries(self) -> list[GaussianRational]:
        return [GaussianRational._new(a, b) for a, b in zip(self._re, self._im)]

    def rows(self) -> list[list[GaussianRational]]:
        e = self.entries()
        d = self.d
        return [e[i * d:(i + 1) * d] for i in range(d)]

    @property
    def is_zero(self) -> bool:
        z = self._zero
        if z is None:
            z = not (any(self._re) or any(self._im))
            object.__setattr__(self, "_zero", z)
        return z

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        if not isinstance(other, DenseMat):
            return NotImplemented
        return self.d == other.d and self._re == other._re and self._im == other._im

    def __hash__(self):
        return hash((self.d, self._re, self._im))

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self.rows())
        return f"DenseMat([{body}])"

    # ---- arithmetic -------------------------------------------------------

    def _check(self, other: "DenseMat"):
        if not isinstance(other, DenseMat):
            raise TypeError(f"expected DenseMat, got {type(other).__name__}")
        if other.d != self.d:
            raise DimensionMismatch(f"{self.d}x{self.d} vs {other.d}x{other.d}")

    def __add__(self, other: "DenseMat") -> "DenseMat":
        self._check(other)
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        return DenseMat._raw(self.d,
                             tuple(a + b for a, b in zip(self._re, other._re)),
                             tuple(a + b for a, b in zip(self._im, other._im)))

    def __sub__(self, other: "DenseMat") -> "DenseMat":
        self._check(other)
        if other.is_zero:
            return self
        return DenseMat._raw(self.d,
                             tuple(a - b for a, b in zip(self._re, other._re)),
                             tuple(a - b for a, b in zip(self._im, other._im)))

    def __neg__(self) -> "DenseMat":
        if self.is_zero:
            return self
        return DenseMat._raw(self.d, tuple(-a for a in self._re), tuple(-a for a in self._im))

    def __matmul__(self, other: "DenseMat") -> "DenseMat":
        self._check(other)
        d = self.d
        if self.is_zero or other.is_zero:
            return DenseMat.zeros(d)
        ar, ai, br, bi = self._re, self._im, other._re, other._im
        if d == 1:
            a, b, c, e = ar[0], ai[0], br[0], bi[0]
            return DenseMat._raw(1, (a * c - b * e,), (a * e + b * c,))
        re = []
        im = []
        for i in range(d):
            row = i * d
            for j in range(d):
                sr = _Q0
                si = _Q0
                for k in range(d):
                    a = ar[row + k]
                    b = ai[row + k]
                    if not a and not b:
                        continue
                    c = br[k * d + j]
                    e = bi[k * d + j]
                    if c:
                        sr += a * c
                        si += b * c
                    if e:
                        sr -= b * e
                        si += a * e
                re.append(sr)
                im.append(si)
        return DenseMat._raw(d, tuple(re), tuple(im))

    def scale(self, c) -> "DenseMat":
        c = GaussianRational.coerce(c)
        x, y = c.re, c.im
        return DenseMat._raw(self.d,
                             tuple(a * x - b * y for a, b in zip(self._re, self._im)),
                             tuple(a * y + b * x for a, b in zip(self._re, self._im)))

    def __mul__(self, c):
        if isinstance(c, DenseMat):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def adjoint(self) -> "DenseMat":
        d = self.d
        re, im = self._re, self._im
        return DenseMat._raw(d,
                             tuple(re[j * d + i] for i in range(d) for j in range(d)),
                             tuple(-im[j * d + i] for i in range(d) for j in range(d)))

    def commutes_with(self, other: "DenseMat") -> bool:
        return self @ other == other @ self

    def is_unitary(self) -> bool:
        return self.adjoint() @ self == DenseMat.identity(self.d)

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.rows()]


def mat_ops(a: DenseMat, b: DenseMat, op: str) -> DenseMat:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a @ b
    raise ValueError(f"unknown matrix op {op!r}")


def adjoint(m: DenseMat) -> DenseMat:
    return m.adjoint()


# ---- exact linear algebra over Q(i) -------------------------------------------

def _rref(rows: list[list[GaussianRational]], ncols: int):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((k for k in range(r, len(rows)) if rows[k][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                f = rows[k][c]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _nullspace(rows: list[list[GaussianRational]], ncols: int) -> list[list[GaussianRational]]:
    red, pivots = _rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def _inverse(m: list[list[GaussianRational]]) -> list[list[GaussianRational]]:
    k = len(m)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(k)] for i, row in enumerate(m)]
    red, pivots = _rref(aug, k)
    if pivots[:k] != list(range(k)) or len(red) < k:
        raise ZeroDivisionError("singular matrix")
    return [row[k:] for row in red]


class _Echelon:
    """Incrementally maintained row-reduced span of flat vectors."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[list[GaussianRational]] = []
        self.pivots: list[int] = []

    def reduce(self, v: list[GaussianRational]) -> list[GaussianRational]:
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            f = v[p]
            if f:
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def add(self, v) -> bool:
        v = self.reduce(v)
        p = next((c for c in range(self.ncols) if v[c]), None)
        if p is None:
            return False
        inv = ONE / v[p]
        v = [x * inv for x in v]
        new_rows = []
        for row in self.rows:
            f = row[p]
            new_rows.append([x - f * y for x, y in zip(row, v)] if f else row)
        self.rows = new_rows + [v]
        self.pivots.append(p)
        return True

    def contains(self, v) -> bool:
        return not any(self.reduce(v))


# ---- commutative algebras -----------------------------------------------------

@dataclass(frozen=True, eq=False)
class CommAlgebra:
    """A validated commutative subalgebra of M_d given by a linear basis.

    Build instances with :func:`verify_algebra` (or one of the named
    constructors); the constructor itself does not re-check closure.
    """

    d: int
    basis: tuple[DenseMat, ...]
    kind: str = "explicit"
    generator: DenseMat | None = None
    _pivots: tuple[int, ...] = field(default=(), repr=False)
    _pinv: tuple = field(default=(), repr=False)

    def __post_init__(self):
        ech_rows = [m.entries() for m in self.basis]
        _, pivots = _rref(ech_rows, self.d * self.d)
        # square submatrix of the basis restricted to pivot entries is invertible
        sub = [[ech_rows[k][p] for k in range(len(self.basis))] for p in pivots]
        object.__setattr__(self, "_pivots", tuple(pivots))
        object.__setattr__(self, "_pinv", tuple(tuple(r) for r in _inverse(sub)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def contains_identity(self) -> bool:
        return self.in_span(DenseMat.identity(self.d)) is not None

    def combination(self, coeffs) -> DenseMat:
        out = DenseMat.zeros(self.d)
        for c, b in zip(coeffs, self.basis):
            c = GaussianRational.coerce(c)
            if c:
                out = out + b.scale(c)
        return out

    def in_span(self, m: DenseMat) -> list[GaussianRational] | None:
        if m.d != self.d:
            raise DimensionMismatch(f"algebra is {self.d}x{self.d}, matrix is {m.d}x{m.d}")
        e = m.entries()
        rhs = [e[p] for p in self._pivots]
        coeffs = []
        for row in self._pinv:
            s = ZERO
            for a, b in zip(row, rhs):
                if a and b:
                    s = s + a * b
            coeffs.append(s)
        return coeffs if self.combination(coeffs) == m else None

    def __contains__(self, m: DenseMat) -> bool:
        return self.in_span(m) is not None

    def in_commutant(self, x: DenseMat) -> bool:
        if x.d != self.d:
            raise DimensionMismatch(f"algebra is {self.d}x{self.d}, matrix is {x.d}x{x.d}")
        return all(x @ b == b @ x for b in self.basis)

    def is_star_closed(self) -> bool:
        return all(b.adjoint() in self for b in self.basis)

    def commutant_basis(self) -> list[DenseMat]:
        """Basis of {X : XB = BX for every basis element B}."""
        d = self.d
        eqs = []
        for b in self.basis:
            be = b.entries()
            for i in range(d):
                for j in range(d):
                    # (XB - BX)_{ij} as a linear form in the entries of X
                    row = [ZERO] * (d * d)
                    for k in range(d):
                        row[i * d + k] = row[i * d + k] + be[k * d + j]
                        row[k * d + j] = row[k * d + j] - be[i * d + k]
                    eqs.append(row)
        return [DenseMat.from_entries(d, v) for v in _nullspace(eqs, d * d)]


def verify_algebra(basis: Sequence[DenseMat], *, close: bool = False,
                   kind: str = "explicit", generator: DenseMat | None = None) -> CommAlgebra:
    """Validate a basis as a commutative algebra containing the identity.

    Linearly dependent members are pruned and the identity is adjoined when
    it is missing from the span. With ``close=True`` products outside the
    span are added until the family is multiplicatively closed (this halts
    since dim M_d = d^2); otherwise they raise :class:`NotClosedError`.
    """
    basis = list(basis)
    if not basis:
        raise ValueError("algebra basis must be nonempty")
    d = basis[0].d
    for m in basis:
        if m.d != d:
            raise DimensionMismatch("basis matrices differ in dimension")

    ech = _Echelon(d * d)
    kept: list[DenseMat] = []
    for m in basis:
        if ech.add(m.entries()):
            kept.append(m)
    ident = DenseMat.identity(d)
    if ech.add(ident.entries()):
        kept.append(ident)

    for i in range(len(kept)):
        for j in range(i + 1, len(kept)):
            if kept[i] @ kept[j] != kept[j] @ kept[i]:
                raise NotCommutativeError(i, j)

    i = 0
    while i < len(kept):
        for j in range(i + 1):
            prod = kept[i] @ kept[j]
            if ech.contains(prod.entries()):
                continue
            if not close:
                raise NotClosedError(j, i)
            for k, m in enumerate(kept):
                if prod @ m != m @ prod:
                    raise NotCommutativeError(k, len(kept))
            ech.add(prod.entries())
            kept.append(prod)
        i += 1
    return CommAlgebra(d, tuple(kept), kind=kind, generator=generator)


def in_span(alg: CommAlgebra, m: DenseMat):
    return alg.in_span(m)


def in_commutant(alg: CommAlgebra, x: DenseMat) -> bool:
    return alg.in_commutant(x)


def cyclic_shift(d: int) -> DenseMat:
    """Down-shift permutation C with C^d = I."""
    re = [_Q0] * (d * d)
    for i in range(d):
        re[((i + 1) % d) * d + i] = _Q1
    return DenseMat._raw(d, tuple(re), (_Q0,) * (d * d))


def diagonal_algebra(d: int) -> CommAlgebra:
    units = []
    for k in range(d):
        units.append(DenseMat.diag([ONE if i == k else ZERO for i in range(d)]))
    return verify_algebra(units, kind="diagonal")


def circulant_algebra(d: int) -> CommAlgebra:
    c = cyclic_shift(d)
    powers = [DenseMat.identity(d)]
    for _ in range(d - 1):
        powers.append(powers[-1] @ c)
    return verify_algebra(powers, kind="circulant")


def poly_algebra(generator: DenseMat) -> CommAlgebra:
    """Span of the powers I, G, G^2, ... of a single matrix."""
    d = generator.d
    ech = _Echelon(d * d)
    powers = []
    p = DenseMat.identity(d)
    while ech.add(p.entries()):
        powers.append(p)
        p = p @ generator
    return verify_algebra(powers, kind="poly", generator=generator)


def algebra_from_descriptor(desc: dict) -> CommAlgebra:
    kind = desc.get("kind")
    if kind == "diagonal":
        return diagonal_algebra(int(desc["d"]))
    if kind == "circulant":
        return circulant_algebra(int(desc["d"]))
    if kind == "poly":
        return poly_algebra(DenseMat.from_rows(desc["generator"]))
    if kind == "explicit":
        return verify_algebra([DenseMat.from_rows(b) for b in desc["basis"]],
                              close=bool(desc.get("close", False)))
    raise ValueError(f"unknown algebra kind {kind!r}")


def algebra_to_descriptor(alg: CommAlgebra) -> dict:
    if alg.kind in ("diagonal", "circulant"):
        return {"kind": alg.kind, "d": alg.d}
    if alg.kind == "poly" and alg.generator is not None:
        return {"kind": "poly", "generator": alg.generator.to_json()}
    return {"kind": "explicit", "basis": [b.to_json() for b in alg.basis]}

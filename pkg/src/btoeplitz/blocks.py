"""n x n block matrices, block columns and block rows over M_d.

Block indices run 0..n-1. Products use ``@`` throughout:

    BlockMatrix @ BlockMatrix -> BlockMatrix
    BlockMatrix @ BlockColumn -> BlockColumn
    BlockRow    @ BlockMatrix -> BlockRow
    BlockColumn @ BlockRow    -> BlockMatrix   (outer product)
    BlockRow    @ BlockColumn -> DenseMat      (inner product)
"""

from __future__ import annotations

from typing import Callable, Sequence, Union

from .errors import DimensionMismatch
from .matrix import DenseMat

__all__ = [
    "BlockMatrix",
    "BlockColumn",
    "BlockRow",
    "shift",
    "shift_x",
    "basis_row",
    "diamond",
    "tilde",
    "displacement",
    "displacement_reconstruct",
    "block_compose",
]


def _sum(mats, d: int) -> DenseMat:
    out = DenseMat.zeros(d)
    for m in mats:
        out = out + m
    return out


class _BlockVector:
    __slots__ = ("n", "d", "entries")

    def __init__(self, entries: Sequence[DenseMat]):
        entries = tuple(entries)
        if not entries:
            raise DimensionMismatch("block vectors need at least one entry")
        d = entries[0].d
        if any(e.d != d for e in entries):
            raise DimensionMismatch("block entries differ in dimension")
        object.__setattr__(self, "n", len(entries))
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __reduce__(self):
        return (type(self), (self.entries,))

    @classmethod
    def zeros(cls, n: int, d: int):
        return cls([DenseMat.zeros(d)] * n)

    def __len__(self):
        return self.n

    def __getitem__(self, k) -> DenseMat:
        return self.entries[k]

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash((type(self).__name__, self.entries))

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if (other.n, other.d) != (self.n, self.d):
            raise DimensionMismatch(f"shapes ({self.n},{self.d}) vs ({other.n},{other.d})")

    def __add__(self, other):
        self._check(other)
        return type(self)([a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._check(other)
        return type(self)([a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return type(self)([-a for a in self.entries])

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for e in self.entries)

    def left_mul(self, x: DenseMat):
        return type(self)([x @ e for e in self.entries])

    def right_mul(self, x: DenseMat):
        return type(self)([e @ x for e in self.entries])

    def to_json(self):
        return [e.to_json() for e in self.entries]

    def __repr__(self):
        return f"{type(self).__name__}({list(self.entries)!r})"


class BlockColumn(_BlockVector):
    """An n x 1 block matrix."""

    __slots__ = ()

    def adjoint(self) -> "BlockRow":
        return BlockRow([e.adjoint() for e in self.entries])

    def __matmul__(self, other):
        if isinstance(other, BlockRow):
            if other.d != self.d:
                raise DimensionMismatch("block dimension mismatch in outer product")
            return BlockMatrix([[a @ b for b in other.entries] for a in self.entries])
        return NotImplemented


class BlockRow(_BlockVector):
    """A 1 x n block matrix."""

    __slots__ = ()

    def adjoint(self) -> BlockColumn:
        return BlockColumn([e.adjoint() for e in self.entries])

    def __matmul__(self, other):
        if isinstance(other, BlockColumn):
            if (other.n, other.d) != (self.n, self.d):
                raise DimensionMismatch("shape mismatch in row-column product")
            return _sum((a @ b for a, b in zip(self.entries, other.entries)), self.d)
        if isinstance(other, BlockMatrix):
            if (other.n, other.d) != (self.n, self.d):
                raise DimensionMismatch("shape mismatch in row-matrix product")
            n = self.n
            return BlockRow([_sum((self.entries[k] @ other.blocks[k][j] for k in range(n)
                                   if not self.entries[k].is_zero), self.d)
                             for j in range(n)])
        return NotImplemented


class BlockMatrix:
    """Immutable n x n array of d x d blocks."""

    __slots__ = ("n", "d", "blocks")

    def __init__(self, blocks: Sequence[Sequence[DenseMat]]):
        rows = tuple(tuple(r) for r in blocks)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionMismatch("blocks must form a nonempty square array")
        d = rows[0][0].d
        if any(b.d != d for r in rows for b in r):
            raise DimensionMismatch("blocks differ in dimension")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "blocks", rows)

    def __setattr__(self, name, value):
        raise AttributeError("BlockMatrix is immutable")

    def __reduce__(self):
        return (BlockMatrix, (self.blocks,))

    # ---- constructors -----------------------------------------------------

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int, int], DenseMat]) -> "BlockMatrix":
        return cls([[fn(i, j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, d: int) -> "BlockMatrix":
        z = DenseMat.zeros(d)
        return cls([[z] * n for _ in range(n)])

    @classmethod
    def identity(cls, n: int, d: int) -> "BlockMatrix":
        return cls.block_diagonal(n, DenseMat.identity(d))

    @classmethod
    def block_diagonal(cls, n: int, block: DenseMat) -> "BlockMatrix":
        """The constant block-diagonal matrix diag(block, ..., block)."""
        z = DenseMat.zeros(block.d)
        return cls([[block if i == j else z for j in range(n)] for i in range(n)])

    # ---- access -----------------------------------------------------------

    def __getitem__(self, ij) -> DenseMat:
        i, j = ij
        return self.blocks[i][j]

    def column(self, j: int) -> BlockColumn:
        return BlockColumn([r[j] for r in self.blocks])

    def row(self, i: int) -> BlockRow:
        return BlockRow(self.blocks[i])

    @property
    def is_zero(self) -> bool:
        return all(b.is_zero for r in self.blocks for b in r)

    def __eq__(self, other):
        if not isinstance(other, BlockMatrix):
            return NotImplemented
        return self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return f"BlockMatrix(n={self.n}, d={self.d}, blocks={[list(r) for r in self.blocks]!r})"

    def to_json(self):
        return [[b.to_json() for b in r] for r in self.blocks]

    # ---- arithmetic -------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, BlockMatrix):
            raise TypeError(f"expected BlockMatrix, got {type(other).__name__}")
        if (other.n, other.d) != (self.n, self.d):
            raise DimensionMismatch(f"shapes ({self.n},{self.d}) vs ({other.n},{other.d})")

    def __add__(self, other):
        self._check(other)
        return BlockMatrix([[a + b for a, b in zip(ra, rb)]
                            for ra, rb in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        self._check(other)
        return BlockMatrix([[a - b for a, b in zip(ra, rb)]
                            for ra, rb in zip(self.blocks, other.blocks)])

    def __neg__(self):
        return BlockMatrix([[-a for a in r] for r in self.blocks])

    def __matmul__(self, other):
        if isinstance(other, BlockMatrix):
            self._check(other)
            n, d = self.n, self.d
            a, b = self.blocks, other.blocks
            out = []
            for i in range(n):
                nz = [k for k in range(n) if not a[i][k].is_zero]
                out.append([_sum((a[i][k] @ b[k][j] for k in nz if not b[k][j].is_zero), d)
                            for j in range(n)])
            return BlockMatrix(out)
        if isinstance(other, BlockColumn):
            if (other.n, other.d) != (self.n, self.d):
                raise DimensionMismatch("shape mismatch in matrix-column product")
            return BlockColumn([_sum((a @ v for a, v in zip(r, other.entries)
                                      if not v.is_zero), self.d) for r in self.blocks])
        return NotImplemented

    def adjoint(self) -> "BlockMatrix":
        n = self.n
        return BlockMatrix([[self.blocks[j][i].adjoint() for j in range(n)] for i in range(n)])

    def left_mul(self, x: DenseMat) -> "BlockMatrix":
        return BlockMatrix([[x @ b for b in r] for r in self.blocks])

    def right_mul(self, x: DenseMat) -> "BlockMatrix":
        return BlockMatrix([[b @ x for b in r] for r in self.blocks])

    def __pow__(self, k: int) -> "BlockMatrix":
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = BlockMatrix.identity(self.n, self.d)
        for _ in range(k):
            out = out @ self
        return out

    def commutes_with(self, other: "BlockMatrix") -> bool:
        return self @ other == other @ self

    def to_dense(self) -> DenseMat:
        """Flatten to the underlying nd x nd scalar matrix."""
        n, d = self.n, self.d
        rows = []
        for bi in range(n):
            brows = [b.rows() for b in self.blocks[bi]]
            for r in range(d):
                rows.append([x for bj in range(n) for x in brows[bj][r]])
        return DenseMat.from_rows(rows)


BlockLike = Union[BlockMatrix, BlockColumn, BlockRow]


def shift(n: int, d: int) -> BlockMatrix:
    """S: identity blocks on the block subdiagonal."""
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    ident, z = DenseMat.identity(d), DenseMat.zeros(d)
    return BlockMatrix.from_function(n, lambda i, j: ident if i == j + 1 else z)


def basis_row(k: int, n: int, d: int) -> BlockRow:
    """P_k: identity block at index k, zeros elsewhere."""
    if not 0 <= k < n:
        raise IndexError(f"P_{k} is undefined for n={n}")
    ident, z = DenseMat.identity(d), DenseMat.zeros(d)
    return BlockRow([ident if i == k else z for i in range(n)])


def shift_x(n: int, d: int, x: DenseMat) -> BlockMatrix:
    """S_X = S + X at block position (0, n-1)."""
    if x.d != d:
        raise DimensionMismatch(f"X is {x.d}x{x.d}, blocks are {d}x{d}")
    s = shift(n, d)
    corner = s[0, n - 1] + x
    return BlockMatrix([[corner if (i, j) == (0, n - 1) else b for j, b in enumerate(r)]
                        for i, r in enumerate(s.blocks)])


def diamond(x: DenseMat, v: BlockLike) -> BlockLike:
    """X ⋄ v: left-multiply every block entry by X."""
    if x.d != v.d:
        raise DimensionMismatch(f"X is {x.d}x{x.d}, blocks are {v.d}x{v.d}")
    return v.left_mul(x)


def tilde(v: BlockColumn) -> BlockColumn:
    """(0, v_{n-1}^*, ..., v_1^*): zero head, reversed adjoint tail."""
    n = v.n
    return BlockColumn([DenseMat.zeros(v.d)] + [v[n - j].adjoint() for j in range(1, n)])


def displacement(m: BlockMatrix) -> BlockMatrix:
    """M - S M S^*, using (S M S^*)_{ij} = M_{i-1, j-1}."""
    z = DenseMat.zeros(m.d)
    b = m.blocks
    return BlockMatrix.from_function(
        m.n, lambda i, j: b[i][j] - (b[i - 1][j - 1] if i and j else z))


def displacement_reconstruct(dm: BlockMatrix) -> BlockMatrix:
    """sum_{k<n} S^k D (S^*)^k, the inverse of :func:`displacement`."""
    b = dm.blocks
    return BlockMatrix.from_function(
        dm.n, lambda i, j: _sum((b[i - k][j - k] for k in range(min(i, j) + 1)), dm.d))


def block_compose(a, b=None, op: str = "mul"):
    """Exact block arithmetic by name: ``mul``, ``add``, ``sub`` or ``adjoint``."""
    if op == "adjoint":
        return a.adjoint()
    if op == "mul":
        try:
            return a @ b
        except TypeError:
            raise DimensionMismatch(
                f"cannot multiply {type(a).__name__} by {type(b).__name__}") from None
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    raise ValueError(f"unknown block op {op!r}")

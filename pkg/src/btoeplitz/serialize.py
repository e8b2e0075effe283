"""JSON forms for matrices, block objects and instance files.

Scalars are strings such as ``"3/5+4/5i"``; a d x d matrix is a list of
rows; a block matrix is an n x n array of such matrices; block columns and
rows are arrays of d x d matrices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .blocks import BlockColumn, BlockMatrix, BlockRow
from .matrix import CommAlgebra, DenseMat, algebra_from_descriptor
from .scalar import ScalarParseError
from .toeplitz import ToeplitzSpec

__all__ = [
    "InstanceError",
    "Instance",
    "dense_from_json",
    "block_matrix_from_json",
    "column_from_json",
    "row_from_json",
    "load_instance",
    "parse_instance",
]


class InstanceError(ValueError):
    """An instance file that cannot be interpreted; ``where`` names the field."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def dense_from_json(obj, where: str = "matrix") -> DenseMat:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise InstanceError(where, "expected a square array of scalar strings")
    try:
        return DenseMat.from_rows(obj)
    except ScalarParseError as exc:
        raise InstanceError(where, str(exc)) from None
    except ValueError as exc:
        raise InstanceError(where, str(exc)) from None


def block_matrix_from_json(obj, where: str = "blocks") -> BlockMatrix:
    if not isinstance(obj, list) or not obj:
        raise InstanceError(where, "expected an n x n array of blocks")
    rows = []
    for i, r in enumerate(obj):
        if not isinstance(r, list):
            raise InstanceError(f"{where}[{i}]", "expected a row of blocks")
        rows.append([dense_from_json(b, f"{where}[{i}][{j}]") for j, b in enumerate(r)])
    try:
        return BlockMatrix(rows)
    except ValueError as exc:
        raise InstanceError(where, str(exc)) from None


def column_from_json(obj, where: str = "column") -> BlockColumn:
    return BlockColumn([dense_from_json(b, f"{where}[{k}]") for k, b in enumerate(obj)])


def row_from_json(obj, where: str = "row") -> BlockRow:
    return BlockRow([dense_from_json(b, f"{where}[{k}]") for k, b in enumerate(obj)])


def _depth(obj) -> int:
    depth = 0
    while isinstance(obj, list) and obj:
        depth += 1
        obj = obj[0]
    return depth


def _split_scalar_matrix(obj, d: int, where: str) -> BlockMatrix:
    full = dense_from_json(obj, where)
    size = full.d
    if size % d:
        raise InstanceError(where, f"size {size} is not a multiple of d={d}")
    n = size // d
    e = full.rows()
    return BlockMatrix([[DenseMat.from_rows([e[bi * d + r][bj * d:(bj + 1) * d] for r in range(d)])
                         for bj in range(n)] for bi in range(n)])


@dataclass
class Instance:
    matrix: BlockMatrix
    spec: Optional[ToeplitzSpec] = None
    x: Optional[DenseMat] = None
    algebra: Optional[CommAlgebra] = None


def parse_instance(obj) -> Instance:
    """Interpret decoded JSON as a block matrix or a ToeplitzSpec.

    Accepted shapes: a bare scalar matrix (2-deep array, d = 1), a bare
    block array (4-deep), or an object holding one of ``blocks``,
    ``matrix`` (+ optional ``d``) or the ToeplitzSpec keys ``diag``,
    ``lower``, ``upper``. Objects may also carry ``X`` and ``algebra``.
    """
    if isinstance(obj, list):
        depth = _depth(obj)
        if depth == 2:
            return Instance(_split_scalar_matrix(obj, 1, "matrix"))
        if depth == 4:
            return Instance(block_matrix_from_json(obj, "blocks"))
        raise InstanceError("<root>", f"array nesting depth {depth} is neither 2 nor 4")
    if not isinstance(obj, dict):
        raise InstanceError("<root>", "expected a JSON object or array")

    spec = None
    if "diag" in obj:
        try:
            spec = ToeplitzSpec.from_json(obj)
        except InstanceError:
            raise
        except (ScalarParseError, ValueError, KeyError, TypeError) as exc:
            raise InstanceError("spec", str(exc)) from None
        matrix = spec.build()
    elif "blocks" in obj:
        matrix = block_matrix_from_json(obj["blocks"], "blocks")
    elif "matrix" in obj:
        d = obj.get("d", 1)
        if not isinstance(d, int) or d < 1:
            raise InstanceError("d", "expected a positive integer")
        matrix = _split_scalar_matrix(obj["matrix"], d, "matrix")
    else:
        raise InstanceError("<root>", "need one of 'diag', 'blocks' or 'matrix'")

    x = dense_from_json(obj["X"], "X") if "X" in obj else None
    if x is not None and x.d != matrix.d:
        raise InstanceError("X", f"X is {x.d}x{x.d}, blocks are {matrix.d}x{matrix.d}")
    alg = None
    if "algebra" in obj:
        try:
            alg = algebra_from_descriptor(obj["algebra"])
        except (ValueError, KeyError, TypeError) as exc:
            raise InstanceError("algebra", str(exc)) from None
    return Instance(matrix, spec, x, alg)


def load_instance(path) -> Instance:
    with open(path) as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return parse_instance(obj)

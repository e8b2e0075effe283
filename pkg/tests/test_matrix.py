import pickle

import pytest
from hypothesis import given
from hypothesis import strategies as st

from btoeplitz.errors import DimensionMismatch, NotClosedError, NotCommutativeError
from btoeplitz.matrix import (
    DenseMat,
    adjoint,
    algebra_from_descriptor,
    algebra_to_descriptor,
    circulant_algebra,
    cyclic_shift,
    diagonal_algebra,
    in_commutant,
    in_span,
    mat_ops,
    poly_algebra,
    verify_algebra,
)
from btoeplitz.scalar import GaussianRational

import oracle
from strategies import algebras, dense, scalars

M = DenseMat.from_rows
NIL = M([[0, 1], [0, 0]])


def as_oracle(m):
    return oracle.from_dense_json(m.to_json())


def test_identity_law_and_self_difference():
    m = M([["1+i", 2], [3, "-1/2"]])
    assert mat_ops(DenseMat.identity(2), m, "mul") == m
    assert mat_ops(m, m, "sub").is_zero


def test_nilpotent_square():
    assert mat_ops(NIL, NIL, "mul").is_zero


def test_mat_ops_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        mat_ops(DenseMat.identity(2), DenseMat.identity(3), "add")


def test_adjoint_examples():
    assert adjoint(M([["i"]])) == M([["-i"]])
    assert adjoint(M([[1, 2], [3, 4]])) == M([[1, 3], [2, 4]])
    u = M([[0, "i"], [1, 0]])
    assert adjoint(u) @ u == DenseMat.identity(2)
    assert u.is_unitary()


@given(st.data())
def test_product_matches_oracle(data):
    d = data.draw(st.integers(1, 3))
    a, b = data.draw(dense(d)), data.draw(dense(d))
    assert as_oracle(a @ b) == oracle.mm(as_oracle(a), as_oracle(b))
    assert as_oracle(a.adjoint()) == oracle.adj(as_oracle(a))
    assert as_oracle(a - b) == oracle.msub(as_oracle(a), as_oracle(b))


@given(dense(), scalars)
def test_scale_matches_scalar_matrix(a, c):
    assert a.scale(c) == DenseMat.scalar(a.d, c) @ a
    assert pickle.loads(pickle.dumps(a)) == a


def test_diagonal_basis_valid():
    alg = verify_algebra([DenseMat.identity(2), DenseMat.diag([1, 2])])
    assert alg.dim == 2
    assert alg.contains_identity


def test_circulant_closure_from_single_shift():
    c = cyclic_shift(3)
    assert c @ c @ c == DenseMat.identity(3)
    with pytest.raises(NotClosedError):
        verify_algebra([c])
    alg = verify_algebra([c], close=True)
    assert alg.dim == 3
    for m in (DenseMat.identity(3), c, c @ c):
        assert m in alg


def test_noncommuting_basis_rejected():
    with pytest.raises(NotCommutativeError) as info:
        verify_algebra([NIL, M([[0, 0], [1, 0]])])
    assert info.value.witness is not None


def test_dependent_members_pruned_and_identity_adjoined():
    alg = verify_algebra([DenseMat.diag([1, 2]), DenseMat.diag([2, 4])])
    assert alg.dim == 2
    assert DenseMat.identity(2) in alg


def test_in_span_examples():
    alg = diagonal_algebra(2)
    coeffs = in_span(alg, DenseMat.identity(2))
    assert alg.combination(coeffs) == DenseMat.identity(2)
    assert in_span(alg, alg.basis[0]) == [GaussianRational(1), GaussianRational(0)]
    assert in_span(alg, NIL) is None


def test_in_commutant_examples():
    alg = verify_algebra([DenseMat.identity(2), DenseMat.diag([1, 2])])
    assert in_commutant(alg, DenseMat.scalar(2, GaussianRational(3, -1)))
    assert in_commutant(alg, DenseMat.diag(["5", "i"]))
    assert not in_commutant(alg, NIL)


def test_poly_algebra_of_jordan_block():
    alg = poly_algebra(M([[1, 1], [0, 1]]))
    assert alg.dim == 2
    assert NIL in alg
    assert not alg.is_star_closed()


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_named_algebras_star_closed(d):
    for alg in (diagonal_algebra(d), circulant_algebra(d)):
        assert alg.dim == d
        assert alg.is_star_closed()


@given(algebras(), st.data())
def test_algebra_members_commute_and_close(alg, data):
    cs = lambda: [data.draw(scalars) for _ in alg.basis]
    a, b = alg.combination(cs()), alg.combination(cs())
    assert a @ b == b @ a
    assert a @ b in alg
    assert alg.in_commutant(a)


@given(algebras(), st.data())
def test_in_span_coefficients_reproduce(alg, data):
    coeffs = [data.draw(scalars) for _ in alg.basis]
    m = alg.combination(coeffs)
    got = alg.in_span(m)
    assert got is not None and alg.combination(got) == m


@given(algebras())
def test_commutant_basis_members_commute(alg):
    basis = alg.commutant_basis()
    assert len(basis) >= alg.dim
    for x in basis:
        assert alg.in_commutant(x)


@given(algebras())
def test_descriptor_round_trip(alg):
    back = algebra_from_descriptor(algebra_to_descriptor(alg))
    assert back.dim == alg.dim
    assert all(b in back for b in alg.basis)

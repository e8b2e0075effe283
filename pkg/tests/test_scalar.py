import pickle
from fractions import Fraction

import pytest
from hypothesis import given

from btoeplitz.scalar import (
    I,
    ONE,
    ZERO,
    GaussianRational,
    ScalarParseError,
    parse_scalar,
    scalar_arith,
    scalar_conj,
)

from strategies import nonzero_scalars, scalars

G = GaussianRational


def test_div_self_is_one():
    assert scalar_arith(G(1, 1), G(1, 1), "div") == ONE


def test_div_by_two():
    assert scalar_arith(G(1, 1), G(2), "div") == G(Fraction(1, 2), Fraction(1, 2))


def test_product_of_conjugates():
    # (3+4i)(3-4i) = 9 + 16
    assert scalar_arith(G(3, 4), G(3, -4), "mul") == G(25)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        scalar_arith(G(1), ZERO, "div")


def test_unknown_op():
    with pytest.raises(ValueError):
        scalar_arith(ONE, ONE, "pow")


def test_conj_examples():
    assert scalar_conj(G(Fraction(3, 2), 2)) == G(Fraction(3, 2), -2)
    assert scalar_conj(G(5)) == G(5)


def test_pythagorean_unit_modulus():
    u = G(Fraction(3, 5), Fraction(4, 5))
    assert u * scalar_conj(u) == ONE
    assert u.abs2() == 1


@pytest.mark.parametrize("text, value", [
    ("3+4i", G(3, 4)),
    ("3/5-4/5i", G(Fraction(3, 5), Fraction(-4, 5))),
    ("-2", G(-2)),
    ("i", I),
    ("-i", -I),
    ("-1/2i", G(0, Fraction(-1, 2))),
    ("7 + 2i", G(7, 2)),
    ("1/2+i", G(Fraction(1, 2), 1)),
    (4, G(4)),
])
def test_parse(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("bad", ["3//4", "", "i3", "1/0", "2+3", "abc", 1.5, None, True])
def test_parse_rejects(bad):
    with pytest.raises(ScalarParseError):
        parse_scalar(bad)


def test_str_round_trip_examples():
    assert str(G(Fraction(3, 5), Fraction(4, 5))) == "3/5+4/5i"
    assert str(G(-2)) == "-2+0i"
    assert str(G(3, -4)) == "3-4i"


def test_immutable():
    x = G(1, 2)
    with pytest.raises(AttributeError):
        x.re = 5


def test_mixed_equality():
    assert G(3) == 3
    assert G(Fraction(1, 2)) == Fraction(1, 2)
    assert G(1, 1) != 1


@given(scalars)
def test_str_parse_round_trip(a):
    assert parse_scalar(str(a)) == a


@given(scalars)
def test_pickle_round_trip(a):
    assert pickle.loads(pickle.dumps(a)) == a


@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(nonzero_scalars, scalars)
def test_exact_inverse(a, b):
    assert a * a.inverse() == ONE
    assert (b / a) * a == b


@given(scalars, scalars)
def test_conj_is_involutive_automorphism(a, b):
    assert a.conj().conj() == a
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()


@given(scalars)
def test_hash_consistent_with_eq(a):
    assert hash(a) == hash(parse_scalar(str(a)))


def test_field_axioms_ten_thousand_triples():
    import random
    rng = random.Random(2024)

    def draw():
        return G(Fraction(rng.randint(-50, 50), rng.randint(1, 50)),
                 Fraction(rng.randint(-50, 50), rng.randint(1, 50)))

    for _ in range(10_000):
        a, b, c = draw(), draw(), draw()
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        if a:
            assert (b / a) * a == b

"""Exact Gaussian rationals: complex numbers a + bi with a, b in Q."""

from __future__ import annotations

import re
from fractions import Fraction

from gmpy2 import mpq

__all__ = [
    "GaussianRational",
    "ScalarParseError",
    "parse_scalar",
    "scalar_arith",
    "scalar_conj",
    "ZERO",
    "ONE",
    "I",
]

_MPQ_ZERO = mpq(0)
_MPQ_ONE = mpq(1)


class ScalarParseError(ValueError):
    pass


def _to_mpq(x) -> mpq:
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if type(x) is type(_MPQ_ZERO):
        return x
    if isinstance(x, (int, Fraction)):
        return mpq(x.numerator, x.denominator) if isinstance(x, Fraction) else mpq(x)
    if isinstance(x, str):
        return mpq(x)
    try:
        return mpq(x)
    except TypeError:
        raise TypeError(f"cannot convert {type(x).__name__} to a rational") from None


class GaussianRational:
    """An element of Q(i), stored as two canonical rationals.

    Instances are immutable. gmpy2's ``mpq`` keeps every fraction in
    lowest terms with a positive denominator, so structural equality is
    value equality.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _to_mpq(re))
        object.__setattr__(self, "im", _to_mpq(im))

    @classmethod
    def _new(cls, re: mpq, im: mpq) -> "GaussianRational":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        if isinstance(x, str):
            return parse_scalar(x)
        return cls(x)

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    # ---- predicates -------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # ---- arithmetic -------------------------------------------------------

    def __neg__(self):
        return GaussianRational._new(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussianRational._new(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussianRational._new(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational._new(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        c, d = other.re, other.im
        den = c * c + d * d
        if not den:
            raise ZeroDivisionError("division by zero in Q(i)")
        a, b = self.re, self.im
        return GaussianRational._new((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def inverse(self) -> "GaussianRational":
        return ONE / self

    def conj(self) -> "GaussianRational":
        return GaussianRational._new(self.re, -self.im)

    def abs2(self) -> mpq:
        """Squared modulus, which is always rational."""
        return self.re * self.re + self.im * self.im

    # ---- text form --------------------------------------------------------

    def __str__(self) -> str:
        re_s = _fmt(self.re)
        im = self.im
        sign = "-" if im < 0 else "+"
        return f"{re_s}{sign}{_fmt(abs(im))}i"

    def __repr__(self) -> str:
        return f"GaussianRational('{self}')"


def _fmt(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


_RAT = r"(?:\d+(?:/\d+)?)"
_REAL_RE = re.compile(rf"^([+-]?)({_RAT})$")
_IMAG_RE = re.compile(rf"^([+-]?)({_RAT})?\*?i$")
_FULL_RE = re.compile(rf"^([+-]?)({_RAT})([+-])({_RAT})?\*?i$")


def _parse_rat(sign: str, body: str | None) -> mpq:
    if body is None:
        value = _MPQ_ONE
    else:
        num, _, den = body.partition("/")
        if den and int(den) == 0:
            raise ScalarParseError(f"zero denominator in {body!r}")
        value = mpq(int(num), int(den) if den else 1)
    return -value if sign == "-" else value


def parse_scalar(text) -> GaussianRational:
    """Parse ``"p/q+r/si"`` style text (unit denominators may be omitted).

    Also accepts pure reals (``"-2"``, ``"3/4"``), pure imaginaries
    (``"i"``, ``"-1/2i"``) and JSON integers.
    """
    if isinstance(text, GaussianRational):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return GaussianRational(text)
    if not isinstance(text, str):
        raise ScalarParseError(f"expected a scalar string, got {type(text).__name__}")
    s = text.replace(" ", "")
    if not s:
        raise ScalarParseError("empty scalar")
    m = _FULL_RE.match(s)
    if m:
        return GaussianRational._new(_parse_rat(m.group(1), m.group(2)),
                                     _parse_rat(m.group(3), m.group(4)))
    m = _REAL_RE.match(s)
    if m:
        return GaussianRational._new(_parse_rat(m.group(1), m.group(2)), _MPQ_ZERO)
    m = _IMAG_RE.match(s)
    if m:
        return GaussianRational._new(_MPQ_ZERO, _parse_rat(m.group(1), m.group(2)))
    raise ScalarParseError(f"malformed scalar {text!r}")


_OPS = {
    "add": GaussianRational.__add__,
    "sub": GaussianRational.__sub__,
    "mul": GaussianRational.__mul__,
    "div": GaussianRational.__truediv__,
}


def scalar_arith(a, b, op: str) -> GaussianRational:
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown scalar op {op!r}") from None
    return fn(GaussianRational.coerce(a), GaussianRational.coerce(b))


def scalar_conj(a) -> GaussianRational:
    return GaussianRational.coerce(a).conj()


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)

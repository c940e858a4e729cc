from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nlsa import GF, QQ, parse_field
from nlsa.errors import DivisionByZero, FieldMismatch
from nlsa.scalars import Field

PRIMES = st.sampled_from([2, 3, 5, 7, 13, 2**31 - 1])


def test_inverse_in_f5_matches_search():
    F = GF(5)
    assert F.inv(2) == next(r for r in range(5) if (2 * r) % 5 == 1) == 3


def test_rational_addition():
    a, b = QQ.scalar("1/2"), QQ.scalar("1/3")
    assert str(a + b) == "5/6"


def test_multiplicative_identity():
    for F in (GF(7), QQ):
        a = F.scalar(4)
        assert (a * F.scalar(1)).value == a.value


def test_errors():
    with pytest.raises(DivisionByZero):
        GF(3).inv(0)
    with pytest.raises(DivisionByZero):
        QQ.scalar(0).inv()
    with pytest.raises(FieldMismatch):
        GF(3).scalar(1) + GF(5).scalar(1)
    with pytest.raises(DivisionByZero):
        GF(3).parse("1/3")


@pytest.mark.parametrize("bad", [1, 4, 2**31 + 11])
def test_bad_modulus(bad):
    with pytest.raises(ValueError):
        GF(bad)


def test_rational_has_no_modulus():
    with pytest.raises(ValueError):
        Field("rational", 5)


@pytest.mark.parametrize("text,expected", [("F5", GF(5)), ("GF(7)", GF(7)), ("3", GF(3)), ("Q", QQ)])
def test_parse_field(text, expected):
    assert parse_field(text) == expected


def test_parse_and_format_round_trip():
    assert GF(5).format(GF(5).parse("-1")) == "4"
    assert GF(5).parse("1/2") == 3
    assert QQ.format(QQ.parse("-6/4")) == "-3/2"


@given(PRIMES, st.integers(), st.integers(), st.integers())
def test_prime_field_axioms(p, a, b, c):
    F = GF(p)
    a, b, c = F.reduce(a), F.reduce(b), F.reduce(c)
    assert F.reduce(a + F.reduce(b + c)) == F.reduce(F.reduce(a + b) + c)
    assert F.reduce(a * F.reduce(b + c)) == F.reduce(a * b + a * c)
    assert F.reduce(a * b) == F.reduce(b * a)
    assert 0 <= a < p
    if a:
        assert F.reduce(a * F.inv(a)) == 1


@given(st.fractions(), st.fractions(), st.fractions())
def test_rational_field_axioms(a, b, c):
    x, y, z = QQ.scalar(a), QQ.scalar(b), QQ.scalar(c)
    assert ((x + y) + z).value == (x + (y + z)).value
    assert (x * (y + z)).value == (x * y + x * z).value
    if a:
        assert (x * x.inv()).value == 1
    assert isinstance(QQ.reduce(a), Fraction)


@given(PRIMES, st.integers(min_value=1))
def test_canonical_form_is_unique(p, a):
    F = GF(p)
    assert F.reduce(a) == F.reduce(a + p) == F.reduce(a - 3 * p)

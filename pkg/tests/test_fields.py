import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from inflatorkit import fields as F
from inflatorkit.errors import (
    DivisionByZero,
    FieldMismatch,
    HahnUnsupportedInverse,
    LiteralSyntaxError,
)
from inflatorkit.fields import FieldId, Place

from strategies import FIELDS, elements, nonzero

QT, QI, HAHN = FieldId.QT, FieldId.QI, FieldId.HAHN


def P(field, s):
    return F.parse_element(field, s)


def test_parse_cancels_common_factor():
    assert F.format_element(P(QT, "(t^2-1)/(t-1)")) == "t+1"


def test_parse_gaussian():
    g = P(QI, "1/2+3i")
    assert (g.re, g.im) == (Fraction(1, 2), 3)


def test_parse_hahn_terms():
    h = P(HAHN, "2*t^(1/3) - t^2")
    assert h.terms == ((Fraction(1, 3), 2), (2, -1))


@pytest.mark.parametrize("field,op,a,b,expect", [
    (QT, "mul", "t", "1/t", "1"),
    (QT, "inv", "1+t", None, "1/(t+1)"),
    (HAHN, "div", "t^(2/3)", "3*t^(1/3)", "(1/3)*t^(1/3)"),
])
def test_arith_examples(field, op, a, b, expect):
    y = None if b is None else P(field, b)
    assert F.format_element(F.arith(op, P(field, a), y)) == expect


def test_errors():
    with pytest.raises(LiteralSyntaxError):
        P(QT, "t^^2")
    with pytest.raises(DivisionByZero):
        F.arith("inv", P(QT, "0"))
    with pytest.raises(HahnUnsupportedInverse):
        F.arith("inv", P(HAHN, "1+t"))
    with pytest.raises(FieldMismatch):
        F.arith("add", P(QT, "t"), P(QI, "i"))


@pytest.mark.parametrize("place,x,v", [
    ("t=0", "t^2/(t-1)", 2),
    ("t=1", "t^2/(t-1)", -1),
    ("t=inf", "t^2/(t-1)", -1),
    ("t=0", "0", math.inf),
])
def test_valuation_examples(place, x, v):
    assert F.parse_place(place).valuation(P(QT, x)) == v


@pytest.mark.parametrize("place,x,r", [("t=0", "(t+2)/(t+1)", 2), ("t=1", "t+1", 2), ("t=0", "0", 0)])
def test_residue_examples(place, x, r):
    assert F.parse_place(place).residue(P(QT, x)) == r


def test_lift_examples():
    assert Place.at(0).lift(Fraction(3, 4)) == P(QT, "3/4")
    assert Place.at(1).lift(2) == P(QT, "2")
    assert Place.hahn().lift(5) == Place.hahn().lift(5) == P(HAHN, "5")


def test_place_json_roundtrip():
    for p in (Place.at(0), Place.at(Fraction(-2, 3)), Place.infinity(), Place.hahn()):
        assert Place.from_json(p.to_json()) == p


@pytest.mark.parametrize("field", FIELDS)
def test_print_parse_roundtrip(field):
    rng = random.Random(7)
    for _ in range(200):
        x = F.random_element(field, rng)
        assert P(field, F.format_element(x)) == x


@pytest.mark.parametrize("field", FIELDS)
@given(data=st.data())
def test_ring_axioms(field, data):
    x, y, z = (data.draw(elements(field)) for _ in range(3))
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == F.zero(field)
    assert x * F.one(field) == x


@pytest.mark.parametrize("field", [FieldId.Q, QI, QT, FieldId.QIT])
@given(data=st.data())
def test_inverse(field, data):
    x = data.draw(nonzero(field))
    assert x * F.arith("inv", x) == F.one(field)


@given(x=elements(QT), y=elements(QT), c=st.sampled_from(["t=0", "t=1", "t=-1", "t=inf"]))
def test_valuation_laws(x, y, c):
    p = F.parse_place(c)
    assert p.valuation(x * y) == p.valuation(x) + p.valuation(y)
    assert p.valuation(x + y) >= min(p.valuation(x), p.valuation(y))


@given(x=elements(QT), y=elements(QT), c=st.sampled_from(["t=0", "t=2", "t=inf"]))
def test_residue_is_homomorphism_on_O(x, y, c):
    p = F.parse_place(c)
    if p.valuation(x) < 0 or p.valuation(y) < 0:
        return
    assert p.residue(x * y) == p.residue(x) * p.residue(y)
    assert p.residue(x + y) == p.residue(x) + p.residue(y)
    assert p.residue(p.lift(p.residue(x)) - x) == 0


@given(x=elements(HAHN), y=elements(HAHN))
def test_hahn_valuation(x, y):
    p = Place.hahn()
    assert p.valuation(x * y) == p.valuation(x) + p.valuation(y)
    assert p.valuation(x + y) >= min(p.valuation(x), p.valuation(y))


@given(x=elements(QI), y=elements(QI))
def test_conjugation_is_automorphism(x, y):
    assert F.conjugate(x * y) == F.conjugate(x) * F.conjugate(y)
    assert F.conjugate(F.conjugate(x)) == x
    assert F.is_rational(x * F.conjugate(x))

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from inflatorkit import fields as F
from inflatorkit.errors import DegenerateProbe, FieldMismatch, NotALine
from inflatorkit.fields import I, FieldId, Place
from inflatorkit.fundamental import classify_tame, in_I, in_R, membership
from inflatorkit.inflators import builtin, check_morphism, fiona, gerald, product_inflator
from inflatorkit.linalg import Subspace, random_subspace
from inflatorkit.mutation import (
    Line,
    check_iterated,
    check_monotone,
    limit_ring_probe,
    mutate,
    taming_line,
    taming_report,
    vandermonde_certificate,
    verify_certificate,
)

Q, QI, QT = FieldId.Q, FieldId.QI, FieldId.QT
t = F.RatFunc.t(QT)


def test_taming_line_examples():
    assert taming_line(t, 1).generator == (1,)
    assert taming_line(t + 1, 2).generator == (1, t + 1)
    assert taming_line(I, 3).generator == (1, I, -1)


def test_line_normalizes_and_rejects_zero():
    assert Line.of(QT, [t, t * t]).generator == (1, t)
    with pytest.raises(NotALine):
        Line.of(Q, [0, 0])


def test_trivial_mutation_is_identity():
    f = builtin("gerald")
    g = mutate(f, [1])
    assert g.codomain == f.codomain
    rng = random.Random(1)
    for _ in range(10):
        n = rng.randint(1, 3)
        V = random_subspace(QT, n, rng)
        assert g.evaluate(n, V) == f.evaluate(n, V)


def test_mutation_field_mismatch():
    with pytest.raises(FieldMismatch):
        mutate(builtin("val0"), Line.of(QI, [1, I]))


def test_fiona_mutation_shape():
    g = mutate(fiona(), [1, I])
    assert g.codomain.summands == ((Q, 2),) and g.degree == 2
    for a in (I, F.Gauss(3, -2), F.Gauss(0)):
        v = membership(g, a)
        assert v.in_R and v.in_I == (not a)


def test_gerald_mutation_shape():
    g = mutate(gerald(), [1, t + 1])
    assert g.codomain.summands == ((Q, 2),)
    p0, p1 = Place.at(0), Place.at(1)
    rng = random.Random(2)
    for _ in range(30):
        a = F.random_element(QT, rng)
        assert in_R(g, a) == (p0.valuation(a) >= 0 and p1.valuation(a) >= 0)
        assert in_I(g, a) == (p0.valuation(a) > 0 and p1.valuation(a) > 0)
    assert classify_tame(g, t + 1, [0, 1, 2]).tame


@pytest.mark.parametrize("name,line", [("gerald", ["1", "t+1"]), ("fiona", ["1", "i"]),
                                       ("product01", ["1", "t"]), ("restrict", ["1", "2+i"])])
def test_mutations_are_inflators(name, line):
    f = builtin(name)
    g = mutate(f, Line.parse(f.source_field, line))
    assert check_morphism(g, trials=20, seed=4).passed


def test_limit_ring_probe_examples():
    out = limit_ring_probe(gerald(), t + 1, [0, 1])
    assert out["in_limit_ring"] and "self" in out["hits"]
    out = limit_ring_probe(builtin("val0"), 1 / t, [0])
    assert out["hits"] == ["0"]
    assert limit_ring_probe(gerald(), t * 0, [0, 1])["in_limit_ring"]
    with pytest.raises(DegenerateProbe):
        limit_ring_probe(gerald(), t, [0, 0])


def test_iterated_trivial():
    V = Subspace(QT, 2, [(1, t)])
    assert check_iterated(builtin("val0"), [1], [1], V).passed


def test_iterated_product():
    f = product_inflator("t=0", "t=1")
    rng = random.Random(8)
    for _ in range(20):
        n = rng.randint(1, 2)
        V = random_subspace(QT, n, rng)
        assert check_iterated(f, [1, t], [1, t + 1], V).passed


def test_monotone_side_check():
    f = product_inflator("t=0", "t=1")
    g = mutate(f, [1, t])
    rng = random.Random(9)
    assert check_monotone(f, g, [F.random_element(QT, rng) for _ in range(20)]).passed


def test_taming_and_certificates():
    rep = taming_report(gerald(), t + 1)
    assert rep.passed
    # 1/(t+1-1) = 1/t is outside the mutated ring, so q = 1 has a certificate
    assert any(c.name == "certificate q=1" for c in rep.checks)
    cert = vandermonde_certificate(gerald(), t + 1, 1)
    assert verify_certificate(gerald(), t + 1, 1, cert)
    assert not verify_certificate(gerald(), t + 1, 1, None)


@given(s=st.integers(0, 2**32))
def test_monotone_gerald_random_lines(s):
    rng = random.Random(s)
    f = gerald()
    L = [1, F.random_element(QT, rng)]
    g = mutate(f, L)
    elems = [F.random_element(QT, rng) for _ in range(5)]
    assert check_monotone(f, g, elems).passed

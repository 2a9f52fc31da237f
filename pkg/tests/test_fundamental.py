import random
from fractions import Fraction

import pytest

from inflatorkit import fields as F
from inflatorkit.directory import Endo
from inflatorkit.errors import DegenerateProbe, NotInRing
from inflatorkit.fields import I, FieldId, Place
from inflatorkit.fundamental import (
    classify_tame,
    in_I,
    in_R,
    membership,
    mv_type_test,
    reconstruct_one_inflator,
    residue,
    residue_compose_check,
    theta,
)
from inflatorkit.inflators import builtin, fiona, gerald, product_inflator
from inflatorkit.linalg import Subspace, random_subspace

Q, QI, QT = FieldId.Q, FieldId.QI, FieldId.QT
t = F.RatFunc.t(QT)


def samples(field, count, seed):
    rng = random.Random(seed)
    return [F.random_element(field, rng) for _ in range(count)]


def test_theta_examples():
    assert theta(0, QT) == Subspace(QT, 2, [(1, 0)])
    assert theta(t, QT).rows == ((1, t),)
    assert theta(I, QI).rows == ((1, I),)


def test_valuation_membership_examples():
    f = builtin("val0")
    v = membership(f, t)
    assert v.in_R and v.in_I and v.residue_endo.is_zero()
    assert not in_R(f, 1 / t)
    with pytest.raises(NotInRing):
        residue(f, 1 / t)


def test_fiona_membership_examples():
    f = fiona()
    assert not in_R(f, I)
    v = membership(f, Fraction(1, 2))
    assert v.in_R and not v.in_I
    assert v.residue_endo == Endo.scalar(f.codomain, Fraction(1, 2))


def test_residue_of_zero():
    f = builtin("val0")
    r = residue_compose_check(f, t * 0, t * 0)
    assert r.passed and residue(f, 0).is_zero()


def test_restrict_scalars_residue_is_multiplication():
    f = builtin("restrict")
    a = F.Gauss(2, 3)
    assert residue(f, a).blocks[0] == ((2, -3), (3, 2))


@pytest.mark.parametrize("name", ["val0", "valinf", "product01", "gerald", "fiona", "restrict"])
def test_ring_closure_and_jacobson(name):
    f = builtin(name)
    rng = random.Random(name)
    pool = [F.random_element(f.source_field, rng) for _ in range(40)]
    R = [a for a in pool if in_R(f, a)] + [F.one(f.source_field)]
    for a, b in zip(R, R[1:] + R[:1]):
        assert in_R(f, a + b) and in_R(f, a * b) and in_R(f, -a)
        r = residue_compose_check(f, a, b)
        assert r.passed
    for a in R:
        if in_I(f, a):
            assert in_R(f, 1 / (1 + a))


def test_product_ring_is_intersection():
    f = product_inflator("t=0", "t=1")
    p0, p1 = Place.at(0), Place.at(1)
    for a in samples(QT, 60, 5):
        assert in_R(f, a) == (p0.valuation(a) >= 0 and p1.valuation(a) >= 0)
        assert in_I(f, a) == (p0.valuation(a) > 0 and p1.valuation(a) > 0)


def test_classify_tame_examples():
    assert classify_tame(builtin("val0"), 1 / t, [0, 1]).tame
    tr = classify_tame(gerald(), t + 1, [0, 1, 2])
    assert tr.classification == "Wild" and tr.exceptions == 3
    tr = classify_tame(builtin("val0"), t, [1, 2])
    assert tr.tame and tr.probes[0][2]


def test_classify_tame_errors():
    with pytest.raises(DegenerateProbe):
        classify_tame(builtin("val0"), t, [1, 1])
    with pytest.raises(DegenerateProbe):
        classify_tame(builtin("val0"), t * 0 + 1, [1, 2])
    with pytest.raises(DegenerateProbe):
        classify_tame(gerald(), t, [2, 3])


def test_mv_type_examples():
    f = product_inflator("t=0", "t=1")
    x = 1 / (t * (t - 1))
    assert mv_type_test(f, [x, t, 1 / t], [0, 1]).passed
    assert in_R(f, 1 / x)
    rep = mv_type_test(gerald(), [t + 1], [0, 1])
    assert not rep.passed and rep.failures[0].name == "t+1"
    assert mv_type_test(gerald(), [0], [0, 1]).passed


def test_reconstruct_one_inflator_matches():
    f = builtin("val0")
    g = reconstruct_one_inflator(f)
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(1, 3)
        V = random_subspace(QT, n, rng)
        assert g.evaluate(n, V) == f.evaluate(n, V)

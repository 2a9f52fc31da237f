import random
from fractions import Fraction

import pytest

from inflatorkit import fields as F
from inflatorkit import hahn as H
from inflatorkit.errors import NotInO, NoWitness
from inflatorkit.fields import FieldId

HAHN = FieldId.HAHN


def P(s):
    return F.parse_element(HAHN, s)


def test_even_odd_examples():
    g, h = H.even_odd(P("t^2 + t^(1/3)"))
    assert g == P("t^2") and h == P("t^(1/3)")
    g, h = H.even_odd(P("7/2"))
    assert g == P("7/2") and h == 0
    g, h = H.even_odd(P("t"))
    assert g == 0 and h == P("t")


def test_membership_examples():
    assert H.in_R(P("1"))
    assert not H.in_R(P("t")) and H.in_O(P("t"))
    assert H.in_R(P("t^3"))
    assert not H.in_O(P("t^(-2/3)"))


@pytest.mark.parametrize("line,gamma", [
    (["1"], 0),
    (["1", "t^(1/3)"], Fraction(5, 3)),
    (["1", "t^(1/3)", "t^(5/3)"], Fraction(5, 3)),
    (["1", "t+t^(1/3)"], Fraction(5, 3)),
])
def test_gamma(line, gamma):
    assert H.mutated_gamma(line).gamma == gamma


def test_gamma_errors():
    with pytest.raises(NotInO):
        H.mutated_gamma(["1", "t^(-1)"])
    with pytest.raises(NotInO):
        H.mutated_gamma(["t", "1"])


def test_witness_examples():
    w = H.endless_witness(H.mutated_gamma(["1", "t^(1/3)"]))
    assert (w.x, w.y, w.ratio) == (P("t^(16/9)"), P("t^(17/9)"), P("t^(1/9)"))
    assert w.verified
    w = H.endless_witness(H.HahnPedestal(Fraction(0)))
    assert (w.x, w.y, w.ratio) == (P("t^(2/3)"), P("t^(5/3)"), P("t"))
    with pytest.raises(NoWitness):
        H.endless_witness(H.HahnPedestal(Fraction(2)))


def test_parity_identities():
    rng = random.Random(11)
    for _ in range(200):
        x, y = H.random_series(rng), H.random_series(rng)
        gx, hx = H.even_odd(x)
        gy, hy = H.even_odd(y)
        g, h = H.even_odd(x * y)
        assert g == gx * gy + hx * hy
        assert h == gx * hy + hx * gy


def test_ring_closure():
    rng = random.Random(12)
    for _ in range(100):
        x, y = H.random_R_element(rng), H.random_R_element(rng)
        assert H.in_R(x) and H.in_R(y)
        assert H.in_R(x * y) and H.in_R(x + y)
    for _ in range(50):
        a = H.random_O_not_R(rng)
        assert H.in_O(a) and not H.in_R(a * 1)

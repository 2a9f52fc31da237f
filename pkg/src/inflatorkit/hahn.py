"""Even/odd pedestals in Q((t^Γ)), Γ = Z[1/3].

Γ/2Γ has two classes; an exponent p/3^k is even or odd with its numerator
(3 is odd, so the class does not depend on how the fraction is written).
Splitting a series by exponent class gives x = g(x) + h(x).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import fields as F
from .errors import NoWitness, NotInO
from .fields import INF, Hahn

ODD_THRESHOLD = Fraction(2)


def is_even_exponent(e) -> bool:
    return Fraction(e).numerator % 2 == 0


def even_odd(x: Hahn):
    x = F.coerce(F.FieldId.HAHN, x)
    g = [(e, c) for e, c in x.terms if is_even_exponent(e)]
    h = [(e, c) for e, c in x.terms if not is_even_exponent(e)]
    return Hahn(g), Hahn(h)


def val(x: Hahn):
    return F.coerce(F.FieldId.HAHN, x).val()


def in_O(x) -> bool:
    return val(x) >= 0


def in_R(x) -> bool:
    g, h = even_odd(x)
    return g.val() >= 0 and h.val() >= ODD_THRESHOLD


@dataclass(frozen=True)
class HahnPedestal:
    """A' = {x : val g(x) ≥ gamma and val h(x) ≥ 2}."""

    gamma: Fraction
    odd_threshold: Fraction = ODD_THRESHOLD

    def contains(self, x) -> bool:
        g, h = even_odd(x)
        return g.val() >= self.gamma and h.val() >= self.odd_threshold


def mutated_gamma(line: Sequence) -> HahnPedestal:
    """gamma = max({0} ∪ {2 - val h(a_i)}) for a line (1, a_2, ..., a_m) in O^m."""
    a = [F.parse_element(F.FieldId.HAHN, x) if isinstance(x, str) else F.coerce(F.FieldId.HAHN, x)
         for x in line]
    if not a or a[0] != 1:
        raise NotInO("the line generator must start with 1")
    gamma = Fraction(0)
    for ai in a:
        if not in_O(ai):
            raise NotInO(f"{F.format_element(ai)} has negative valuation")
        vh = even_odd(ai)[1].val()
        if vh == INF:
            continue
        if vh <= 0:
            raise NotInO(f"odd part of {F.format_element(ai)} has valuation {vh}")
        gamma = max(gamma, ODD_THRESHOLD - vh)
    assert gamma < ODD_THRESHOLD
    return HahnPedestal(gamma)


@dataclass(frozen=True)
class EndlessWitness:
    x: Hahn
    y: Hahn
    ratio: Hahn
    x_in_A: bool
    y_in_A: bool
    ratio_in_O: bool

    @property
    def verified(self) -> bool:
        return self.x_in_A and not self.y_in_A and self.ratio_in_O

    def to_json(self, gamma):
        return {"gamma": str(gamma), "x": F.format_element(self.x), "y": F.format_element(self.y),
                "ratio": F.format_element(self.ratio),
                "verdict": "verified" if self.verified else "failed"}


def endless_witness(p: HahnPedestal, max_depth: int = 40) -> EndlessWitness:
    """Monomials x (even exponent) and y (odd exponent) with
    gamma < val x < val y < 2, on the coarsest 3-adic grid that has them.

    x ∈ A', y = (y/x)·x ∉ A' and y/x ∈ O, so O does not stabilize A'.
    """
    lo, hi = p.gamma, p.odd_threshold
    if lo >= hi:
        raise NoWitness(f"gamma = {lo} leaves no room below {hi}")
    for k in range(max_depth):
        den = 3 ** k
        pts = [Fraction(j, den) for j in range(int(lo * den), int(hi * den) + 1)]
        pts = [e for e in pts if lo < e < hi]
        xs = [e for e in pts if is_even_exponent(e)]
        ys = [e for e in pts if not is_even_exponent(e)]
        if xs and ys and min(xs) < max(ys):
            ex, ey = min(xs), max(ys)
            x, y = Hahn.monomial(1, ex), Hahn.monomial(1, ey)
            r = y / x
            return EndlessWitness(x, y, r, p.contains(x), p.contains(y), in_O(r))
    raise NoWitness("no grid point found")


def random_R_element(rng, terms=4) -> Hahn:
    out = []
    for _ in range(rng.randint(0, terms)):
        k = rng.randint(0, 2)
        if rng.random() < 0.5:
            e = Fraction(2 * rng.randint(0, 6), 3 ** k)
        else:
            e = Fraction(2 * rng.randint(0, 4) + 1, 3 ** k)
            while e < 2:
                e += 2
        out.append((e, F.random_rational(rng, allow_zero=False)))
    return Hahn(out)


def random_O_not_R(rng) -> Hahn:
    """val ≥ 0 but an odd term below t^2."""
    k = rng.randint(0, 2)
    low = [Fraction(p, 3 ** k) for p in range(1, 2 * 3 ** k, 2)]
    e = rng.choice(low)
    return Hahn([(e, F.random_rational(rng, allow_zero=False))]) + random_R_element(rng, 2)


def random_series(rng, terms=4) -> Hahn:
    return Hahn([(Fraction(rng.randint(-3, 9), 3 ** rng.randint(0, 2)),
                  F.random_rational(rng, allow_zero=False))
                 for _ in range(rng.randint(0, terms))])

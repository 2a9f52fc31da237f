"""Curated reproductions of the worked examples.

Each entry recomputes one hand computation and compares it with the
expected shape.  ``source`` names the worked example it mirrors.
"""
from __future__ import annotations

from . import fields as F
from . import hahn as H
from . import lattice as LT
from .fields import FieldId, Place
from .fundamental import classify_tame, membership, theta
from .inflators import (
    builtin,
    fiona,
    gerald,
    malleability_probe,
    refute_twist_step,
    valuation_inflator,
)
from .mutation import mutate
from .report import PASS, Report
from .suites import eric_witness_step, sample_elements, sample_qi

QT = FieldId.QT


def _calvin(seed):
    f = valuation_inflator("t=0")
    rep = Report("calvin-ring")
    t = F.parse_element(QT, "t")
    X = f.evaluate(2, theta(t, QT))
    rep.add("image of Θ_t is k·(1, 0)", X.parts[0].rows == ((1, 0),))
    X = f.evaluate(2, theta(1 / t, QT))
    rep.add("image of Θ_{1/t} is k·(0, 1)", X.parts[0].rows == ((0, 1),))
    p = Place.at(0)
    bad = 0
    for a in sample_elements(QT, 40, seed, "calvin"):
        v = membership(f, a)
        bad += not (v.in_R == (p.valuation(a) >= 0) and v.in_I == (p.valuation(a) > 0))
    rep.add("R = O, I = m on samples", bad == 0, mismatches=bad)
    return rep


def _beth(seed):
    f = builtin("restrict")
    rep = Report("beth-ring")
    bad = 0
    for a in sample_qi(40, seed, "beth"):
        v = membership(f, a)
        mult = [[a.re, -a.im], [a.im, a.re]]
        bad += not (v.in_R and [list(r) for r in v.residue_endo.blocks[0]] == mult)
    rep.add("every sample in R with residue = multiplication matrix", bad == 0, mismatches=bad)
    return rep


def _fiona_ring(seed):
    f = fiona()
    rep = Report("fiona-ring")
    bad = 0
    for a in sample_qi(50, seed, "fiona"):
        v = membership(f, a)
        bad += not (v.in_R == a.is_rational() and v.in_I == (not a))
    rep.add("R = Q and I = 0 on samples", bad == 0, mismatches=bad)
    return rep


def _gerald_ring(seed):
    f = gerald()
    rep = Report("gerald-ring")
    p0, p1 = Place.at(0), Place.at(1)
    bad = 0
    samples = sample_elements(QT, 60, seed, "gerald") + [F.parse_element(QT, s) for s in
                                                         ("t+1", "t^2-t", "1", "t^2-t+3")]
    for a in samples:
        v = membership(f, a)
        in_o = p0.valuation(a) >= 0 and p1.valuation(a) >= 0
        expect = in_o and p0.residue(a) == p1.residue(a)
        expect_i = expect and p0.residue(a) == 0
        bad += not (v.in_R == expect and v.in_I == expect_i)
    rep.add("R = {a ∈ O_0 ∩ O_1 : res_0 a = res_1 a}", bad == 0, mismatches=bad)
    tr = classify_tame(f, F.parse_element(QT, "t+1"), [0, 1, 2])
    rep.add("t+1 is wild", tr.classification == "Wild")
    return rep


def _eric(seed):
    f, Y = eric_witness_step()
    v = refute_twist_step(f, Y)
    rep = Report("eric-not-malleable")
    rep.add("no line reaches Y = (0, Qi·(1, i))", v.refuted, reason=v.reason)
    return rep


def _fiona_malleable(seed):
    r = malleability_probe(fiona(), trials=50, seed=seed)
    rep = Report("fiona-malleable")
    rep.add("all sampled steps lift", r.count(PASS) == 50, lifted=r.count(PASS))
    return rep


def _mut_galois(seed):
    g = mutate(fiona(), [1, F.I])
    rep = Report("mut-galois")
    rep.add("codomain Q^2 with one dead summand", g.codomain.summands == ((FieldId.Q, 2),))
    bad = 0
    for a in sample_qi(50, seed, "mutgal"):
        v = membership(g, a)
        bad += not (v.in_R and v.in_I == (not a))
    rep.add("R' = Qi and I' = 0 on samples", bad == 0, mismatches=bad)
    return rep


def _mut_gerald(seed):
    g = mutate(gerald(), [1, F.parse_element(QT, "t+1")])
    rep = Report("mut-gerald")
    rep.add("codomain (k^2, 0)", g.codomain.summands == ((FieldId.Q, 2),))
    p0, p1 = Place.at(0), Place.at(1)
    bad = 0
    for a in sample_elements(QT, 50, seed, "mutger"):
        v = membership(g, a)
        v0, v1 = p0.valuation(a), p1.valuation(a)
        bad += not (v.in_R == (v0 >= 0 and v1 >= 0) and v.in_I == (v0 > 0 and v1 > 0))
    rep.add("R' = O_0 ∩ O_1, I' = m_0 ∩ m_1", bad == 0, mismatches=bad)
    return rep


def _hahn(seed):
    rep = Report("hahn-endless")
    for line in (["1", "t^(1/3)"], ["1", "t^(1/3)", "t^(5/3)"], ["1", "t+t^(1/3)"]):
        p = H.mutated_gamma(line)
        w = H.endless_witness(p)
        rep.add(",".join(line), w.verified, **w.to_json(p.gamma))
    return rep


def _two_place(seed):
    M = LT.two_place_module_lattice()
    rep = Report("two-place-modules")
    rep.add("generated module lattice has rk0 = 2", LT.rk0(M) == 2, elements=M.n)
    return rep


CATALOG = {
    "calvin-ring": ("valuation on Q(t) at t=0: ring, ideal and Θ images", _calvin),
    "beth-ring": ("restriction of scalars Qi/Q: ring is all of Qi", _beth),
    "fiona-ring": ("descended Galois twist: R = Q, I = 0", _fiona_ring),
    "gerald-ring": ("twist of two valuations: equal-residue ring, t+1 wild", _gerald_ring),
    "eric-not-malleable": ("Galois twist over Qi is not malleable", _eric),
    "fiona-malleable": ("descended Galois twist is malleable (sampled)", _fiona_malleable),
    "mut-galois": ("mutation of the descended twist along (1, i)", _mut_galois),
    "mut-gerald": ("mutation of the two-valuation twist along Θ_{t+1}", _mut_gerald),
    "hahn-endless": ("endless mutation over Q((t^Γ)), Γ = Z[1/3]", _hahn),
    "two-place-modules": ("R-submodules of Q(t) for two places have rk0 = 2", _two_place),
}


def run(example_id: str, seed: int = 0) -> Report:
    source, fn = CATALOG[example_id]
    rep = fn(seed)
    rep.meta.update({"id": example_id, "source": source, "seed": seed})
    return rep

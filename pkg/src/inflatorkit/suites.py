"""Acceptance blocks, shared by the CLI ``suite`` command and the tests.

Each ``criterion_*`` function returns a :class:`Report`; sample sizes and
tolerances are the fixed acceptance values unless overridden.
"""
from __future__ import annotations

import random
from fractions import Fraction

from . import fields as F
from . import hahn as H
from . import lattice as LT
from .fields import FieldId, Place
from .fundamental import (
    classify_tame,
    membership,
    reconstruct_one_inflator,
    residue_compose_check,
)
from .inflators import (
    builtin,
    check_morphism,
    fiona,
    gerald,
    malleability_probe,
    eric,
    product_inflator,
    refute_twist_step,
    trial_rng,
    valuation_inflator,
)
from .directory import DirectoryElement
from .linalg import Subspace, random_subspace
from .mutation import check_iterated, check_monotone, mutate, taming_report
from .report import PASS, Report

QT, QI = FieldId.QT, FieldId.QI


def _qt(s):
    return F.parse_element(QT, s)


def _qi(s):
    return F.parse_element(QI, s)


def sample_elements(field, count, seed, salt="el"):
    rng = random.Random(f"{seed}:{salt}")
    return [F.random_element(field, rng) for _ in range(count)]


def sample_qi(count, seed, salt="qi"):
    """Qi samples with a good share of rationals and of zero."""
    rng = random.Random(f"{seed}:{salt}")
    out = [F.Gauss(0), F.Gauss(1), F.I]
    while len(out) < count:
        r = rng.random()
        if r < 0.35:
            out.append(F.Gauss(F.random_rational(rng)))
        else:
            out.append(F.Gauss(F.random_rational(rng), F.random_rational(rng, allow_zero=False)))
    return out[:count]


def morphism_inflators():
    base = {
        "val t=0": valuation_inflator("t=0"),
        "val t=inf": valuation_inflator("t=inf"),
        "product t=0,1": product_inflator("t=0", "t=1"),
        "gerald": gerald(),
        "galois_pair": builtin("galois"),
        "descend_fixed": fiona(),
        "restrict_scalars": builtin("restrict"),
    }
    base["mut gerald (1,t+1)"] = mutate(base["gerald"], [1, _qt("t+1")])
    base["mut galois_pair (1,i)"] = mutate(base["galois_pair"], [1, F.I])
    base["mut descend_fixed (1,i)"] = mutate(base["descend_fixed"], [1, F.I])
    base["mut restrict_scalars (1,i)"] = mutate(base["restrict_scalars"], [1, F.I])
    return base


def criterion_1(seed=0, trials=200) -> Report:
    rep = Report("1 morphism axioms", meta={"trials": trials, "levels": "1-3"})
    for name, f in morphism_inflators().items():
        r = check_morphism(f, trials=trials, seed=seed, max_level=3)
        rep.add(name, r.passed, violations=len(r.failures))
    return rep


def criterion_2(seed=0, samples=100, pairs=50) -> Report:
    f = valuation_inflator("t=0")
    p = Place.at(0)
    rep = Report("2 valuation ring and ideal")
    bad = 0
    for a in sample_elements(QT, samples, seed, "c2"):
        v = membership(f, a)
        val = p.valuation(a)
        ok = v.in_R == (val >= 0) and v.in_I == (val > 0)
        if ok and v.in_R:
            ok = v.residue_endo.blocks[0][0][0] == p.residue(a)
        bad += not ok
    rep.add("R = {val >= 0}, I = {val > 0}", bad == 0, samples=samples, mismatches=bad)
    rng = random.Random(f"{seed}:c2pairs")
    pool = [a for a in sample_elements(QT, 4 * pairs, seed, "c2pool") if p.valuation(a) >= 0]
    bad = 0
    for _ in range(pairs):
        a, b = rng.choice(pool), rng.choice(pool)
        bad += not residue_compose_check(f, a, b).passed
    rep.add("residue map multiplicative and additive", bad == 0, pairs=pairs, failures=bad)
    return rep


def criterion_3(seed=0, samples=100) -> Report:
    f = product_inflator("t=0", "t=1")
    facs = [valuation_inflator("t=0"), valuation_inflator("t=1")]
    rep = Report("3 product ring is the intersection")
    bad = 0
    for a in sample_elements(QT, samples, seed, "c3"):
        v = membership(f, a)
        ws = [membership(g, a) for g in facs]
        ok = v.in_R == all(w.in_R for w in ws) and v.in_I == all(w.in_I for w in ws)
        if ok and v.in_R:
            ok = list(v.residue_endo.blocks) == [w.residue_endo.blocks[0] for w in ws]
        bad += not ok
    rep.add("R = R_0 ∩ R_1, I = I_0 ∩ I_1", bad == 0, samples=samples, mismatches=bad)
    return rep


def criterion_4(seed=0, samples=50) -> Report:
    f = fiona()
    rep = Report("4 descended Galois twist: R = Q, I = 0")
    bad = 0
    for a in sample_qi(samples, seed, "c4"):
        v = membership(f, a)
        bad += not (v.in_R == a.is_rational() and v.in_I == (not a))
    rep.add("in_R iff rational, in_I iff zero", bad == 0, samples=samples, mismatches=bad)
    return rep


def criterion_5(seed=0, samples=50) -> Report:
    f = fiona()
    g = mutate(f, [1, F.I])
    rep = Report("5 mutation of the descended twist along (1, i)")
    rep.add("codomain length 2", g.codomain.total == 2, codomain=str(g.codomain))
    dead = [i for i in range(f.codomain.r) if i not in g.recoord.kept]
    rep.add("one dead summand", len(dead) == 1, dead=dead)
    bad = 0
    for a in sample_qi(samples, seed, "c5"):
        v = membership(g, a)
        bad += not (v.in_R and v.in_I == (not a))
    rep.add("all samples in R', I' = 0", bad == 0, samples=samples, mismatches=bad)
    return rep


def criterion_6(seed=0, samples=50) -> Report:
    f = gerald()
    a = _qt("t+1")
    rep = Report("6 gerald: wild, then tamed by mutation")
    tr = classify_tame(f, a, [0, 1, 2])
    rep.add("t+1 wild for gerald", tr.classification == "Wild" and not any(ok for *_, ok in tr.probes))
    g = mutate(f, [1, a])
    rep.add("mutated codomain (k^2, 0)", g.codomain.summands == ((FieldId.Q, 2),)
            and g.recoord.kept == (0,))
    p0, p1 = Place.at(0), Place.at(1)
    bad = 0
    for x in sample_elements(QT, samples, seed, "c6"):
        v = membership(g, x)
        v0, v1 = p0.valuation(x), p1.valuation(x)
        bad += not (v.in_R == (v0 >= 0 and v1 >= 0) and v.in_I == (v0 > 0 and v1 > 0))
    rep.add("R' = O_0 ∩ O_1, I' = m_0 ∩ m_1", bad == 0, samples=samples, mismatches=bad)
    rep.add("t+1 tame after mutation", classify_tame(g, a, [0, 1, 2]).tame)
    return rep


def mutation_pairs():
    t = _qt("t")
    return [
        ("val t=0", valuation_inflator("t=0"), [1, t], [1, t + 1]),
        ("product t=0,1", product_inflator("t=0", "t=1"), [1, t], [1, t + 1]),
        ("gerald", gerald(), [1, t + 1], [1, t]),
        ("galois_pair", builtin("galois"), [1, F.I], [1, F.I + 1]),
        ("eric", eric(), [1, F.I], [1, F.I + 1]),
        ("descend_fixed", fiona(), [1, F.I], [1, F.I + 1]),
        ("restrict_scalars", builtin("restrict"), [1, F.I], [1, F.I + 1]),
    ]


TAMING_CASES = [
    ("gerald", "t+1"),
    ("gerald", "t"),
    ("gerald", "1/(t^2-t)"),
    ("product t=0,1", "1/(t^2-t)"),
    ("product t=0,1", "t^2+1"),
    ("eric", "i"),
    ("galois_pair", "1+i"),
    ("descend_fixed", "i"),
    ("restrict_scalars", "2+i"),
]


def criterion_7(seed=0, elements=30, subspaces=20) -> Report:
    rep = Report("7 mutation laws")
    pairs = mutation_pairs()
    by_name = {}
    for name, f, l1, l2 in pairs:
        by_name[name] = f
        g = mutate(f, l1)
        samp = (sample_elements(f.source_field, elements, seed, f"c7:{name}")
                if f.source_field is QT else sample_qi(elements, seed, f"c7:{name}"))
        mono = check_monotone(f, g, samp)
        rep.add(f"monotone {name}", mono.passed, failures=len(mono.failures))
        bad = 0
        for idx in range(subspaces):
            rng = trial_rng(f"{seed}:c7:{name}", idx)
            n = rng.randint(1, 2)
            V = random_subspace(f.source_field, n, rng)
            bad += not check_iterated(f, l1, l2, V).passed
        rep.add(f"iterated {name}", bad == 0, subspaces=subspaces, failures=bad)
    for name, lit in TAMING_CASES:
        f = by_name[name]
        a = F.parse_element(f.source_field, lit)
        tr = taming_report(f, a)
        certs = [c for c in tr.checks if c.name.startswith("certificate")]
        rep.add(f"taming {name} a={lit}", tr.passed, certificates=len(certs))
    return rep


EXPECTED_RK0 = {"C3": 1, "C5": 1, "M3": 2, "N5": None, "Sub(F2^2)": 2,
                "Sub(F2^3)": 3, "Sub(F3^2)": 2, "Div(60)": 3}


def criterion_8() -> Report:
    rep = Report("8 lattice corpus")
    for name, M in LT.corpus().items():
        ok, wit = LT.is_modular(M)
        expect_mod = name != "N5"
        rep.add(f"{name} modular={ok}", ok == expect_mod and (ok or wit is not None),
                witness=None if wit is None else [M.labels[w] for w in wit])
        if not ok:
            continue
        c1, c2, c3 = LT.cube_conditions_agree(M)
        r = LT.rk0(M)
        rep.add(f"{name} rk0", r == EXPECTED_RK0[name] and c1 == c2 == c3 == r,
                rk0=r, conditions=[c1, c2, c3])
        fl = LT.flatten_report(M, name)
        rep.add(f"{name} flattening ff1-ff6", fl.passed,
                failed=[c.name for c in fl.failures])
        if M.n <= 10:
            okf, count = LT.filters_principal(M)
            rep.add(f"{name} filters principal", okf, filters=count)
    M = LT.two_place_module_lattice()
    rep.add("two-place module lattice rk0 = 2",
            LT.is_modular(M)[0] and LT.rk0(M) == 2, elements=M.n)
    return rep


HAHN_LINES = [["1", "t^(1/3)"], ["1", "t^(1/3)", "t^(5/3)"], ["1", "t+t^(1/3)"]]


def criterion_9(seed=0, samples=100) -> Report:
    rep = Report("9 Hahn endless mutation")
    for line in HAHN_LINES:
        p = H.mutated_gamma(line)
        w = H.endless_witness(p)
        rep.add(f"line ({', '.join(line)})", p.gamma == Fraction(5, 3) and w.verified,
                **w.to_json(p.gamma))
    rng = random.Random(f"{seed}:c9")
    bad = 0
    for _ in range(samples):
        x, y = H.random_R_element(rng), H.random_R_element(rng)
        bad += not (H.in_R(x) and H.in_R(y) and H.in_R(x * y) and H.in_R(x + y))
    rep.add("R closed under + and *", bad == 0, samples=samples, failures=bad)
    bad = 0
    for _ in range(samples // 2):
        s, a = H.random_R_element(rng), H.random_O_not_R(rng)
        one = Fraction(1)
        bad += not (H.in_R(s * one) and H.in_O(a) and not H.in_R(a * one))
    rep.add("Stab(R) = R on samples", bad == 0, samples=samples // 2, failures=bad)
    return rep


def criterion_10(seed=0, subspaces=100) -> Report:
    f = valuation_inflator("t=0")
    o = reconstruct_one_inflator(f)
    rep = Report("10 1-inflator rebuilt from its ring and residue map")
    bad = 0
    for idx in range(subspaces):
        rng = trial_rng(f"{seed}:c10", idx)
        n = rng.randint(1, 3)
        V = random_subspace(QT, n, rng)
        bad += o.evaluate(n, V) != f.evaluate(n, V)
    rep.add("oracle evaluator agrees", bad == 0, subspaces=subspaces, mismatches=bad)
    return rep


def eric_witness_step():
    """Y = (0, Qi·(1, i)) at level 2 over the twist codomain."""
    f = eric()
    Y = DirectoryElement(f.codomain, 2, [Subspace.zero(QI, 2), Subspace(QI, 2, [(1, F.I)])])
    return f, Y


def criterion_11(seed=0, cases=100) -> Report:
    rep = Report("11 malleability")
    for name, f in (("val t=0", valuation_inflator("t=0")), ("descend_fixed", fiona())):
        r = malleability_probe(f, trials=cases, seed=seed)
        lifted = r.count(PASS)
        rep.add(f"{name} lifts", lifted == cases, lifted=lifted, cases=cases)
    f, Y = eric_witness_step()
    v = refute_twist_step(f, Y)
    rep.add("eric witness refuted", v.refuted, reason=v.reason)
    return rep


CRITERIA = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
    11: criterion_11,
}

SUITES = {
    "morphism": [1],
    "fundamental": [2, 3, 4, 10],
    "mutation": [5, 6, 7],
    "lattice": [8],
    "hahn": [9],
    "malleability": [11],
    "all": list(range(1, 12)),
}


def run_criterion(k, seed=0, trials=None) -> Report:
    fn = CRITERIA[k]
    if k == 8:
        return fn()
    if trials is not None and k == 1:
        return fn(seed=seed, trials=trials)
    return fn(seed=seed)


def run_suite(name, seed=0, trials=None) -> Report:
    ids = SUITES[name]
    rep = Report(f"suite {name}", meta={"seed": seed, "criteria": ids})
    for k in ids:
        sub = run_criterion(k, seed, trials)
        rep.add(f"criterion {sub.name}", sub.passed,
                failed=[c.name for c in sub.failures])
        rep.extend(sub, prefix=f"[{k}] ")
    return rep

import random

import pytest

from inflatorkit import fields as F
from inflatorkit.directory import CodomainDescriptor, DirectoryElement
from inflatorkit.errors import FieldMismatch, NotALine, PreconditionError, SpecError
from inflatorkit.fields import I, FieldId, Place
from inflatorkit.fundamental import theta
from inflatorkit.inflators import (
    BUILTIN,
    Inflator,
    build,
    builtin,
    check_meet_join,
    check_morphism,
    eric,
    fiona,
    gerald,
    malleability_probe,
    plucker_valuation_image,
    refute_twist_step,
    spec_from_json,
    spec_to_json,
)
from inflatorkit.linalg import Subspace, random_subspace
from inflatorkit.report import PASS

Q, QI, QT = FieldId.Q, FieldId.QI, FieldId.QT
t = F.RatFunc.t(QT)


@pytest.mark.parametrize("tree,degree,codomain", [
    ({"type": "valuation", "place": "t=0"}, 1, ((Q, 1),)),
    ({"type": "product", "factors": [{"type": "valuation", "place": "t=0"},
                                     {"type": "valuation", "place": "t=1"}]}, 2, ((Q, 1), (Q, 1))),
    ({"type": "restrict_scalars", "extension": "Qi/Q"}, 2, ((Q, 2),)),
    ({"type": "galois_pair", "field": "Qi"}, 2, ((QI, 1), (QI, 1))),
    ({"type": "descend_fixed", "inner": {"type": "galois_pair"}}, 2, ((Q, 1), (Q, 1))),
    ({"type": "embed_residue", "inner": {"type": "valuation", "place": "t=0"}}, 1, ((QI, 1),)),
])
def test_build_degree_and_codomain(tree, degree, codomain):
    f = build(tree)
    assert f.degree == degree and f.codomain.summands == codomain


def test_valuation_theta_images():
    f = builtin("val0")
    assert f.evaluate(2, theta(t, QT)).parts[0] == Subspace(Q, 2, [(1, 0)])
    assert f.evaluate(2, theta(1 / t, QT)).parts[0] == Subspace(Q, 2, [(0, 1)])


def test_gerald_theta_twist():
    X = gerald().evaluate(2, theta(t + 1, QT))
    assert X.parts == (Subspace.full(Q, 2), Subspace.zero(Q, 2))


def test_restrict_scalars_doubles_length():
    f = builtin("restrict")
    X = f.evaluate(2, Subspace(QI, 2, [(1, I)]))
    assert X.length == 2 and X.parts[0] == Subspace(Q, 4, [(1, 0, 0, 1), (0, 1, -1, 0)])


def test_evaluate_field_mismatch():
    with pytest.raises(FieldMismatch):
        builtin("val0").evaluate(1, Subspace.full(QI, 1))


@pytest.mark.parametrize("name", sorted(BUILTIN))
def test_builtins_are_inflators(name):
    rep = check_morphism(builtin(name), trials=30, seed=1)
    assert rep.passed, [c.detail for c in rep.failures]


@pytest.mark.parametrize("name", ["val0", "gerald"])
def test_morphism_hundred_trials(name):
    assert check_morphism(builtin(name), trials=100, seed=0).passed


@pytest.mark.parametrize("name", ["val0", "product01", "gerald", "fiona", "restrict"])
def test_meet_join_side_checks(name):
    assert check_meet_join(builtin(name), trials=25, seed=3).passed


class _Broken(Inflator):
    """Right lengths, but ignores V beyond its dimension."""

    def _evaluate(self, n, V):
        rows = [[1 if c == r else 0 for c in range(n)] for r in range(V.dim)]
        return DirectoryElement(self.codomain, n, [Subspace(Q, n, rows)])


def test_broken_evaluator_is_caught():
    good = builtin("val0")
    bad = _Broken(good.spec, 1, QT, good.codomain, name="broken")
    rep = check_morphism(bad, trials=40, seed=0)
    assert not rep.passed
    assert any("gl" in c.detail.get("axioms", []) for c in rep.failures)


def test_plucker_oracle_agrees():
    rng = random.Random(99)
    places = [Place.at(0), Place.at(1), Place.at(-2), Place.infinity()]
    for idx in range(100):
        n = rng.randint(1, 3)
        V = random_subspace(QT, n, rng, complexity=2)
        p = places[idx % len(places)]
        direct = build({"type": "valuation", "place": p.to_json()}).evaluate(n, V).parts[0]
        assert plucker_valuation_image(p, V) == direct


def test_tree_json_roundtrip():
    spec = {"type": "mutate", "line": ["1", "t+1"],
            "inner": {"type": "twist", "inner": {"type": "product", "factors": [
                {"type": "valuation", "place": "t=0"}, {"type": "valuation", "place": "t=1"}]}}}
    s = spec_from_json(spec)
    assert spec_from_json(spec_to_json(s)) == s
    f = build(spec)
    assert f.codomain.summands == ((Q, 2),)


@pytest.mark.parametrize("tree,path", [
    ({"type": "nope"}, ()),
    ({"type": "valuation"}, ()),
    ({"type": "product", "factors": []}, ()),
    ({"type": "product", "factors": [{"type": "valuation", "place": "t=0"}, {"type": "galois_pair"}]},
     ("factors", 1)),
    ({"type": "twist", "inner": {"type": "valuation", "place": "t=0"}}, ("inner",)),
    ({"type": "descend_fixed", "inner": {"type": "valuation", "place": "t=0"}}, ("inner",)),
    ({"type": "mutate", "inner": {"type": "valuation", "place": "t=0"}, "line": ["1", "t^^"]}, ()),
    ({"type": "twist", "inner": {"type": "valuation", "place": 3}}, ("inner",)),
])
def test_tree_errors_carry_path(tree, path):
    with pytest.raises(SpecError) as e:
        build(tree)
    assert tuple(e.value.path) == path


def test_zero_line_rejected():
    with pytest.raises(NotALine):
        build({"type": "mutate", "inner": {"type": "valuation", "place": "t=0"}, "line": ["0", "0"]})


def test_unknown_builtin():
    with pytest.raises(SpecError):
        builtin("zeta")


@pytest.mark.parametrize("name", ["val0", "fiona"])
def test_malleability_lifts(name):
    rep = malleability_probe(builtin(name), trials=50, seed=0)
    assert rep.count(PASS) == 50


def test_refute_twist_step_examples():
    f = eric()
    cod = f.codomain
    Y = DirectoryElement(cod, 2, [Subspace.zero(QI, 2), Subspace(QI, 2, [(1, I)])])
    assert refute_twist_step(f, Y).refuted
    Y = DirectoryElement(cod, 2, [Subspace(QI, 2, [(1, 0)]), Subspace.zero(QI, 2)])
    v = refute_twist_step(f, Y)
    assert not v.refuted and v.witness == Subspace(QI, 2, [(1, 0)])
    Y = DirectoryElement(cod, 2, [Subspace.zero(QI, 2), Subspace(QI, 2, [(1, 0)])])
    v = refute_twist_step(f, Y)
    assert not v.refuted and Y <= f.evaluate(2, v.witness)
    v = refute_twist_step(f, DirectoryElement.bottom(cod, 2))
    assert not v.refuted and v.witness.dim == 0
    with pytest.raises(PreconditionError):
        refute_twist_step(fiona(), DirectoryElement.bottom(fiona().codomain, 2))


def test_descend_needs_stable_parts():
    f = build({"type": "descend_fixed", "inner": {"type": "galois_pair"}})
    X = f.evaluate(2, Subspace(QI, 2, [(1, I)]))
    assert X.parts == (Subspace.full(Q, 2), Subspace.zero(Q, 2))
    assert isinstance(f.codomain, CodomainDescriptor)

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from inflatorkit.directory import (
    CodomainDescriptor,
    DirectoryElement,
    Endo,
    Recoordinatization,
    endo_from_graph,
    recoordinatize,
)
from inflatorkit.errors import CodomainMismatch, LevelMismatch, NotContained, SingularMatrix
from inflatorkit.fields import I, FieldId
from inflatorkit.linalg import Subspace, random_subspace, random_unimodular

Q, QI = FieldId.Q, FieldId.QI
K1 = CodomainDescriptor.of((Q, 1))
K11 = CodomainDescriptor.of((Q, 1), (Q, 1))
MIXED = CodomainDescriptor.of((Q, 2), (QI, 1))


def test_length_examples():
    assert DirectoryElement.bottom(MIXED, 3).length == 0
    assert DirectoryElement.top(MIXED, 3).length == 3 * 3
    X = DirectoryElement(K11, 2, [Subspace.full(Q, 2), Subspace(Q, 2, [(1, 1)])])
    assert X.length == 3


def test_oplus_top_bottom():
    X = DirectoryElement.top(MIXED, 1).oplus(DirectoryElement.bottom(MIXED, 1))
    assert X.level == 2 and X.length == MIXED.total


def test_graph_sum():
    G0, G1 = Endo.zero(K1).graph(), Endo.identity(K1).graph()
    assert G0 + G1 == DirectoryElement.top(K1, 2)
    assert (G0 & G1).length == 0


def test_gl_action_examples():
    phi = Endo(K1, [[[3]]])
    G = phi.graph()
    assert G.gl_action([[1, 0], [0, 1]]) == G
    swapped = G.gl_action([[0, 1], [1, 0]])
    assert swapped.parts[0] == Subspace(Q, 2, [(3, 1)])
    with pytest.raises(SingularMatrix):
        G.gl_action([[0, 0], [0, 1]])


def test_mismatch_errors():
    with pytest.raises(CodomainMismatch):
        DirectoryElement.top(K1, 1) + DirectoryElement.top(K11, 1)
    with pytest.raises(LevelMismatch):
        DirectoryElement.top(K1, 1) + DirectoryElement.top(K1, 2)
    with pytest.raises(CodomainMismatch):
        DirectoryElement(K1, 2, [Subspace.full(Q, 3)])


def _random_element(cod, n, rng):
    return DirectoryElement(cod, n, [random_subspace(k, d * n, rng) for k, d in cod.summands])


@given(s=st.integers(0, 2**32))
def test_gl_action_is_lattice_automorphism(s):
    rng = random.Random(s)
    n = rng.randint(1, 3)
    X, Y = _random_element(MIXED, n, rng), _random_element(MIXED, n, rng)
    mu = random_unimodular(n, rng)
    assert (X + Y).gl_action(mu) == X.gl_action(mu) + Y.gl_action(mu)
    assert (X & Y).gl_action(mu) == X.gl_action(mu) & Y.gl_action(mu)
    assert X.gl_action(mu).length == X.length


def test_endo_graph_roundtrip():
    phi = Endo(MIXED, [[[1, 2], [3, 4]], [[1 + I]]])
    assert endo_from_graph(phi.graph()) == phi
    psi = Endo(MIXED, [[[0, 1], [1, 0]], [[I]]])
    assert (phi @ psi).apply(0, (1, 0)) == phi.apply(0, psi.apply(0, (1, 0)))


def test_recoordinatize_full_is_identity():
    top = DirectoryElement.top(K11, 2)
    R = Recoordinatization.of(top)
    X = DirectoryElement(K11, 4, [Subspace(Q, 4, [(1, 2, 3, 4)]), Subspace.full(Q, 4)])
    Y = R.apply(X)
    assert Y.level == 2 and Y.length == X.length
    assert R.expand(Y) == X


def test_recoordinatize_drops_dead_summand():
    Mp = DirectoryElement(K11, 2, [Subspace.zero(Q, 2), Subspace.full(Q, 2)])
    R = Recoordinatization.of(Mp)
    assert R.codomain.summands == ((Q, 2),)
    X = DirectoryElement(K11, 2, [Subspace.zero(Q, 2), Subspace(Q, 2, [(1, 1)])])
    assert R.apply(X).length == 1
    with pytest.raises(NotContained):
        R.apply(DirectoryElement.top(K11, 2))


def test_recoordinatize_diagonal():
    diag = Endo.identity(K1).graph()
    Y = recoordinatize(diag, diag)
    assert Y.level == 1 and Y.codomain.summands == ((Q, 1),) and Y.length == 1
    assert Y == DirectoryElement.top(Y.codomain, 1)


def test_transport_endo_on_diagonal():
    diag = Endo.identity(K1).graph()
    R = Recoordinatization.of(diag)
    assert R.transport_endo(Endo(K1, [[[5]]])) == Endo(R.codomain, [[[5]]])
    K2 = CodomainDescriptor.of((Q, 2))
    Mp = DirectoryElement(K2, 1, [Subspace(Q, 2, [(1, 0)])])
    with pytest.raises(NotContained):
        Recoordinatization.of(Mp).transport_endo(Endo(K2, [[[0, 1], [1, 0]]]))


def test_json_roundtrip(rng):
    X = _random_element(MIXED, 2, rng)
    assert DirectoryElement.from_json(X.to_json()) == X

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from inflatorkit import fields as F
from inflatorkit.errors import DimensionMismatch, NotALine, SingularMatrix
from inflatorkit.fields import FieldId
from inflatorkit.linalg import (
    Subspace,
    kron_identity,
    random_subspace,
    random_unimodular,
    rational_inverse,
    xi_line,
)

Q, QI, QT = FieldId.Q, FieldId.QI, FieldId.QT
t = F.RatFunc.t(QT)
i = F.I


def test_rref_examples():
    V = Subspace(QT, 2, [(1, t), (t, t * t)])
    assert V.dim == 1 and V.rows == ((1, t),)
    assert Subspace(Q, 3, []).dim == 0
    W = Subspace(QI, 2, [(1, i), (1, -i)])
    assert W == Subspace.full(QI, 2)


def test_sum_intersect_examples():
    V, W = Subspace(Q, 2, [(1, 0)]), Subspace(Q, 2, [(0, 1)])
    assert V + W == Subspace.full(Q, 2)
    assert (V & W).dim == 0
    V, W = Subspace(QT, 2, [(1, t)]), Subspace(QT, 2, [(1, 0)])
    assert (V & W).dim == 0 and V + W == Subspace.full(QT, 2)


def test_oplus_examples():
    assert Subspace.zero(Q, 2).oplus(Subspace.zero(Q, 1)) == Subspace.zero(Q, 3)
    assert Subspace.full(Q, 2).oplus(Subspace.full(Q, 3)) == Subspace.full(Q, 5)
    V = Subspace(QT, 2, [(1, t)]).oplus(Subspace(QT, 1, [(1,)]))
    assert V == Subspace(QT, 3, [(1, t, 0), (0, 0, 1)])


def test_apply_matrix_examples():
    V = Subspace(QT, 2, [(1, t)])
    assert V.apply_matrix([[1, 0], [0, 1]]) == V
    swapped = V.apply_matrix([[0, 1], [1, 0]])
    assert swapped.rows == ((1, 1 / t),)
    with pytest.raises(SingularMatrix):
        V.apply_matrix([[1, 1], [1, 1]])


def test_xi_examples():
    V = Subspace(QT, 2, [(1, t)])
    assert xi_line(Subspace(QT, 1, [(1,)]), 2, V) == V
    assert xi_line(Subspace(Q, 2, [(1, 0)]), 1, Subspace.full(Q, 1)) == Subspace(Q, 2, [(1, 0)])
    out = xi_line(Subspace(QI, 2, [(1, i)]), 2, Subspace(QI, 2, [(1, i)]))
    assert out == Subspace(QI, 4, [(1, i, i, -1)])
    with pytest.raises(NotALine):
        xi_line(Subspace.full(Q, 2), 1, Subspace.full(Q, 1))
    with pytest.raises(DimensionMismatch):
        xi_line(Subspace(Q, 1, [(1,)]), 3, Subspace.full(Q, 2))


seeds = st.integers(0, 2**32)


@pytest.mark.parametrize("field", [Q, QI, QT])
@given(s=seeds)
def test_modular_law_and_dimension_formula(field, s):
    rng = random.Random(s)
    n = rng.randint(1, 4)
    A, B, C = (random_subspace(field, n, rng) for _ in range(3))
    assert (A + B).dim + (A & B).dim == A.dim + B.dim
    assert A & B <= A and A <= A + B
    # modular law: A <= C implies A + (B & C) == (A + B) & C
    A = A & C
    assert A + (B & C) == (A + B) & C


@given(s=seeds)
def test_action_laws(s):
    rng = random.Random(s)
    n = rng.randint(1, 4)
    V = random_subspace(QT, n, rng)
    mu, nu = random_unimodular(n, rng), random_unimodular(n, rng)
    prod = [[sum(mu[r][k] * nu[k][c] for k in range(n)) for c in range(n)] for r in range(n)]
    assert V.apply_matrix(nu).apply_matrix(mu) == V.apply_matrix(prod)
    assert V.apply_matrix(mu).apply_matrix(rational_inverse(mu)) == V
    assert V.apply_matrix(mu).dim == V.dim


@given(s=seeds)
def test_xi_is_injective_lattice_map(s):
    rng = random.Random(s)
    n, m = rng.randint(1, 3), rng.randint(1, 3)
    L = random_subspace(QT, m, rng, dim=1)
    A, B = random_subspace(QT, n, rng), random_subspace(QT, n, rng)
    assert xi_line(L, n, A).dim == A.dim
    assert xi_line(L, n, A + B) == xi_line(L, n, A) + xi_line(L, n, B)
    assert xi_line(L, n, A & B) == xi_line(L, n, A) & xi_line(L, n, B)


def test_kron_identity_shape():
    mu = [[Fraction(1), Fraction(2)], [Fraction(0), Fraction(1)]]
    K = kron_identity(mu, 2)
    assert len(K) == 4 and K[0][2] == 2 and K[1][3] == 2 and K[0][1] == 0


def test_json_roundtrip(rng):
    for field in (Q, QI, QT, FieldId.QIT):
        V = random_subspace(field, 3, rng)
        assert Subspace.from_json(V.to_json()) == V

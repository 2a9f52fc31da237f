"""Subspaces of K^n in reduced row echelon form.

The RREF basis is the canonical representative, so two subspaces are equal
exactly when their row tuples agree.  Intersections go through annihilators
(V ∩ W = ann(ann V + ann W)), which keeps everything deterministic.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from . import fields as F
from .errors import DimensionMismatch, FieldMismatch, NotALine, SingularMatrix


def rref(rows, ncols):
    """Row reduce ``rows`` (lists of field elements).

    Returns ``(basis, pivots)`` with zero rows dropped.
    """
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = None
        for k in range(r, len(m)):
            if m[k][c]:
                p = k
                break
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        row = m[r]
        lead = row[c]
        if lead != 1:
            inv = 1 / lead
            row = [x * inv if x else x for x in row]
            m[r] = row
        for k in range(len(m)):
            if k != r:
                f = m[k][c]
                if f:
                    other = m[k]
                    m[k] = [other[j] - f * row[j] if row[j] else other[j] for j in range(ncols)]
        pivots.append(c)
        r += 1
    return [tuple(x) for x in m[:r]], pivots


class Subspace:
    """A K-subspace of K^n stored by its RREF basis."""

    __slots__ = ("field", "ambient", "rows", "pivots", "_hash")

    def __init__(self, field, ambient: int, rows: Iterable[Sequence] = (), _canonical=False):
        self.field = F.as_field_id(field)
        self.ambient = int(ambient)
        if self.ambient < 0:
            raise DimensionMismatch("negative ambient dimension")
        if _canonical:
            self.rows = tuple(rows)
            self.pivots = tuple(_lead(r) for r in self.rows)
        else:
            vecs = []
            for v in rows:
                if len(v) != self.ambient:
                    raise DimensionMismatch(f"vector of length {len(v)} in K^{self.ambient}")
                vecs.append([F.coerce(self.field, x) for x in v])
            basis, piv = rref(vecs, self.ambient)
            self.rows = tuple(basis)
            self.pivots = tuple(piv)
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, field, n):
        return cls(field, n, (), _canonical=True)

    @classmethod
    def full(cls, field, n):
        o, z = F.one(field), F.zero(field)
        return cls(field, n, [tuple(o if i == j else z for j in range(n)) for i in range(n)],
                   _canonical=True)

    @classmethod
    def line(cls, field, vec):
        return cls(field, len(vec), [vec])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field is other.field and self.ambient == other.ambient
                and self.rows == other.rows)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.ambient, self.rows))
        return self._hash

    def _compat(self, other):
        if self.field is not other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if self.ambient != other.ambient:
            raise DimensionMismatch(f"K^{self.ambient} vs K^{other.ambient}")

    def reduce(self, v):
        """Remainder of ``v`` after eliminating the pivot columns."""
        v = [F.coerce(self.field, x) for x in v]
        for row, p in zip(self.rows, self.pivots):
            f = v[p]
            if f:
                v = [a - f * b if b else a for a, b in zip(v, row)]
        return v

    def contains_vector(self, v) -> bool:
        if len(v) != self.ambient:
            raise DimensionMismatch("vector length")
        return not any(self.reduce(v))

    def coordinates(self, v):
        """Coefficients of ``v`` in the RREF basis (v must lie in the span)."""
        coeffs = [F.coerce(self.field, v[p]) for p in self.pivots]
        if any(self.reduce(v)):
            raise DimensionMismatch("vector not in subspace")
        return coeffs

    def __le__(self, other):
        self._compat(other)
        if self.dim > other.dim:
            return False
        return all(other.contains_vector(r) for r in self.rows)

    def __ge__(self, other):
        return other <= self

    def __lt__(self, other):
        return self <= other and self.dim < other.dim

    def sum(self, other):
        self._compat(other)
        if not other.rows:
            return self
        if not self.rows:
            return other
        return Subspace(self.field, self.ambient, self.rows + other.rows)

    __add__ = sum
    __or__ = sum

    def annihilator(self):
        """{w : <v, w> = 0 for all v in self} under the bilinear dot product."""
        n = self.ambient
        z, o = F.zero(self.field), F.one(self.field)
        piv = set(self.pivots)
        out = []
        for f in range(n):
            if f in piv:
                continue
            w = [z] * n
            w[f] = o
            for row, p in zip(self.rows, self.pivots):
                w[p] = -row[f]
            out.append(tuple(w))
        return Subspace(self.field, n, out)

    def intersect(self, other):
        self._compat(other)
        if self.dim == 0 or other.dim == self.ambient:
            return self
        if other.dim == 0 or self.dim == self.ambient:
            return other
        if self.rows == other.rows:
            return self
        return self.annihilator().sum(other.annihilator()).annihilator()

    __and__ = intersect

    def oplus(self, other):
        if self.field is not other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        z = F.zero(self.field)
        rows = [tuple(r) + (z,) * other.ambient for r in self.rows]
        rows += [(z,) * self.ambient + tuple(r) for r in other.rows]
        return Subspace(self.field, self.ambient + other.ambient, rows, _canonical=True)

    def apply_matrix(self, mu):
        """mu · V for a square invertible rational matrix mu."""
        n = self.ambient
        check_invertible(mu, n)
        rows = []
        for v in self.rows:
            rows.append(tuple(_dot_rational(mu[i], v, self.field) for i in range(n)))
        return Subspace(self.field, n, rows)

    def conjugate(self):
        return Subspace(self.field, self.ambient,
                        [tuple(F.conjugate(x) for x in r) for r in self.rows])

    def map_entries(self, field, fn):
        return Subspace(field, self.ambient, [tuple(fn(x) for x in r) for r in self.rows])

    def project(self, cols):
        """Image under the coordinate projection onto ``cols``."""
        return Subspace(self.field, len(cols), [tuple(r[c] for c in cols) for r in self.rows])

    def to_json(self):
        return {"field": self.field.value, "ambient": self.ambient,
                "rows": [[F.format_element(x) for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, d):
        field = F.as_field_id(d["field"])
        rows = [[F.parse_element(field, x) for x in r] for r in d.get("rows", [])]
        return cls(field, int(d["ambient"]), rows)

    def __repr__(self):
        body = "; ".join("(" + ", ".join(F.format_element(x) for x in r) + ")" for r in self.rows)
        return f"Subspace({self.field.value}^{self.ambient}: [{body}])"


def _lead(row):
    for k, x in enumerate(row):
        if x:
            return k
    raise DimensionMismatch("zero row in canonical basis")


def _dot_rational(mrow, v, field):
    acc = F.zero(field)
    for a, x in zip(mrow, v):
        if a and x:
            acc = acc + x * a
    return acc


def check_invertible(mu, n=None):
    n = len(mu) if n is None else n
    if len(mu) != n or any(len(r) != n for r in mu):
        raise DimensionMismatch(f"expected a {n}x{n} matrix")
    _, piv = rref([[Fraction(x) for x in r] for r in mu], n)
    if len(piv) != n:
        raise SingularMatrix("matrix is not invertible over Q")


def rational_inverse(mu):
    n = len(mu)
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
           for i, r in enumerate(mu)]
    basis, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(basis) < n:
        raise SingularMatrix("matrix is not invertible over Q")
    return [list(r[n:]) for r in basis]


def matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0))
             for j in range(len(b[0]))] for i in range(len(a))]


def kron_identity(mu, m):
    """mu ⊗ I_m under the layout where index (i, s) -> i*m + s."""
    n = len(mu)
    out = [[Fraction(0)] * (n * m) for _ in range(n * m)]
    for i in range(n):
        for j in range(n):
            if mu[i][j]:
                for s in range(m):
                    out[i * m + s][j * m + s] = Fraction(mu[i][j])
    return out


def xi_line(L: Subspace, n: int, V: Subspace) -> Subspace:
    """ξ^L_n(V): coordinate (i*m + s) of the image of x is a_s * x_i."""
    if L.dim != 1:
        raise NotALine(f"expected a line, got dimension {L.dim}")
    if L.field is not V.field:
        raise FieldMismatch(f"{L.field} vs {V.field}")
    if V.ambient != n:
        raise DimensionMismatch(f"V lives in K^{V.ambient}, not K^{n}")
    a = L.rows[0]
    m = L.ambient
    rows = []
    for x in V.rows:
        rows.append(tuple(a[s] * x[i] for i in range(n) for s in range(m)))
    return Subspace(V.field, n * m, rows)


def stack_oplus(parts):
    out = parts[0]
    for p in parts[1:]:
        out = out.oplus(p)
    return out


def random_subspace(field, n, rng, dim=None, complexity=1):
    """Random subspace of K^n of the requested (or random) dimension."""
    field = F.as_field_id(field)
    if dim is None:
        dim = rng.randint(0, n)
    for _ in range(50):
        rows = [[_small_entry(field, rng, complexity) for _ in range(n)] for _ in range(dim)]
        V = Subspace(field, n, rows)
        if V.dim == dim:
            return V
    raise RuntimeError("could not sample a subspace of the requested dimension")


def _small_entry(field, rng, complexity):
    if rng.random() < 0.25:
        return F.zero(field)
    return F.random_element(field, rng, complexity)


def random_unimodular(n, rng, steps=None):
    """Random invertible integer matrix from elementary operations."""
    mu = [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 1:
        return [[rng.choice((1, -1, 2, Fraction(1, 2)))]]
    for _ in range(steps if steps is not None else 2 * n + 1):
        i, j = rng.sample(range(n), 2)
        kind = rng.random()
        if kind < 0.6:
            c = rng.choice((-2, -1, 1, 2))
            mu[i] = [a + c * b for a, b in zip(mu[i], mu[j])]
        elif kind < 0.85:
            mu[i], mu[j] = mu[j], mu[i]
        else:
            mu[i] = [-a for a in mu[i]]
    return mu


def random_chain(field, n, rng):
    """A random nested pair V ⊆ W."""
    W = random_subspace(field, n, rng)
    if W.dim == 0:
        return W, W
    k = rng.randint(0, W.dim)
    coeffs = [[F.random_rational(rng) for _ in range(W.dim)] for _ in range(k)]
    rows = [tuple(sum((c * r[j] for c, r in zip(cs, W.rows)), F.zero(field))
                  for j in range(n)) for cs in coeffs]
    return Subspace(field, n, rows), W

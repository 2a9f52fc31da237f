"""Submodules of M^n for a semisimple M = k_1^{d_1} ⊕ ... ⊕ k_r^{d_r}.

A :class:`DirectoryElement` stores one subspace per summand.  Part ``i`` at
level ``n`` lives in ``k_i^{d_i * n}`` laid out as n outer blocks of d_i
coordinates, so block ``j`` is the j-th copy of the i-th summand of M.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import fields as F
from .errors import CodomainMismatch, DimensionMismatch, InternalError, LevelMismatch, NotContained
from .linalg import Subspace, check_invertible, kron_identity


@dataclass(frozen=True)
class CodomainDescriptor:
    summands: tuple  # of (FieldId, mult)

    def __post_init__(self):
        s = tuple((F.as_field_id(k), int(d)) for k, d in self.summands)
        if not s:
            raise CodomainMismatch("a codomain needs at least one summand")
        if any(d < 0 for _, d in s):
            raise CodomainMismatch("negative multiplicity")
        object.__setattr__(self, "summands", s)

    @classmethod
    def of(cls, *pairs):
        return cls(tuple(pairs))

    @property
    def total(self) -> int:
        return sum(d for _, d in self.summands)

    @property
    def r(self) -> int:
        return len(self.summands)

    def __add__(self, other):
        return CodomainDescriptor(self.summands + other.summands)

    def to_json(self):
        return [{"field": k.value, "mult": d} for k, d in self.summands]

    @classmethod
    def from_json(cls, data):
        return cls(tuple((d["field"], d["mult"]) for d in data))

    def __str__(self):
        return " + ".join(f"{k.value}^{d}" for k, d in self.summands)


class DirectoryElement:
    __slots__ = ("codomain", "level", "parts")

    def __init__(self, codomain: CodomainDescriptor, level: int, parts: Sequence[Subspace]):
        self.codomain = codomain
        self.level = int(level)
        parts = tuple(parts)
        if len(parts) != codomain.r:
            raise CodomainMismatch(f"{len(parts)} parts for {codomain.r} summands")
        for (k, d), p in zip(codomain.summands, parts):
            if p.field is not k or p.ambient != d * self.level:
                raise CodomainMismatch(
                    f"part over {p.field}^{p.ambient} does not fit {k}^{d * self.level}")
        self.parts = parts

    @classmethod
    def bottom(cls, codomain, n):
        return cls(codomain, n, [Subspace.zero(k, d * n) for k, d in codomain.summands])

    @classmethod
    def top(cls, codomain, n):
        return cls(codomain, n, [Subspace.full(k, d * n) for k, d in codomain.summands])

    @property
    def length(self) -> int:
        return sum(p.dim for p in self.parts)

    def _compat(self, other, same_level=True):
        if self.codomain != other.codomain:
            raise CodomainMismatch(f"{self.codomain} vs {other.codomain}")
        if same_level and self.level != other.level:
            raise LevelMismatch(f"level {self.level} vs {other.level}")

    def __eq__(self, other):
        if not isinstance(other, DirectoryElement):
            return NotImplemented
        return (self.codomain == other.codomain and self.level == other.level
                and self.parts == other.parts)

    def __hash__(self):
        return hash((self.codomain, self.level, self.parts))

    def __le__(self, other):
        self._compat(other)
        return all(a <= b for a, b in zip(self.parts, other.parts))

    def __ge__(self, other):
        return other <= self

    def sum(self, other):
        self._compat(other)
        return DirectoryElement(self.codomain, self.level,
                                [a.sum(b) for a, b in zip(self.parts, other.parts)])

    __add__ = sum
    __or__ = sum

    def intersect(self, other):
        self._compat(other)
        return DirectoryElement(self.codomain, self.level,
                                [a.intersect(b) for a, b in zip(self.parts, other.parts)])

    __and__ = intersect

    def oplus(self, other):
        self._compat(other, same_level=False)
        return DirectoryElement(self.codomain, self.level + other.level,
                                [a.oplus(b) for a, b in zip(self.parts, other.parts)])

    def gl_action(self, mu):
        n = self.level
        check_invertible(mu, n)
        parts = []
        for (k, d), p in zip(self.codomain.summands, self.parts):
            parts.append(p.apply_matrix(kron_identity(mu, d)) if d else p)
        return DirectoryElement(self.codomain, n, parts)

    def to_json(self):
        return {"codomain": self.codomain.to_json(), "level": self.level,
                "parts": [p.to_json() for p in self.parts]}

    @classmethod
    def from_json(cls, d):
        cod = CodomainDescriptor.from_json(d["codomain"])
        return cls(cod, d["level"], [Subspace.from_json(p) for p in d["parts"]])

    def __repr__(self):
        return (f"DirectoryElement(level={self.level}, length={self.length}, "
                f"parts={list(self.parts)!r})")


def elem_length(x: DirectoryElement) -> int:
    return x.length


# ---------------------------------------------------------------------------
# endomorphisms of M


class Endo:
    """An endomorphism of M: one d_i x d_i matrix per summand, acting on
    column vectors (phi(y) = A y)."""

    __slots__ = ("codomain", "blocks")

    def __init__(self, codomain: CodomainDescriptor, blocks):
        self.codomain = codomain
        bl = []
        for (k, d), b in zip(codomain.summands, blocks):
            if len(b) != d or any(len(r) != d for r in b):
                raise DimensionMismatch(f"block must be {d}x{d}")
            bl.append(tuple(tuple(F.coerce(k, x) for x in r) for r in b))
        if len(bl) != codomain.r:
            raise CodomainMismatch("wrong number of blocks")
        self.blocks = tuple(bl)

    @classmethod
    def scalar(cls, codomain, q):
        return cls(codomain, [[[q if i == j else 0 for j in range(d)] for i in range(d)]
                              for _, d in codomain.summands])

    @classmethod
    def zero(cls, codomain):
        return cls.scalar(codomain, 0)

    @classmethod
    def identity(cls, codomain):
        return cls.scalar(codomain, 1)

    def is_zero(self):
        return all(not x for b in self.blocks for r in b for x in r)

    def __eq__(self, other):
        return isinstance(other, Endo) and self.codomain == other.codomain and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __add__(self, other):
        return Endo(self.codomain, [[[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]
                                    for a, b in zip(self.blocks, other.blocks)])

    def compose(self, other):
        """self ∘ other."""
        out = []
        for (k, d), a, b in zip(self.codomain.summands, self.blocks, other.blocks):
            out.append([[sum((a[i][l] * b[l][j] for l in range(d)), F.zero(k))
                         for j in range(d)] for i in range(d)])
        return Endo(self.codomain, out)

    __matmul__ = compose

    def apply(self, i, y):
        """phi applied to a vector of summand i."""
        k, d = self.codomain.summands[i]
        a = self.blocks[i]
        return tuple(sum((a[r][c] * y[c] for c in range(d)), F.zero(k)) for r in range(d))

    def graph(self) -> DirectoryElement:
        """{(y, phi(y))} at level 2."""
        parts = []
        for idx, (k, d) in enumerate(self.codomain.summands):
            o, z = F.one(k), F.zero(k)
            rows = []
            for j in range(d):
                e = tuple(o if c == j else z for c in range(d))
                rows.append(e + self.apply(idx, e))
            parts.append(Subspace(k, 2 * d, rows))
        return DirectoryElement(self.codomain, 2, parts)

    def to_json(self):
        return [[[F.format_element(x) for x in r] for r in b] for b in self.blocks]

    def __repr__(self):
        return f"Endo({self.to_json()})"


def endo_from_graph(X: DirectoryElement) -> Endo:
    """Read phi off a level-2 element that is the graph of an endomorphism.

    RREF of a graph with d pivots in the first block is exactly [I | A^T].
    """
    if X.level != 2:
        raise LevelMismatch("graphs live at level 2")
    blocks = []
    for (k, d), p in zip(X.codomain.summands, X.parts):
        if p.dim != d or tuple(p.pivots) != tuple(range(d)):
            raise InternalError("element is not the graph of an endomorphism")
        blocks.append([[p.rows[j][d + i] for j in range(d)] for i in range(d)])
    return Endo(X.codomain, blocks)


# ---------------------------------------------------------------------------
# recoordinatization onto a submodule M' of M^m


@dataclass(frozen=True)
class Recoordinatization:
    """M' = Mprime (level m) viewed as a new semisimple codomain.

    ``kept`` lists the summand indices with nonzero part; the new codomain
    uses the RREF basis of each kept part.
    """

    source: CodomainDescriptor
    m: int
    bases: tuple  # per source summand: tuple of basis rows (RREF of Mprime part)
    kept: tuple
    codomain: CodomainDescriptor

    @classmethod
    def of(cls, Mprime: DirectoryElement):
        kept = tuple(i for i, p in enumerate(Mprime.parts) if p.dim > 0)
        if not kept:
            raise CodomainMismatch("M' is zero; mutation would have degree 0")
        cod = CodomainDescriptor(tuple((Mprime.codomain.summands[i][0], Mprime.parts[i].dim)
                                       for i in kept))
        return cls(Mprime.codomain, Mprime.level, tuple(p.rows for p in Mprime.parts), kept, cod)

    def _part_space(self, i):
        k, d = self.source.summands[i]
        return Subspace(k, d * self.m, self.bases[i], _canonical=True)

    def apply(self, x: DirectoryElement) -> DirectoryElement:
        if x.codomain != self.source:
            raise CodomainMismatch("element is over a different codomain")
        if x.level % self.m:
            raise LevelMismatch(f"level {x.level} is not a multiple of {self.m}")
        n = x.level // self.m
        parts = []
        for i, ((k, d), p) in enumerate(zip(self.source.summands, x.parts)):
            B = self._part_space(i)
            w = d * self.m
            if i not in self.kept:
                if p.dim:
                    raise NotContained(f"summand {i} of M' is zero but the element is not")
                continue
            rows = []
            for v in p.rows:
                new = []
                for j in range(n):
                    chunk = v[j * w:(j + 1) * w]
                    if not B.contains_vector(chunk):
                        raise NotContained(f"block {j} of summand {i} leaves M'")
                    new.extend(B.coordinates(chunk))
                rows.append(new)
            parts.append(Subspace(k, B.dim * n, rows))
        return DirectoryElement(self.codomain, n, parts)

    def expand(self, y: DirectoryElement) -> DirectoryElement:
        """Inverse of :meth:`apply`: back to a submodule of M^{m n}."""
        if y.codomain != self.codomain:
            raise CodomainMismatch("element is over a different codomain")
        n = y.level
        parts = []
        for i, (k, d) in enumerate(self.source.summands):
            w = d * self.m
            if i not in self.kept:
                parts.append(Subspace.zero(k, w * n))
                continue
            p = y.parts[self.kept.index(i)]
            basis = self.bases[i]
            dp = len(basis)
            rows = []
            for v in p.rows:
                out = []
                for j in range(n):
                    coeffs = v[j * dp:(j + 1) * dp]
                    out.extend(sum((c * b[col] for c, b in zip(coeffs, basis)), F.zero(k))
                               for col in range(w))
                rows.append(out)
            parts.append(Subspace(k, w * n, rows))
        return DirectoryElement(self.source, n * self.m, parts)

    def transport_endo(self, phi: Endo) -> Endo:
        """phi^{⊕m} restricted to M', written in the canonical basis."""
        blocks = []
        for i in self.kept:
            k, d = self.source.summands[i]
            B = self._part_space(i)
            block_cols = []
            for b in self.bases[i]:
                img = []
                for s in range(self.m):
                    img.extend(phi.apply(i, b[s * d:(s + 1) * d]))
                if not B.contains_vector(img):
                    raise NotContained("endomorphism does not preserve M'")
                block_cols.append(B.coordinates(img))
            dp = len(self.bases[i])
            blocks.append([[block_cols[c][r] for c in range(dp)] for r in range(dp)])
        return Endo(self.codomain, blocks)


def recoordinatize(Mprime: DirectoryElement, x: DirectoryElement) -> DirectoryElement:
    return Recoordinatization.of(Mprime).apply(x)

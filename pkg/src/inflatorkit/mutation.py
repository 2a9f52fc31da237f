"""Mutation of inflators along lines, and the taming machinery built on it."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import fields as F
from .errors import DegenerateProbe, FieldMismatch, NotALine
from .fundamental import classify_tame, in_R, membership
from .inflators import Inflator, Mutate, build
from .linalg import Subspace, xi_line
from .report import Report


@dataclass(frozen=True)
class Line:
    """K·(a_1, ..., a_m), generator scaled so the first nonzero entry is 1."""

    field: F.FieldId
    generator: tuple

    @classmethod
    def of(cls, field, vec):
        field = F.as_field_id(field)
        vec = [F.coerce(field, x) for x in vec]
        lead = next((x for x in vec if x), None)
        if lead is None:
            raise NotALine("the zero vector does not span a line")
        return cls(field, tuple(x / lead for x in vec))

    @classmethod
    def parse(cls, field, literals):
        return cls.of(field, [F.parse_element(field, s) for s in literals])

    @property
    def m(self) -> int:
        return len(self.generator)

    def subspace(self) -> Subspace:
        return Subspace(self.field, self.m, [self.generator])

    def tensor(self, inner: "Line") -> "Line":
        """self ⊗ inner with index r*m_inner + s holding b_r * a_s."""
        if inner.field is not self.field:
            raise FieldMismatch("lines over different fields")
        return Line.of(self.field, [b * a for b in self.generator for a in inner.generator])

    def to_json(self):
        return [F.format_element(x) for x in self.generator]


def _as_line(f: Inflator, L) -> Line:
    if isinstance(L, Line):
        return L
    if isinstance(L, Subspace):
        if L.dim != 1:
            raise NotALine(f"dimension {L.dim}")
        return Line.of(L.field, L.rows[0])
    return Line.of(f.source_field, L)


def mutate(f: Inflator, L) -> Inflator:
    """ς'_n(V) = ς_{mn}(ξ^L_n V), recoordinatized onto M' = ς_m(L)."""
    L = _as_line(f, L)
    if L.field is not f.source_field:
        raise FieldMismatch(f"line over {L.field}, inflator over {f.source_field}")
    return build(Mutate(f.spec, L.subspace()), name=f"mut[{f.name or f.spec.type}]")


def taming_line(a, d: int, field=None) -> Line:
    field = F.field_of(a) if field is None else F.as_field_id(field)
    a = F.coerce(field, a)
    gen, p = [], F.one(field)
    for _ in range(d):
        gen.append(p)
        p = p * a
    return Line.of(field, gen)


def vandermonde_certificate(f: Inflator, a, q):
    """Nonzero ε ∈ M with (ε, qε, ..., q^d ε) ∈ ς_{d+1}(K·(1, a, ..., a^d)).

    Returns ``(summand index, ε)`` or None.
    """
    d = f.degree
    K = f.source_field
    a = F.coerce(K, a)
    N = Subspace(K, d + 1, [[a ** j if j else F.one(K) for j in range(d + 1)]])
    X = f.evaluate(d + 1, N)
    q = Fraction(q)
    for i, ((k, di), part) in enumerate(zip(f.codomain.summands, X.parts)):
        if di == 0:
            continue
        o, z = F.one(k), F.zero(k)
        rows = []
        for u in range(di):
            e = [o if c == u else z for c in range(di)]
            rows.append([x * (q ** j) for j in range(d + 1) for x in e])
        E = Subspace(k, di * (d + 1), rows)
        meet = part.intersect(E)
        if meet.dim:
            return i, tuple(meet.rows[0][:di])
    return None


def verify_certificate(f: Inflator, a, q, cert) -> bool:
    if cert is None:
        return False
    i, eps = cert
    if not any(eps):
        return False
    d = f.degree
    K = f.source_field
    a = F.coerce(K, a)
    q = Fraction(q)
    N = Subspace(K, d + 1, [[a ** j if j else F.one(K) for j in range(d + 1)]])
    part = f.evaluate(d + 1, N).parts[i]
    vec = [x * (q ** j) for j in range(d + 1) for x in eps]
    return part.contains_vector(vec)


def limit_ring_probe(f: Inflator, x, qs: Sequence) -> dict:
    """Mutate along (1, x, ..., x^{d-1}) and report which of x, 1/(x - q)
    lands in the new fundamental ring."""
    K = f.source_field
    x = F.coerce(K, x)
    qs = [Fraction(q) for q in qs]
    if len(set(qs)) != len(qs):
        raise DegenerateProbe("probe values must be distinct")
    out = {"element": F.format_element(x), "degree": f.degree, "qs": [str(q) for q in qs]}
    if not x:
        out.update(line=[F.format_element(F.one(K))], hits=["self"], in_limit_ring=True)
        return out
    for q in qs:
        if x == F.coerce(K, q):
            raise DegenerateProbe(f"element equals probe value {q}")
    g = mutate(f, taming_line(x, f.degree, K))
    hits = []
    if in_R(g, x):
        hits.append("self")
    for q in qs:
        if in_R(g, 1 / (x - q)):
            hits.append(str(q))
    out.update(line=taming_line(x, f.degree, K).to_json(), hits=hits, in_limit_ring=bool(hits))
    return out


def check_iterated(f: Inflator, L1, L2, V: Subspace) -> Report:
    """Mutating along L1 then L2 agrees with one mutation along L2 ⊗ L1,
    compared inside M^{m1 m2 n} before recoordinatization."""
    L1, L2 = _as_line(f, L1), _as_line(f, L2)
    n = V.ambient
    f1 = mutate(f, L1)
    f2 = mutate(f1, L2)
    raw = f1.recoord.expand(f2.evaluate_raw(n, V))
    direct = f.evaluate(L1.m * L2.m * n, xi_line(L2.tensor(L1).subspace(), n, V))
    rep = Report("iterated-mutation", meta={"L1": L1.to_json(), "L2": L2.to_json()})
    rep.add("raw-equality", raw == direct, level=n)
    return rep


def check_monotone(f: Inflator, g: Inflator, samples) -> Report:
    """R ⊆ R' and I ⊆ I', plus transport of residue maps onto M'."""
    rep = Report(f"monotone {g.name}")
    for a in samples:
        v, w = membership(f, a), membership(g, a)
        ok = (not v.in_R or w.in_R) and (not v.in_I or w.in_I)
        if ok and v.in_R and g.recoord is not None:
            ok = g.recoord.transport_endo(v.residue_endo) == w.residue_endo
        rep.add(F.format_element(a), ok, in_R=[v.in_R, w.in_R], in_I=[v.in_I, w.in_I])
    return rep


def taming_report(f: Inflator, a, qs=None) -> Report:
    """Classify a after the taming mutation and certify every failed probe."""
    d = f.degree
    qs = list(range(d + 1)) if qs is None else list(qs)
    g = mutate(f, taming_line(a, d, f.source_field))
    tr = classify_tame(g, a, qs)
    rep = Report("taming", meta={"element": F.format_element(a), "line": taming_line(a, d, f.source_field).to_json()})
    rep.add("tame-after-mutation", tr.tame, exceptions=tr.exceptions, bound=d)
    for q, c, ok in tr.probes:
        if q == "self" or ok:
            continue
        cert = vandermonde_certificate(f, a, q)
        rep.add(f"certificate q={q}", verify_certificate(f, a, q, cert),
                summand=None if cert is None else cert[0],
                epsilon=None if cert is None else [F.format_element(x) for x in cert[1]])
    return rep

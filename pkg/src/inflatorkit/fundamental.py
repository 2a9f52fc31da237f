"""Fundamental ring and ideal, residue maps, tameness.

Everything goes through Θ_a = K·(1, a) ⊆ K^2: a is in R when ς_2(Θ_a) is the
graph of an endomorphism φ of M (no vector of the form (0, y)), and in I when
ς_2(Θ_a) ⊆ M ⊕ 0, i.e. φ = 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import fields as F
from .directory import DirectoryElement, Endo, endo_from_graph
from .errors import DegenerateProbe, InternalError, NotInRing
from .inflators import Inflator
from .linalg import Subspace
from .report import Report


def theta(a, field) -> Subspace:
    field = F.as_field_id(field)
    return Subspace(field, 2, [(F.one(field), F.coerce(field, a))])


@dataclass(frozen=True)
class MembershipVerdict:
    in_R: bool
    in_I: bool
    residue_endo: Optional[Endo] = None

    def to_json(self):
        d = {"in_R": self.in_R, "in_I": self.in_I}
        if self.residue_endo is not None:
            d["residue_endo"] = self.residue_endo.to_json()
        return d


def _is_graph(X: DirectoryElement) -> bool:
    for (_, d), p in zip(X.codomain.summands, X.parts):
        if any(pv >= d for pv in p.pivots):
            return False
    return True


def membership(f: Inflator, a) -> MembershipVerdict:
    a = F.coerce(f.source_field, a)
    X = f.evaluate(2, theta(a, f.source_field))
    if not _is_graph(X):
        return MembershipVerdict(False, False, None)
    phi = endo_from_graph(X)
    return MembershipVerdict(True, phi.is_zero(), phi)


def in_R(f: Inflator, a) -> bool:
    return membership(f, a).in_R


def in_I(f: Inflator, a) -> bool:
    return membership(f, a).in_I


def residue(f: Inflator, a) -> Endo:
    v = membership(f, a)
    if not v.in_R:
        raise NotInRing(f"{F.format_element(a)} is not in the fundamental ring")
    return v.residue_endo


def residue_compose_check(f: Inflator, a, b) -> Report:
    """res(ab) = res(a)∘res(b) and res(a+b) = res(a) + res(b)."""
    ra, rb = residue(f, a), residue(f, b)
    rab, rsum = residue(f, a * b), residue(f, a + b)
    rep = Report("residue-compose", meta={"a": F.format_element(a), "b": F.format_element(b)})
    rep.add("multiplicative", rab == ra.compose(rb))
    rep.add("additive", rsum == ra + rb)
    return rep


# ---------------------------------------------------------------------------
# tameness


@dataclass
class TameReport:
    element: object
    probes: list = field(default_factory=list)  # (label, candidate, in_R)
    classification: str = "Wild"
    exceptions: int = 0
    bound: int = 0

    @property
    def tame(self):
        return self.classification == "Tame"

    def to_json(self):
        return {
            "element": F.format_element(self.element),
            "classification": self.classification,
            "exceptions": self.exceptions,
            "bound": self.bound,
            "probes": [{"q": q if q == "self" else str(q), "candidate": F.format_element(c),
                        "in_R": ok} for q, c, ok in self.probes],
        }


def _check_qs(a, qs, field):
    qs = [Fraction(q) for q in qs]
    if len(set(qs)) != len(qs):
        raise DegenerateProbe("probe values must be distinct")
    for q in qs:
        if F.coerce(field, a) == F.coerce(field, q):
            raise DegenerateProbe(f"element equals probe value {q}")
    return qs


def classify_tame(f: Inflator, a, qs: Sequence) -> TameReport:
    """Probe a and 1/(a - q): Tame iff some probe lands in R.

    With d+1 probes this decides the dichotomy: if any member of S_a is in R
    then at most d members fail.
    """
    a = F.coerce(f.source_field, a)
    qs = _check_qs(a, qs, f.source_field)
    if len(qs) < f.degree + 1:
        raise DegenerateProbe(f"need at least d+1 = {f.degree + 1} probe values")
    rep = TameReport(a, bound=f.degree)
    rep.probes.append(("self", a, in_R(f, a)))
    fails = 0
    for q in qs:
        c = 1 / (a - q)
        ok = in_R(f, c)
        rep.probes.append((q, c, ok))
        fails += not ok
    rep.exceptions = fails
    if any(ok for _, _, ok in rep.probes):
        if fails > f.degree:
            raise InternalError(f"{fails} exceptions exceed the bound d = {f.degree}")
        rep.classification = "Tame"
    return rep


def mv_type_test(f: Inflator, samples: Sequence, qs: Sequence) -> Report:
    """For each x, one of x, 1/(x - q_1), ..., 1/(x - q_d) should lie in R.

    A failure certifies that R is not a multi-valuation ring; passing is only
    sample-limited evidence.
    """
    qs = [Fraction(q) for q in qs]
    if len(set(qs)) != len(qs) or len(qs) != f.degree:
        raise DegenerateProbe(f"need exactly d = {f.degree} distinct probe values")
    rep = Report("mv-type", meta={"qs": [str(q) for q in qs],
                                  "note": "PASS is evidence on the given samples, not a proof"})
    for x in samples:
        x = F.coerce(f.source_field, x)
        hit = None
        if in_R(f, x):
            hit = "self"
        else:
            for q in qs:
                if x == F.coerce(f.source_field, q):
                    continue
                if in_R(f, 1 / (x - q)):
                    hit = str(q)
                    break
        rep.add(F.format_element(x), hit is not None, witness_probe=hit)
    return rep


# ---------------------------------------------------------------------------
# rebuilding a 1-inflator from its ring and residue map


class OracleOneInflator(Inflator):
    """A 1-inflator reconstructed from membership and residue queries only.

    Pivots are chosen by ring comparisons: x is a valid pivot when y/x ∈ R
    for every other live entry y.  Elimination then stays inside R^n and the
    residue map of R produces the image.
    """

    def __init__(self, base: Inflator):
        if base.degree != 1:
            raise DegenerateProbe("reconstruction applies to 1-inflators")
        super().__init__(base.spec, 1, base.source_field, base.codomain,
                         name=f"oracle[{base.name or base.spec.type}]")
        self.base = base

    def _res(self, x):
        return residue(self.base, x).blocks[0][0][0]

    def _evaluate(self, n, V):
        rows = [list(r) for r in V.rows]
        todo = list(range(len(rows)))
        while todo:
            entries = [(i, c) for i in todo for c in range(n) if rows[i][c]]
            pick = None
            for i, c in entries:
                x = rows[i][c]
                if all(in_R(self.base, rows[j][e] / x) for j, e in entries):
                    pick = (i, c)
                    break
            if pick is None:
                raise InternalError("no pivot dominates the others; R is not a valuation ring")
            i, c = pick
            inv = 1 / rows[i][c]
            rows[i] = [x * inv for x in rows[i]]
            for j in range(len(rows)):
                if j != i and rows[j][c]:
                    fct = rows[j][c]
                    rows[j] = [a - fct * b for a, b in zip(rows[j], rows[i])]
            todo.remove(i)
        k = self.codomain.summands[0][0]
        res = [[self._res(x) for x in r] for r in rows]
        return DirectoryElement(self.codomain, n, [Subspace(k, n, res)])


def reconstruct_one_inflator(f: Inflator) -> OracleOneInflator:
    return OracleOneInflator(f)

"""Concrete inflator families and their evaluators.

An inflator is built from a small construction tree.  Node kinds:

``valuation``         V -> (V ∩ O^n + m^n) / m^n for a place
``embed_residue``     extend scalars of the inner codomain from Q to Qi
``restrict_scalars``  a Qi-subspace viewed as a Q-subspace of Q^{2n}
``product``           tuple of the factor images
``galois_pair``       V -> (V, σV) over Qi
``twist``             (A, B) -> (A + B, A ∩ B) componentwise
``descend_fixed``     fixed points of a conjugation-stable Qi image, as Q-spaces
``mutate``            V -> ς_{mn}(ξ^L_n V), recoordinatized onto ς_m(L)
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from dataclasses import dataclass
from typing import Any, Optional

from . import fields as F
from .directory import CodomainDescriptor, DirectoryElement, Recoordinatization
from .errors import (
    DomainError,
    FieldMismatch,
    InternalError,
    NotALine,
    PreconditionError,
    SpecError,
)
from .fields import FieldId, Place
from .linalg import (
    Subspace,
    random_chain,
    random_subspace,
    random_unimodular,
    rref,
    xi_line,
)
from .report import FAIL, INCONCLUSIVE, PASS, Report


# ---------------------------------------------------------------------------
# construction tree


@dataclass(frozen=True)
class Valuation:
    place: Place
    type = "valuation"


@dataclass(frozen=True)
class EmbedResidue:
    inner: Any
    target: FieldId = FieldId.QI
    type = "embed_residue"


@dataclass(frozen=True)
class RestrictScalars:
    extension: str = "Qi/Q"
    type = "restrict_scalars"


@dataclass(frozen=True)
class Product:
    factors: tuple
    type = "product"


@dataclass(frozen=True)
class GaloisPair:
    field: FieldId = FieldId.QI
    type = "galois_pair"


@dataclass(frozen=True)
class Twist:
    inner: Any
    type = "twist"


@dataclass(frozen=True)
class DescendFixed:
    inner: Any
    type = "descend_fixed"


@dataclass(frozen=True)
class Mutate:
    inner: Any
    line: Subspace
    type = "mutate"


_NODE_TYPES = {"valuation", "embed_residue", "restrict_scalars", "product", "galois_pair",
               "twist", "twist_sum_intersect", "descend_fixed", "mutate"}


def spec_from_json(d, path=()):
    """Parse a nested ``{"type": ...}`` description into a construction tree."""
    if not isinstance(d, dict) or "type" not in d:
        raise SpecError("node must be an object with a 'type' key", path)
    kind = d["type"]
    if kind not in _NODE_TYPES:
        raise SpecError(f"unknown node type {kind!r}", path)
    try:
        if kind == "valuation":
            p = d.get("place")
            if p is None:
                raise SpecError("valuation needs a 'place'", path)
            if isinstance(p, str):
                place = F.parse_place(p, F.as_field_id(d.get("field", "Qt")))
            elif isinstance(p, dict):
                place = Place.from_json(p)
            else:
                raise SpecError("'place' must be a string or an object", path)
            return Valuation(place)
        if kind == "embed_residue":
            return EmbedResidue(spec_from_json(d["inner"], path + ("inner",)),
                                F.as_field_id(d.get("target", "Qi")))
        if kind == "restrict_scalars":
            return RestrictScalars(d.get("extension", "Qi/Q"))
        if kind == "product":
            fs = d.get("factors")
            if not isinstance(fs, list) or not fs:
                raise SpecError("product needs a nonempty 'factors' list", path)
            return Product(tuple(spec_from_json(x, path + ("factors", i)) for i, x in enumerate(fs)))
        if kind == "galois_pair":
            return GaloisPair(F.as_field_id(d.get("field", "Qi")))
        if kind in ("twist", "twist_sum_intersect"):
            return Twist(spec_from_json(d["inner"], path + ("inner",)))
        if kind == "descend_fixed":
            return DescendFixed(spec_from_json(d["inner"], path + ("inner",)))
        inner = spec_from_json(d["inner"], path + ("inner",))
        field = _source_of(inner, path)
        vec = [F.parse_element(field, x) for x in d["line"]]
        return Mutate(inner, Subspace(field, len(vec), [vec]))
    except SpecError:
        raise
    except KeyError as e:
        raise SpecError(f"missing key {e.args[0]!r}", path) from None
    except (DomainError, FieldMismatch, ValueError, TypeError) as e:
        raise SpecError(str(e), path) from None


def spec_to_json(s):
    if isinstance(s, Valuation):
        return {"type": "valuation", "place": s.place.to_json()}
    if isinstance(s, EmbedResidue):
        return {"type": "embed_residue", "inner": spec_to_json(s.inner), "target": s.target.value}
    if isinstance(s, RestrictScalars):
        return {"type": "restrict_scalars", "extension": s.extension}
    if isinstance(s, Product):
        return {"type": "product", "factors": [spec_to_json(x) for x in s.factors]}
    if isinstance(s, GaloisPair):
        return {"type": "galois_pair", "field": s.field.value}
    if isinstance(s, Twist):
        return {"type": "twist", "inner": spec_to_json(s.inner)}
    if isinstance(s, DescendFixed):
        return {"type": "descend_fixed", "inner": spec_to_json(s.inner)}
    if isinstance(s, Mutate):
        return {"type": "mutate", "inner": spec_to_json(s.inner),
                "line": [F.format_element(x) for x in s.line.rows[0]]}
    raise TypeError(f"not a spec node: {s!r}")


def _source_of(spec, path=()):
    if isinstance(spec, Valuation):
        return spec.place.field
    if isinstance(spec, (RestrictScalars, GaloisPair)):
        return FieldId.QI
    if isinstance(spec, Product):
        return _source_of(spec.factors[0], path + ("factors", 0))
    return _source_of(spec.inner, path + ("inner",))


# ---------------------------------------------------------------------------
# inflator objects


class Inflator:
    """A built inflator: degree, source field, codomain and an evaluator."""

    def __init__(self, spec, degree, source_field, codomain, children=(), recoord=None, name=None):
        self.spec = spec
        self.degree = degree
        self.source_field = source_field
        self.codomain = codomain
        self.children = tuple(children)
        self.recoord = recoord
        self.name = name
        self._cache: dict = {}

    def __repr__(self):
        label = self.name or self.spec.type
        return f"Inflator({label}, d={self.degree}, {self.source_field.value} -> {self.codomain})"

    def evaluate(self, n: int, V: Subspace) -> DirectoryElement:
        if V.field is not self.source_field:
            raise FieldMismatch(f"inflator is over {self.source_field}, subspace over {V.field}")
        if V.ambient != n:
            raise DomainError(f"subspace lives in K^{V.ambient}, not K^{n}")
        key = (n, V)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        out = self._evaluate(n, V)
        if out.length != self.degree * V.dim:
            raise InternalError(
                f"length {out.length} != {self.degree} * {V.dim} for {self!r}")
        if len(self._cache) > 4096:
            self._cache.clear()
        self._cache[key] = out
        return out

    __call__ = evaluate

    def _evaluate(self, n, V):
        return _EVALUATORS[type(self.spec)](self, n, V)

    def evaluate_raw(self, n, V):
        """For a mutation: the image inside M^{mn} before recoordinatization."""
        if not isinstance(self.spec, Mutate):
            return self.evaluate(n, V)
        inner = self.children[0]
        return inner.evaluate(self.recoord.m * n, xi_line(self.spec.line, n, V))

    def top(self, n):
        return DirectoryElement.top(self.codomain, n)

    def bottom(self, n):
        return DirectoryElement.bottom(self.codomain, n)

    def to_json(self):
        return spec_to_json(self.spec)


def build(spec, path=(), name=None) -> Inflator:
    """Validate a construction tree and compute degree and codomain."""
    if isinstance(spec, dict):
        spec = spec_from_json(spec, path)
    if isinstance(spec, Valuation):
        k = spec.place.residue_field
        return Inflator(spec, 1, spec.place.field, CodomainDescriptor.of((k, 1)), name=name)
    if isinstance(spec, EmbedResidue):
        inner = build(spec.inner, path + ("inner",))
        if spec.target is not FieldId.QI or any(k is not FieldId.Q for k, _ in inner.codomain.summands):
            raise SpecError("embed_residue only extends Q residue fields to Qi", path)
        cod = CodomainDescriptor(tuple((FieldId.QI, d) for _, d in inner.codomain.summands))
        return Inflator(spec, inner.degree, inner.source_field, cod, [inner], name=name)
    if isinstance(spec, RestrictScalars):
        if spec.extension != "Qi/Q":
            raise SpecError(f"unsupported extension {spec.extension!r}", path)
        return Inflator(spec, 2, FieldId.QI, CodomainDescriptor.of((FieldId.Q, 2)), name=name)
    if isinstance(spec, Product):
        kids = [build(x, path + ("factors", i)) for i, x in enumerate(spec.factors)]
        src = kids[0].source_field
        for i, kid in enumerate(kids):
            if kid.source_field is not src:
                raise SpecError(f"factor over {kid.source_field}, expected {src}",
                                path + ("factors", i))
        cod = CodomainDescriptor(sum((k.codomain.summands for k in kids), ()))
        return Inflator(spec, sum(k.degree for k in kids), src, cod, kids, name=name)
    if isinstance(spec, GaloisPair):
        if spec.field is not FieldId.QI:
            raise SpecError("galois_pair is only supported over Qi", path)
        return Inflator(spec, 2, FieldId.QI,
                        CodomainDescriptor.of((FieldId.QI, 1), (FieldId.QI, 1)), name=name)
    if isinstance(spec, Twist):
        inner = build(spec.inner, path + ("inner",))
        s = inner.codomain.summands
        if len(s) != 2 or s[0] != s[1]:
            raise SpecError("twist needs two summands over one field with equal multiplicity",
                            path + ("inner",))
        return Inflator(spec, inner.degree, inner.source_field, inner.codomain, [inner], name=name)
    if isinstance(spec, DescendFixed):
        inner = build(spec.inner, path + ("inner",))
        if isinstance(spec.inner, GaloisPair):
            inner = build(Twist(spec.inner), path + ("inner",))
        if any(k is not FieldId.QI for k, _ in inner.codomain.summands):
            raise SpecError("descend_fixed needs an inner codomain over Qi", path + ("inner",))
        cod = CodomainDescriptor(tuple((FieldId.Q, d) for _, d in inner.codomain.summands))
        return Inflator(spec, inner.degree, inner.source_field, cod, [inner], name=name)
    if isinstance(spec, Mutate):
        inner = build(spec.inner, path + ("inner",))
        L = spec.line
        if L.dim != 1:
            raise NotALine(f"mutation line has dimension {L.dim}")
        if L.field is not inner.source_field:
            raise SpecError(f"line over {L.field}, inflator over {inner.source_field}", path)
        Mprime = inner.evaluate(L.ambient, L)
        rc = Recoordinatization.of(Mprime)
        return Inflator(spec, inner.degree, inner.source_field, rc.codomain, [inner], rc, name=name)
    raise SpecError(f"not a spec node: {spec!r}", path)


# ---------------------------------------------------------------------------
# evaluators


def valuation_normal_basis(place: Place, V: Subspace):
    """An O-basis of V ∩ O^n by valuation-pivoted elimination.

    Returns ``(rows, pivots)``; rows have entries in O, and the row with
    pivot column c has a 1 there and zeros in the other pivot columns.
    """
    rows = [list(r) for r in V.rows]
    vals = [[place.valuation(x) for x in r] for r in rows]
    todo = set(range(len(rows)))
    pivots = {}
    while todo:
        best = None
        for i in sorted(todo):
            for c, v in enumerate(vals[i]):
                if best is None or v < best[0]:
                    best = (v, i, c)
        _, i, c = best
        inv = 1 / rows[i][c]
        rows[i] = [x * inv if x else x for x in rows[i]]
        piv = rows[i]
        for j in range(len(rows)):
            if j != i and rows[j][c]:
                f = rows[j][c]
                rows[j] = [a - f * b if b else a for a, b in zip(rows[j], piv)]
                vals[j] = [place.valuation(x) for x in rows[j]]
        vals[i] = [place.valuation(x) for x in piv]
        todo.discard(i)
        pivots[i] = c
    order = sorted(range(len(rows)), key=lambda i: pivots[i])
    return [tuple(rows[i]) for i in order], [pivots[i] for i in order]


def _eval_valuation(f, n, V):
    place = f.spec.place
    k = place.residue_field
    rows, _ = valuation_normal_basis(place, V)
    res = [[place.residue(x) for x in r] for r in rows]
    return DirectoryElement(f.codomain, n, [Subspace(k, n, res)])


def _eval_embed(f, n, V):
    x = f.children[0].evaluate(n, V)
    parts = [p.map_entries(FieldId.QI, lambda q: F.coerce(FieldId.QI, q)) for p in x.parts]
    return DirectoryElement(f.codomain, n, parts)


def _eval_restrict(f, n, V):
    rows = []
    for r in V.rows:
        for scale in (F.Gauss(1), F.I):
            v = [x * scale for x in r]
            rows.append([c for x in v for c in (x.re, x.im)])
    return DirectoryElement(f.codomain, n, [Subspace(FieldId.Q, 2 * n, rows)])


def _eval_product(f, n, V):
    parts = []
    for kid in f.children:
        parts.extend(kid.evaluate(n, V).parts)
    return DirectoryElement(f.codomain, n, parts)


def _eval_galois(f, n, V):
    return DirectoryElement(f.codomain, n, [V, V.conjugate()])


def _eval_twist(f, n, V):
    A, B = f.children[0].evaluate(n, V).parts
    return DirectoryElement(f.codomain, n, [A.sum(B), A.intersect(B)])


def descend(P: Subspace) -> Subspace:
    """P ∩ Q^n for a conjugation-stable Qi-subspace P."""
    if P.conjugate() != P:
        raise DomainError("subspace is not stable under conjugation; it does not descend to Q")
    # the RREF of a stable subspace is fixed by conjugation, hence rational
    return Subspace(FieldId.Q, P.ambient, [[F.to_rational(x) for x in r] for r in P.rows])


def _eval_descend(f, n, V):
    x = f.children[0].evaluate(n, V)
    return DirectoryElement(f.codomain, n, [descend(p) for p in x.parts])


def _eval_mutate(f, n, V):
    return f.recoord.apply(f.evaluate_raw(n, V))


_EVALUATORS: dict = {
    Valuation: _eval_valuation,
    EmbedResidue: _eval_embed,
    RestrictScalars: _eval_restrict,
    Product: _eval_product,
    GaloisPair: _eval_galois,
    Twist: _eval_twist,
    DescendFixed: _eval_descend,
    Mutate: _eval_mutate,
}


def evaluate(f: Inflator, n: int, V: Subspace) -> DirectoryElement:
    return f.evaluate(n, V)


def plucker_valuation_image(place: Place, V: Subspace) -> Subspace:
    """Independent oracle: normalize by the minor of least valuation.

    With J the column set whose k x k minor has minimal valuation, the
    matrix B_J^{-1} B has entries in O and the identity at J, so its residue
    rows span the image.
    """
    k, n = V.dim, V.ambient
    if k == 0:
        return Subspace.zero(place.residue_field, n)
    B = V.rows
    best = None
    for J in itertools.combinations(range(n), k):
        d = _det([[B[i][j] for j in J] for i in range(k)])
        if d:
            v = place.valuation(d)
            if best is None or v < best[0]:
                best = (v, J)
    J = best[1]
    # row reduce with the J columns first, which yields B_J^{-1} B
    perm = list(J) + [c for c in range(n) if c not in J]
    red, _ = rref([[r[c] for c in perm] for r in B], n)
    A = [[None] * n for _ in range(k)]
    for i in range(k):
        for pos, c in enumerate(perm):
            A[i][c] = red[i][pos]
    return Subspace(place.residue_field, n, [[place.residue(x) for x in r] for r in A])


def _det(m):
    m = [list(r) for r in m]
    n = len(m)
    det = 1
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return 0 * det
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det = det * m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


# ---------------------------------------------------------------------------
# named examples


def valuation_inflator(place="t=0", field=FieldId.QT) -> Inflator:
    if isinstance(place, str):
        place = F.parse_place(place, field)
    return build(Valuation(place), name=f"val[{place.describe()}]")


def product_inflator(*places, field=FieldId.QT) -> Inflator:
    ps = [F.parse_place(p, field) if isinstance(p, str) else p for p in places]
    return build(Product(tuple(Valuation(p) for p in ps)), name="product")


def gerald(p1="t=0", p2="t=1") -> Inflator:
    """Twist of two independent valuations on Q(t)."""
    ps = [F.parse_place(p) for p in (p1, p2)]
    return build(Twist(Product(tuple(Valuation(p) for p in ps))), name="gerald")


def galois_pair() -> Inflator:
    return build(GaloisPair(), name="galois")


def eric() -> Inflator:
    """V -> (V + σV, V ∩ σV) over Qi, kept over Qi."""
    return build(Twist(GaloisPair()), name="eric")


def fiona() -> Inflator:
    """V -> ((V + σV) ∩ Q^n, (V ∩ σV) ∩ Q^n)."""
    return build(DescendFixed(GaloisPair()), name="fiona")


def restrict_scalars() -> Inflator:
    return build(RestrictScalars(), name="restrict")


BUILTIN: dict = {
    "val0": lambda: valuation_inflator("t=0"),
    "valinf": lambda: valuation_inflator("t=inf"),
    "val1": lambda: valuation_inflator("t=1"),
    "product01": lambda: product_inflator("t=0", "t=1"),
    "gerald": gerald,
    "galois": galois_pair,
    "eric": eric,
    "fiona": fiona,
    "restrict": restrict_scalars,
}


def builtin(name: str) -> Inflator:
    try:
        return BUILTIN[name]()
    except KeyError:
        raise SpecError(f"unknown built-in inflator {name!r}; known: {sorted(BUILTIN)}") from None


# ---------------------------------------------------------------------------
# morphism harness


def trial_rng(seed, index) -> random.Random:
    return random.Random(f"{seed}:{index}")


def check_morphism(f: Inflator, trials: int = 100, seed: int = 0, max_level: int = 3,
                   complexity: int = 1) -> Report:
    """Randomized check of order preservation, ⊕-compatibility,
    GL_n(Q)-equivariance and length scaling."""
    rep = Report(f"check-morphism {f.name or f.spec.type}",
                 meta={"seed": seed, "trials": trials, "max_level": max_level,
                       "degree": f.degree, "codomain": str(f.codomain)})
    K = f.source_field
    for lvl in range(1, max_level + 1):
        rep.add(f"bounds@{lvl}",
                f.evaluate(lvl, Subspace.zero(K, lvl)) == f.bottom(lvl)
                and f.evaluate(lvl, Subspace.full(K, lvl)) == f.top(lvl))
    bad = 0
    for idx in range(trials):
        rng = trial_rng(seed, idx)
        n = rng.randint(1, max_level)
        V, W = random_chain(K, n, rng)
        problems = []
        try:
            fV, fW = f.evaluate(n, V), f.evaluate(n, W)
            if not fV <= fW:
                problems.append("order")
            for X, fX in ((V, fV), (W, fW)):
                if fX.length != f.degree * X.dim:
                    problems.append("length")
            mu = random_unimodular(n, rng)
            if f.evaluate(n, V.apply_matrix(mu)) != fV.gl_action(mu):
                problems.append("gl")
            if max_level >= 2:
                n1 = rng.randint(1, max_level - 1)
                n2 = rng.randint(1, max_level - n1)
                A = random_subspace(K, n1, rng, complexity=complexity)
                B = random_subspace(K, n2, rng, complexity=complexity)
                if f.evaluate(n1 + n2, A.oplus(B)) != f.evaluate(n1, A).oplus(f.evaluate(n2, B)):
                    problems.append("oplus")
        except InternalError:
            problems.append("length")
        if problems:
            bad += 1
            rep.checks.append(_violation(idx, seed, problems, V, W))
    rep.add("trials", bad == 0, violations=bad, trials=trials)
    return rep


def _violation(idx, seed, problems, V, W):
    from .report import Check
    return Check(f"trial {idx}", FAIL, {"axioms": sorted(set(problems)), "seed": seed,
                                         "index": idx, "V": V.to_json(), "W": W.to_json()})


# ---------------------------------------------------------------------------
# meet/join side checks


def check_meet_join(f: Inflator, trials=50, seed=0, max_level=3) -> Report:
    """One-sided containments, plus equality whenever the length matches."""
    rep = Report(f"meet-join {f.name or f.spec.type}")
    K = f.source_field
    for idx in range(trials):
        rng = trial_rng(seed, idx)
        n = rng.randint(1, max_level)
        V, W = random_subspace(K, n, rng), random_subspace(K, n, rng)
        fV, fW = f.evaluate(n, V), f.evaluate(n, W)
        fm, fj = f.evaluate(n, V & W), f.evaluate(n, V + W)
        ok = fm <= (fV & fW) and (fV + fW) <= fj
        if (fV & fW).length == f.degree * (V & W).dim:
            ok = ok and fm == (fV & fW)
        if (fV + fW).length == f.degree * (V + W).dim:
            ok = ok and fj == (fV + fW)
        rep.add(f"trial {idx}", ok)
    return rep


# ---------------------------------------------------------------------------
# malleability


def _solve_rational(cols, target):
    """Solve sum x_j cols[j] = target over Q; None if inconsistent."""
    n = len(target)
    k = len(cols)
    aug = [[cols[j][r] for j in range(k)] + [target[r]] for r in range(n)]
    red, piv = rref(aug, k + 1)
    if k in piv:
        return None
    x = [Fraction(0)] * k
    for row, p in zip(red, piv):
        x[p] = row[k]
    return x


def _lift_candidates(f: Inflator, n, V, Z, part, y, rng):
    """Candidate vectors w ∈ Z for the lift V + K w."""
    spec = f.spec
    out = []
    if isinstance(spec, Valuation):
        place = spec.place
        basis, _ = valuation_normal_basis(place, Z)
        res = [[place.residue(x) for x in r] for r in basis]
        c = _solve_in_field(place.residue_field, res, y)
        if c is not None:
            w = [sum((place.lift(ci) * b[j] for ci, b in zip(c, basis)), F.zero(f.source_field))
                 for j in range(n)]
            out.append(w)
    if isinstance(spec, DescendFixed) and isinstance(spec.inner, GaloisPair):
        if part == 0:
            # find b ∈ Z with Re(b) = y: unknowns are re/im parts of coefficients
            cols = []
            for z in Z.rows:
                cols.append([x.re for x in z])
                cols.append([-x.im for x in z])
            sol = _solve_rational(cols, list(y))
            if sol is not None:
                w = [sum((F.Gauss(sol[2 * j], sol[2 * j + 1]) * Z.rows[j][c]
                          for j in range(Z.dim)), F.Gauss(0)) for c in range(n)]
                out.append(w)
        out.append([F.coerce(FieldId.QI, x) for x in y])
    out.extend(list(r) for r in Z.rows)
    for _ in range(6):
        coeffs = [F.random_rational(rng) for _ in Z.rows]
        out.append([sum((c * r[j] for c, r in zip(coeffs, Z.rows)), F.zero(f.source_field))
                    for j in range(n)])
    return out


def _solve_in_field(k, rows, y):
    """Coefficients c with sum c_j rows[j] = y over the residue field k."""
    m = len(rows)
    aug = [[rows[j][r] for j in range(m)] + [y[r]] for r in range(len(y))]
    aug = [[F.coerce(k, x) for x in row] for row in aug]
    red, piv = rref(aug, m + 1)
    if m in piv:
        return None
    c = [F.zero(k)] * m
    for row, p in zip(red, piv):
        c[p] = row[m]
    return c


def malleability_probe(f: Inflator, trials: int = 50, seed: int = 0, max_level: int = 3) -> Report:
    """Sampled atom-lifting check.

    For random V ⊂ Z and Y with ς(V) < Y ≤ ς(Z), ℓ(Y) = ℓ(ςV) + 1, look for
    w ∈ Z with ς(V + Kw) ≥ Y among a fixed candidate set: the residue-lift of
    y through an O-basis of Z (valuation case), a real-part solve and the
    vector y itself (descended Galois case), rows of Z and a few random
    rational combinations.  A miss is inconclusive, never a refutation.
    """
    rep = Report(f"malleable {f.name or f.spec.type}",
                 meta={"seed": seed, "trials": trials,
                       "note": "sampled probe; a full verdict quantifies over all intervals"})
    K = f.source_field
    for idx in range(trials):
        rng = trial_rng(seed, idx)
        n = rng.randint(1, max_level)
        for _ in range(20):
            V, Z = random_chain(K, n, rng)
            if Z.dim > V.dim:
                break
        else:
            Z = Subspace.full(K, n)
            V = Subspace.zero(K, n)
        fV, fZ = f.evaluate(n, V), f.evaluate(n, Z)
        grow = [i for i, (a, b) in enumerate(zip(fV.parts, fZ.parts)) if b.dim > a.dim]
        part = rng.choice(grow)
        B = fZ.parts[part]
        y = None
        for _ in range(20):
            coeffs = [F.random_rational(rng) for _ in B.rows]
            cand = [sum((c * r[j] for c, r in zip(coeffs, B.rows)), F.zero(B.field))
                    for j in range(B.ambient)]
            if not fV.parts[part].contains_vector(cand):
                y = cand
                break
        if y is None:
            y = next(list(r) for r in B.rows if not fV.parts[part].contains_vector(r))
        Yparts = list(fV.parts)
        Yparts[part] = Yparts[part].sum(Subspace(B.field, B.ambient, [y]))
        Y = DirectoryElement(f.codomain, n, Yparts)
        found = None
        for w in _lift_candidates(f, n, V, Z, part, y, rng):
            if V.contains_vector(w):
                continue
            V2 = V.sum(Subspace(K, n, [w]))
            if Y <= f.evaluate(n, V2):
                found = V2
                break
        if found is not None:
            rep.note(f"case {idx}", PASS, verdict="lifted")
        else:
            rep.note(f"case {idx}", INCONCLUSIVE, verdict="no-lift-found",
                     V=V.to_json(), Z=Z.to_json(), Y=Y.to_json())
    return rep


@dataclass
class Verdict:
    refuted: bool
    witness: Optional[Subspace] = None
    reason: str = ""

    def to_json(self):
        d = {"verdict": "Refuted" if self.refuted else "Witness", "reason": self.reason}
        if self.witness is not None:
            d["witness"] = self.witness.to_json()
        return d


def refute_twist_step(f: Inflator, Y: DirectoryElement) -> Verdict:
    """Decide whether some line L ⊆ Qi^2 has ς(L) ≥ Y for ς = twist of the
    Galois pair.  ς(L) = (L + σL, L ∩ σL).

    If Y sits in the sum slot as Qi·y, L = Qi·y works.  If Y sits in the meet
    slot as Qi·y, then L ⊇ Qi·y forces L = Qi·y and σL = L, which holds iff
    y and σy are dependent; otherwise both y and σy would lie in the line L.
    """
    if not (isinstance(f.spec, Twist) and isinstance(f.spec.inner, GaloisPair)):
        raise PreconditionError("refute_twist_step needs twist(galois_pair)")
    if Y.codomain != f.codomain or Y.level != 2:
        raise PreconditionError("Y must be a level-2 element over the twist codomain")
    if Y.length == 0:
        return Verdict(False, Subspace.zero(FieldId.QI, 2), "zero step")
    if Y.length != 1:
        raise PreconditionError("Y must have length 1")
    Y1, Y2 = Y.parts
    if Y1.dim:
        L = Subspace(FieldId.QI, 2, Y1.rows)
        reason = "y lies in L ⊆ L + σL"
    else:
        y = Y2.rows[0]
        pair = Subspace(FieldId.QI, 2, [y, tuple(F.conjugate(x) for x in y)])
        if pair.dim == 2:
            return Verdict(True, None,
                           "L ∩ σL ⊇ Qi·y forces y ∈ L and σy ∈ L; y, σy are independent, "
                           "so L would not be a line")
        L = Subspace(FieldId.QI, 2, [y])
        reason = "Qi·y is conjugation-stable"
    if not Y <= f.evaluate(2, L):
        raise InternalError("constructed witness does not dominate Y")
    return Verdict(False, L, reason)

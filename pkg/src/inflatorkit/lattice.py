"""Finite bounded lattices: modularity, strict cubes, flattening.

Elements are ``0..N-1``.  ``leq[a][b]`` is the order; meet and join tables
are filled in at load time and every query afterwards is a table lookup.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Optional, Sequence

from .errors import NotALattice, NotModular
from .report import Report


class FiniteLattice:
    def __init__(self, leq, labels=None):
        n = len(leq)
        self.n = n
        self.leq = [list(map(bool, r)) for r in leq]
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        self._validate()

    # construction
    @classmethod
    def from_covers(cls, n: int, covers, labels=None):
        up = [[False] * n for _ in range(n)]
        for i in range(n):
            up[i][i] = True
        for lo, hi in covers:
            if not (0 <= lo < n and 0 <= hi < n):
                raise NotALattice(f"cover ({lo}, {hi}) out of range")
            if lo == hi:
                raise NotALattice("cycle", (lo, hi))
            up[lo][hi] = True
        for k in range(n):
            for i in range(n):
                if up[i][k]:
                    row_k = up[k]
                    row_i = up[i]
                    for j in range(n):
                        if row_k[j]:
                            row_i[j] = True
        for i in range(n):
            for j in range(i + 1, n):
                if up[i][j] and up[j][i]:
                    raise NotALattice("cycle in cover relation", (i, j))
        return cls(up, labels)

    @classmethod
    def from_order(cls, elements: Sequence, leq: Callable, labels=None):
        els = list(elements)
        table = [[bool(leq(a, b)) for b in els] for a in els]
        return cls(table, labels if labels is not None else [str(e) for e in els])

    @classmethod
    def from_json(cls, d):
        return cls.from_covers(int(d["elements"]), [tuple(c) for c in d.get("covers", [])],
                               d.get("labels"))

    def to_json(self):
        return {"elements": self.n, "covers": [list(c) for c in self.covers()],
                "labels": self.labels}

    def _validate(self):
        n = self.n
        if n == 0:
            raise NotALattice("empty poset")
        leq = self.leq
        for i in range(n):
            if not leq[i][i]:
                raise NotALattice("order is not reflexive", (i, i))
            for j in range(n):
                if i != j and leq[i][j] and leq[j][i]:
                    raise NotALattice("order is not antisymmetric", (i, j))
        bots = [i for i in range(n) if all(leq[i][j] for j in range(n))]
        tops = [i for i in range(n) if all(leq[j][i] for j in range(n))]
        if len(bots) != 1:
            mins = [i for i in range(n) if not any(leq[j][i] for j in range(n) if j != i)]
            raise NotALattice("no unique bottom", tuple(mins[:2]))
        if len(tops) != 1:
            maxs = [i for i in range(n) if not any(leq[i][j] for j in range(n) if j != i)]
            raise NotALattice("no unique top", tuple(maxs[:2]))
        self.bot, self.top = bots[0], tops[0]
        self.meet_t = [[0] * n for _ in range(n)]
        self.join_t = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                lows = [c for c in range(n) if leq[c][a] and leq[c][b]]
                m = [c for c in lows if all(leq[d][c] for d in lows)]
                highs = [c for c in range(n) if leq[a][c] and leq[b][c]]
                j = [c for c in highs if all(leq[c][d] for d in highs)]
                if len(m) != 1:
                    raise NotALattice("missing meet", (a, b))
                if len(j) != 1:
                    raise NotALattice("missing join", (a, b))
                self.meet_t[a][b] = self.meet_t[b][a] = m[0]
                self.join_t[a][b] = self.join_t[b][a] = j[0]
        self.height = self._heights()

    def _heights(self):
        h = [0] * self.n
        order = sorted(range(self.n), key=lambda x: sum(self.leq[y][x] for y in range(self.n)))
        for x in order:
            below = [y for y in range(self.n) if y != x and self.leq[y][x]]
            h[x] = max((h[y] + 1 for y in below), default=0)
        return h

    # basic queries
    def meet(self, *xs):
        return reduce(lambda a, b: self.meet_t[a][b], xs, self.top)

    def join(self, *xs):
        return reduce(lambda a, b: self.join_t[a][b], xs, self.bot)

    def le(self, a, b):
        return self.leq[a][b]

    def lt(self, a, b):
        return a != b and self.leq[a][b]

    def covers(self):
        out = []
        for a in range(self.n):
            for b in range(self.n):
                if self.lt(a, b) and not any(self.lt(a, c) and self.lt(c, b) for c in range(self.n)):
                    out.append((a, b))
        return out

    def atoms(self):
        return [a for a in range(self.n) if a != self.bot
                and not any(self.lt(self.bot, c) and self.lt(c, a) for c in range(self.n))]

    @property
    def length(self):
        return self.height[self.top]

    def interval(self, lo, hi):
        return [x for x in range(self.n) if self.leq[lo][x] and self.leq[x][hi]]

    def sublattice(self, elements):
        els = list(elements)
        return FiniteLattice([[self.leq[a][b] for b in els] for a in els],
                             [self.labels[a] for a in els])


# ---------------------------------------------------------------------------
# corpus


def chain(k: int) -> FiniteLattice:
    return FiniteLattice.from_covers(k, [(i, i + 1) for i in range(k - 1)])


def m3() -> FiniteLattice:
    return FiniteLattice.from_covers(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
                                     ["0", "a", "b", "c", "1"])


def n5() -> FiniteLattice:
    return FiniteLattice.from_covers(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)],
                                     ["0", "a", "b", "c", "1"])


def subspace_lattice(p: int, dim: int) -> FiniteLattice:
    """All subspaces of F_p^dim, ordered by inclusion."""
    vecs = list(itertools.product(range(p), repeat=dim))
    zero = tuple([0] * dim)
    found = {frozenset([zero])}
    frontier = list(found)
    while frontier:
        nxt = []
        for S in frontier:
            for v in vecs:
                if v in S:
                    continue
                T = frozenset(tuple((s[i] + c * v[i]) % p for i in range(dim))
                              for s in S for c in range(p))
                if T not in found:
                    found.add(T)
                    nxt.append(T)
        frontier = nxt
    els = sorted(found, key=lambda S: (len(S), sorted(S)))
    labels = ["<" + ",".join("".join(map(str, v)) for v in sorted(S) if v != zero) + ">" for S in els]
    return FiniteLattice.from_order(els, lambda a, b: a <= b, labels)


def divisor_lattice(n: int) -> FiniteLattice:
    ds = [d for d in range(1, n + 1) if n % d == 0]
    return FiniteLattice.from_order(ds, lambda a, b: b % a == 0)


def corpus() -> dict:
    return {
        "C3": chain(3),
        "C5": chain(5),
        "M3": m3(),
        "N5": n5(),
        "Sub(F2^2)": subspace_lattice(2, 2),
        "Sub(F2^3)": subspace_lattice(2, 3),
        "Sub(F3^2)": subspace_lattice(3, 2),
        "Div(60)": divisor_lattice(60),
    }


# ---------------------------------------------------------------------------
# modularity


def is_modular(M: FiniteLattice):
    """Exhaustive check of a ≤ c ⇒ a ∨ (b ∧ c) = (a ∨ b) ∧ c.

    Returns ``(True, None)`` or ``(False, (a, b, c))``.
    """
    for a in range(M.n):
        for c in range(M.n):
            if not M.leq[a][c]:
                continue
            for b in range(M.n):
                if M.join_t[a][M.meet_t[b][c]] != M.meet_t[M.join_t[a][b]][c]:
                    return False, (a, b, c)
    return True, None


def _require_modular(M):
    ok, w = is_modular(M)
    if not ok:
        raise NotModular(f"modular law fails at {w}")


# ---------------------------------------------------------------------------
# strict cubes


def _max_irredundant(M: FiniteLattice, op, unit):
    """Largest n with a_1..a_n whose op-combination drops when any a_i is
    removed.  Irredundant families are closed under taking subfamilies, so a
    depth-first extension search is complete.  Returns (n, witness)."""
    n_el = M.n
    best = [0, ()]
    bound = M.length

    def combine(xs):
        return reduce(op, xs, unit)

    def irredundant(seq):
        full = combine(seq)
        return all(combine(seq[:i] + seq[i + 1:]) != full for i in range(len(seq)))

    def dfs(seq, start):
        if len(seq) > best[0]:
            best[0], best[1] = len(seq), tuple(seq)
        if best[0] >= bound:
            return
        for x in range(start, n_el):
            if len(seq) + (n_el - x) <= best[0]:
                return
            cand = seq + [x]
            if irredundant(cand):
                dfs(cand, x + 1)
                if best[0] >= bound:
                    return

    dfs([], 0)
    return best[0], best[1]


def rk0_meets(M: FiniteLattice):
    """Condition (3): irredundant meets (empty meet = top)."""
    return _max_irredundant(M, lambda a, b: M.meet_t[a][b], M.top)


def rk0_joins(M: FiniteLattice):
    """Condition (2): irredundant joins (empty join = bottom)."""
    return _max_irredundant(M, lambda a, b: M.join_t[a][b], M.bot)


def _is_cube(M, base, gens):
    """Does S ↦ base ∨ ⋁_{i∈S} gens_i define an injective lattice hom?"""
    k = len(gens)
    img = {}
    for mask in range(1 << k):
        img[mask] = M.join(base, *[g for i, g in enumerate(gens) if mask >> i & 1])
    if len(set(img.values())) != 1 << k:
        return False
    for s in range(1 << k):
        for t in range(s + 1, 1 << k):
            if M.meet_t[img[s]][img[t]] != img[s & t]:
                return False
    return True


def rk0_cubes(M: FiniteLattice, base: Optional[int] = None):
    """Condition (1): search strict cubes directly.  Sub-cubes of a cube are
    cubes, so extending generator lists one at a time is complete."""
    best = [0, None]
    bases = range(M.n) if base is None else [base]
    for c in bases:
        above = [x for x in range(M.n) if M.lt(c, x)]
        if M.n > 1 and best[0] == 0 and above:
            best[0], best[1] = 1, (c, (above[0],))

        def dfs(gens, start):
            if len(gens) > best[0]:
                best[0], best[1] = len(gens), (c, tuple(gens))
            for idx in range(start, len(above)):
                if len(gens) + len(above) - idx <= best[0]:
                    return
                g = gens + [above[idx]]
                if _is_cube(M, c, g):
                    dfs(g, idx + 1)

        dfs([], 0)
    return best[0], best[1]


def rk0(M: FiniteLattice) -> int:
    _require_modular(M)
    return rk0_meets(M)[0]


def rk_bot(M: FiniteLattice) -> int:
    """Largest independent family of atoms (a strict cube with base ⊥)."""
    _require_modular(M)
    return _independent_atoms(M)[0]


def _independent_atoms(M):
    atoms = M.atoms()
    best = [0, ()]

    def dfs(seq, j, start):
        if len(seq) > best[0]:
            best[0], best[1] = len(seq), tuple(seq)
        for idx in range(start, len(atoms)):
            a = atoms[idx]
            if M.meet_t[j][a] == M.bot:
                dfs(seq + [a], M.join_t[j][a], idx + 1)

    dfs([], M.bot, 0)
    return best[0], best[1]


# ---------------------------------------------------------------------------
# quasi-atoms and flattening


def quasi_atoms(M: FiniteLattice):
    """q > ⊥ with (⊥, q] closed under meets, straight from the definition."""
    out = []
    for q in range(M.n):
        if q == M.bot:
            continue
        lower = [x for x in range(M.n) if x != M.bot and M.leq[x][q]]
        if all(M.meet_t[x][y] != M.bot for x in lower for y in lower):
            out.append(q)
    return out


@dataclass
class FlatteningResult:
    quasi_atoms: list
    classes: dict  # atom -> list of quasi-atoms
    socle: int
    flat_lattice: FiniteLattice
    flat_elements: list
    map: list  # element -> element of [⊥, s]

    def to_json(self, M: FiniteLattice):
        lab = M.labels
        return {
            "quasi_atoms": [lab[q] for q in self.quasi_atoms],
            "classes": {lab[a]: [lab[q] for q in qs] for a, qs in self.classes.items()},
            "socle": lab[self.socle],
            "flat_elements": [lab[x] for x in self.flat_elements],
            "map": {lab[x]: lab[y] for x, y in enumerate(self.map)},
        }


def flatten(M: FiniteLattice) -> FlatteningResult:
    _require_modular(M)
    atoms = M.atoms()
    s = M.join(*atoms)
    qa = quasi_atoms(M)
    classes: dict = {a: [] for a in atoms}
    for q in qa:
        below = [a for a in atoms if M.leq[a][q]]
        if len(below) != 1:
            raise NotModular(f"quasi-atom {q} has {len(below)} atoms below it")
        classes[below[0]].append(q)
    flat_els = M.interval(M.bot, s)
    mp = [M.meet_t[x][s] for x in range(M.n)]
    return FlatteningResult(qa, classes, s, M.sublattice(flat_els), flat_els, mp)


def _complemented(L: FiniteLattice):
    return all(any(L.meet_t[x][y] == L.bot and L.join_t[x][y] == L.top for y in range(L.n))
               for x in range(L.n))


def flatten_report(M: FiniteLattice, name="") -> Report:
    """Properties ff1..ff6, the socle description and the class bijection."""
    rep = Report(f"flatten {name}".strip())
    fr = flatten(M)
    mp = fr.map
    flat = set(fr.flat_elements)
    rb = rk_bot(M)
    rep.add("ff1 semisimple of length rk_bot",
            _complemented(fr.flat_lattice) and fr.flat_lattice.length == rb,
            length=fr.flat_lattice.length, rk_bot=rb)
    rep.add("ff2 surjective", set(mp) == flat)
    rep.add("ff3 monotone", all(M.leq[mp[x]][mp[y]] for x in range(M.n) for y in range(M.n)
                                if M.leq[x][y]))
    rep.add("ff4 meets", all(mp[M.meet_t[x][y]] == M.meet_t[mp[x]][mp[y]]
                             for x in range(M.n) for y in range(M.n)))
    rep.add("ff5 joins", all(M.leq[M.join_t[mp[x]][mp[y]]][mp[M.join_t[x][y]]]
                             for x in range(M.n) for y in range(M.n)))
    rep.add("ff6 nonzero", all((x != M.bot) == (mp[x] != M.bot) for x in range(M.n)))
    atoms = M.atoms()
    alt = [M.join(*[a for a in atoms if M.leq[a][x]]) for x in range(M.n)]
    rep.add("socle form", alt == mp)
    direct = [q for q in range(M.n) if q != M.bot
              and sum(1 for a in atoms if M.leq[a][q]) == 1]
    rep.add("quasi-atoms by atom count", direct == fr.quasi_atoms)
    flat_atoms = fr.flat_lattice.atoms()
    rep.add("classes biject with atoms",
            sorted(fr.flat_elements[a] for a in flat_atoms) == sorted(fr.classes)
            and all(fr.classes[a] for a in fr.classes))
    return rep


def filters_principal(M: FiniteLattice):
    """Every nonempty meet-closed up-set equals ↑(its meet).  Exhaustive over
    subsets, so only for small N.  Returns (ok, number of filters)."""
    count = 0
    for mask in range(1, 1 << M.n):
        S = [x for x in range(M.n) if mask >> x & 1]
        if any(not (mask >> y & 1) for x in S for y in range(M.n) if M.leq[x][y]):
            continue
        if any(not (mask >> M.meet_t[x][y] & 1) for x in S for y in S):
            continue
        count += 1
        m = M.meet(*S)
        if set(S) != {y for y in range(M.n) if M.leq[m][y]}:
            return False, count
    return True, count


def cube_conditions_agree(M: FiniteLattice):
    """Maxima for conditions (1), (2), (3); the three should coincide."""
    return rk0_cubes(M)[0], rk0_joins(M)[0], rk0_meets(M)[0]


# ---------------------------------------------------------------------------
# R-submodules of Q(t) for R = O_0 ∩ O_1


NEG_INF = float("-inf")


def two_place_module_lattice():
    """Sublattice of R-submodules of Q(t) generated by O_0, O_1, m_0, m_1, K
    and 0, where R = O_0 ∩ O_1.

    A generated module is {x : val_0(x) ≥ c_0, val_1(x) ≥ c_1} with c_i in
    {-inf, 0, 1}, or 0.  Meet takes the larger bounds, join the smaller ones
    (approximation for two independent valuations).  The order is read off
    membership of a finite probe family t^a (t-1)^b.
    """
    from . import fields as F

    t = F.RatFunc.t(F.FieldId.QT)
    probes = [t ** a * (t - 1) ** b for a in range(-1, 3) for b in range(-1, 3)]
    p0, p1 = F.Place.at(0), F.Place.at(1)
    ZERO = "0"

    def meet(x, y):
        if ZERO in (x, y):
            return ZERO
        return (max(x[0], y[0]), max(x[1], y[1]))

    def join(x, y):
        if x == ZERO:
            return y
        if y == ZERO:
            return x
        return (min(x[0], y[0]), min(x[1], y[1]))

    gens = [(0, NEG_INF), (NEG_INF, 0), (1, NEG_INF), (NEG_INF, 1), (NEG_INF, NEG_INF), ZERO]
    els = set(gens)
    while True:
        new = {op(a, b) for a in els for b in els for op in (meet, join)} - els
        if not new:
            break
        els |= new

    def members(x):
        if x == ZERO:
            return frozenset()
        return frozenset(i for i, p in enumerate(probes)
                         if p0.valuation(p) >= x[0] and p1.valuation(p) >= x[1])

    def label(x):
        if x == ZERO:
            return "0"
        names = {NEG_INF: "K", 0: "O", 1: "m"}
        return f"{names[x[0]]}0∩{names[x[1]]}1"

    order = sorted(els, key=lambda x: (x != ZERO, x if x != ZERO else ()))
    sets = {x: members(x) for x in order}
    if len(set(sets.values())) != len(order):
        raise NotALattice("probe family does not separate the generated modules")
    return FiniteLattice.from_order(order, lambda a, b: sets[a] <= sets[b],
                                    [label(x) for x in order])

"""Exact arithmetic for Q and the supported extension fields.

Field elements:

* ``Q``    -- :class:`fractions.Fraction` (plain ``int`` is accepted on input)
* ``Qi``   -- :class:`Gauss`, a pair of rationals ``re + im*i``
* ``Qt``   -- :class:`RatFunc` with rational coefficients
* ``Qit``  -- :class:`RatFunc` with :class:`Gauss` coefficients
* ``Hahn`` -- :class:`Hahn`, finitely supported series over Q with exponents
  in Z[1/3]

Rationals (the small field K0) mix freely with every field; mixing two
different big fields raises :class:`FieldMismatch`.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .errors import (
    DivisionByZero,
    DomainError,
    FieldMismatch,
    HahnUnsupportedInverse,
    LiteralSyntaxError,
    NegativeValuation,
)

INF = math.inf


class FieldId(str, enum.Enum):
    Q = "Q"
    QI = "Qi"
    QT = "Qt"
    QIT = "Qit"
    HAHN = "Hahn"

    def __str__(self):
        return self.value


def as_field_id(f) -> FieldId:
    if isinstance(f, FieldId):
        return f
    try:
        return FieldId(f)
    except ValueError:
        raise DomainError(f"unknown field {f!r}") from None


_RATIONAL = (int, Fraction)


class FieldElement:
    """Marker base class for elements of the non-rational fields."""

    __slots__ = ()
    field: FieldId


# ---------------------------------------------------------------------------
# Q(i)


class Gauss(FieldElement):
    __slots__ = ("re", "im")
    field = FieldId.QI

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, Gauss):
            return other
        if isinstance(other, _RATIONAL):
            return Gauss(other, 0)
        if isinstance(other, FieldElement):
            raise FieldMismatch(f"cannot combine Qi with {other.field}")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Gauss(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Gauss(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, _RATIONAL):
            return Gauss(self.re * other, self.im * other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Gauss(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise DivisionByZero("inverse of 0 in Qi")
        return Gauss(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, _RATIONAL):
            if other == 0:
                raise DivisionByZero("division by 0 in Qi")
            return Gauss(self.re / other, self.im / other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return Gauss(-self.re, -self.im)

    def __pos__(self):
        return self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, Gauss):
            return self.re == other.re and self.im == other.im
        if isinstance(other, _RATIONAL):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def conjugate(self):
        return Gauss(self.re, -self.im)

    def is_rational(self):
        return self.im == 0

    def __repr__(self):
        return f"Gauss({format_element(self)!r})"

    def __str__(self):
        return format_element(self)


I = Gauss(0, 1)


# ---------------------------------------------------------------------------
# dense univariate polynomials, coefficients low -> high, no trailing zeros


def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, c in enumerate(b):
        out[k] = out[k] + c
    return _trim(out)


def _psub(a, b):
    n = max(len(a), len(b))
    out = []
    for k in range(n):
        x = a[k] if k < len(a) else 0
        y = b[k] if k < len(b) else 0
        out.append(x - y)
    return _trim(out)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = out[i + j] + x * y
    return _trim(out)


def _pscale(a, c):
    if not c:
        return ()
    return _trim([x * c for x in a])


def _pdivmod(a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    lc = b[-1]
    if len(a) - 1 < db:
        return (), _trim(a)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if not c:
            continue
        c = c / lc
        q[k - db] = c
        for j in range(db + 1):
            a[k - db + j] = a[k - db + j] - c * b[j]
    return _trim(q), _trim(a[:db])


def _pmonic(a):
    if not a:
        return a
    lc = a[-1]
    if lc == 1:
        return a
    return tuple(x / lc for x in a)


def _pgcd(a, b):
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    return _pmonic(a)


def _peval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _ord_at(p, c):
    """Multiplicity of the root ``c`` in ``p`` (p nonzero)."""
    k = 0
    p = list(p)
    while True:
        # synthetic division by (t - c)
        n = len(p) - 1
        if n < 1:
            return k
        q = [0] * n
        acc = 0
        for j in range(n, 0, -1):
            acc = acc * c + p[j]
            q[j - 1] = acc
        rem = acc * c + p[0]
        if rem:
            return k
        k += 1
        p = q


# ---------------------------------------------------------------------------
# Q(t) and Q(i)(t)


class RatFunc(FieldElement):
    """A reduced ratio num/den with monic denominator."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field, num, den, _reduced=False):
        self.field = field
        if not _reduced:
            num, den = _trim(num), _trim(den)
            if not den:
                raise DivisionByZero("zero denominator")
            if not num:
                num, den = (), (_one_coeff(field),)
            else:
                g = _pgcd(num, den)
                if len(g) > 1:
                    num, _ = _pdivmod(num, g)
                    den, _ = _pdivmod(den, g)
                lc = den[-1]
                if lc != 1:
                    num = tuple(x / lc for x in num)
                    den = tuple(x / lc for x in den)
            num = tuple(_canon_coeff(field, c) for c in num)
            den = tuple(_canon_coeff(field, c) for c in den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def const(cls, field, c):
        c = _canon_coeff(field, c)
        if not c:
            return cls(field, (), (_one_coeff(field),), _reduced=True)
        return cls(field, (c,), (_one_coeff(field),), _reduced=True)

    @classmethod
    def t(cls, field):
        z, o = _canon_coeff(field, 0), _one_coeff(field)
        return cls(field, (z, o), (o,), _reduced=True)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.field is not self.field:
                raise FieldMismatch(f"cannot combine {self.field} with {other.field}")
            return other
        if isinstance(other, _RATIONAL):
            return RatFunc.const(self.field, other)
        if isinstance(other, Gauss):
            if self.field is FieldId.QIT:
                return RatFunc.const(self.field, other)
            raise FieldMismatch(f"cannot combine {self.field} with Qi")
        if isinstance(other, FieldElement):
            raise FieldMismatch(f"cannot combine {self.field} with {other.field}")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            return RatFunc(self.field, _padd(self.num, o.num), self.den)
        return RatFunc(
            self.field,
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
            _pmul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, tuple(-c for c in self.num), self.den, _reduced=True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, _RATIONAL):
            if not other:
                return RatFunc.const(self.field, 0)
            return RatFunc(self.field, tuple(_canon_coeff(self.field, c * other) for c in self.num),
                           self.den, _reduced=True)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return RatFunc.const(self.field, 0)
        # cross-cancel before multiplying to keep degrees small
        g1 = _pgcd(self.num, o.den)
        g2 = _pgcd(o.num, self.den)
        n1, d2 = self.num, o.den
        if len(g1) > 1:
            n1 = _pdivmod(n1, g1)[0]
            d2 = _pdivmod(d2, g1)[0]
        n2, d1 = o.num, self.den
        if len(g2) > 1:
            n2 = _pdivmod(n2, g2)[0]
            d1 = _pdivmod(d1, g2)[0]
        num = _pmul(n1, n2)
        den = _pmul(d1, d2)
        lc = den[-1]
        if lc != 1:
            num = tuple(x / lc for x in num)
            den = tuple(x / lc for x in den)
        return RatFunc(self.field, tuple(_canon_coeff(self.field, c) for c in num),
                       tuple(_canon_coeff(self.field, c) for c in den), _reduced=True)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero(f"inverse of 0 in {self.field}")
        return RatFunc(self.field, self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            raise DomainError("rational functions only take integer powers")
        if k < 0:
            return self.inverse() ** (-k)
        out = RatFunc.const(self.field, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.field is other.field and self.num == other.num and self.den == other.den
        if isinstance(other, _RATIONAL) or (isinstance(other, Gauss) and self.field is FieldId.QIT):
            if len(self.den) != 1:
                return False
            if not other:
                return not self.num
            return len(self.num) == 1 and self.num[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if len(self.den) == 1 and len(self.num) <= 1:
                self._hash = hash(self.num[0]) if self.num else 0
            else:
                self._hash = hash((self.field, self.num, self.den))
        return self._hash

    def conjugate(self):
        if self.field is not FieldId.QIT:
            return self
        return RatFunc(self.field, tuple(c.conjugate() for c in self.num),
                       tuple(c.conjugate() for c in self.den), _reduced=True)

    def constant_value(self):
        """The value as a constant, or None when t actually occurs."""
        if len(self.den) == 1 and len(self.num) <= 1:
            return self.num[0] if self.num else _canon_coeff(self.field, 0)
        return None

    def __repr__(self):
        return f"RatFunc({self.field.value}, {format_element(self)!r})"

    def __str__(self):
        return format_element(self)


def _canon_coeff(field, c):
    if field is FieldId.QIT:
        return c if isinstance(c, Gauss) else Gauss(c, 0)
    if isinstance(c, Gauss):
        if c.im:
            raise FieldMismatch("i is not in Qt")
        return c.re
    return Fraction(c)


def _one_coeff(field):
    return Gauss(1, 0) if field is FieldId.QIT else Fraction(1)


# ---------------------------------------------------------------------------
# Hahn series Q((t^Γ)), Γ = Z[1/3], finite support only


def _check_hahn_exponent(e):
    e = Fraction(e)
    d = e.denominator
    while d % 3 == 0:
        d //= 3
    if d != 1:
        raise DomainError(f"exponent {e} is not in Z[1/3]")
    return e


class Hahn(FieldElement):
    __slots__ = ("terms",)
    field = FieldId.HAHN

    def __init__(self, terms=()):
        acc: dict = {}
        for e, c in terms:
            e = _check_hahn_exponent(e)
            acc[e] = acc.get(e, 0) + Fraction(c)
        self.terms = tuple(sorted((e, c) for e, c in acc.items() if c))

    @classmethod
    def _raw(cls, terms):
        h = cls.__new__(cls)
        h.terms = terms
        return h

    @classmethod
    def monomial(cls, c, e):
        return cls([(e, c)])

    @staticmethod
    def _coerce(other):
        if isinstance(other, Hahn):
            return other
        if isinstance(other, _RATIONAL):
            return Hahn([(0, other)])
        if isinstance(other, FieldElement):
            raise FieldMismatch(f"cannot combine Hahn with {other.field}")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Hahn(self.terms + o.terms)

    __radd__ = __add__

    def __neg__(self):
        return Hahn._raw(tuple((e, -c) for e, c in self.terms))

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Hahn((e1 + e2, c1 * c2) for e1, c1 in self.terms for e2, c2 in o.terms)

    __rmul__ = __mul__

    def is_monomial(self):
        return len(self.terms) == 1

    def inverse(self):
        if not self.terms:
            raise DivisionByZero("inverse of 0 in Hahn")
        if len(self.terms) != 1:
            raise HahnUnsupportedInverse(
                f"{format_element(self)} is not a monomial; its inverse has infinite support")
        (e, c), = self.terms
        return Hahn._raw(((-e, 1 / c),))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            raise DomainError("only integer powers of Hahn series")
        if k < 0:
            return self.inverse() ** (-k)
        out = Hahn([(0, 1)])
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Hahn):
            return self.terms == other.terms
        if isinstance(other, _RATIONAL):
            if not other:
                return not self.terms
            return self.terms == ((Fraction(0), Fraction(other)),)
        return NotImplemented

    def __hash__(self):
        if not self.terms:
            return 0
        if len(self.terms) == 1 and self.terms[0][0] == 0:
            return hash(self.terms[0][1])
        return hash(self.terms)

    def val(self):
        return self.terms[0][0] if self.terms else INF

    def __repr__(self):
        return f"Hahn({format_element(self)!r})"

    def __str__(self):
        return format_element(self)


# ---------------------------------------------------------------------------
# field-level helpers


def field_of(x) -> FieldId:
    if isinstance(x, FieldElement):
        return x.field
    if isinstance(x, _RATIONAL):
        return FieldId.Q
    raise TypeError(f"not a field element: {x!r}")


def coerce(field, x):
    """Return ``x`` in the canonical representation of ``field``."""
    field = as_field_id(field)
    if isinstance(x, _RATIONAL):
        if field is FieldId.Q:
            return Fraction(x)
        if field is FieldId.QI:
            return Gauss(x, 0)
        if field in (FieldId.QT, FieldId.QIT):
            return RatFunc.const(field, x)
        return Hahn([(0, x)])
    if isinstance(x, Gauss):
        if field is FieldId.QI:
            return x
        if field is FieldId.QIT:
            return RatFunc.const(field, x)
        if x.im == 0:
            return coerce(field, x.re)
        raise FieldMismatch(f"{x} is not in {field}")
    if isinstance(x, FieldElement) and x.field is field:
        return x
    if isinstance(x, RatFunc) and x.field is FieldId.QT and field is FieldId.QIT:
        raise FieldMismatch("Qt elements are not implicitly embedded in Qit")
    raise FieldMismatch(f"{x!r} is not in {field}")


def zero(field):
    return coerce(field, 0)


def one(field):
    return coerce(field, 1)


def is_rational(x) -> bool:
    """True iff x lies in the image of K0 = Q."""
    if isinstance(x, _RATIONAL):
        return True
    if isinstance(x, Gauss):
        return x.im == 0
    if isinstance(x, RatFunc):
        c = x.constant_value()
        return c is not None and (not isinstance(c, Gauss) or c.im == 0)
    if isinstance(x, Hahn):
        return not x.terms or (len(x.terms) == 1 and x.terms[0][0] == 0)
    return False


def to_rational(x) -> Fraction:
    if not is_rational(x):
        raise DomainError(f"{x} is not rational")
    if isinstance(x, _RATIONAL):
        return Fraction(x)
    if isinstance(x, Gauss):
        return x.re
    if isinstance(x, RatFunc):
        c = x.constant_value()
        return c.re if isinstance(c, Gauss) else Fraction(c)
    return x.terms[0][1] if x.terms else Fraction(0)


def conjugate(x):
    """Complex conjugation on Qi and Qit; identity elsewhere."""
    if isinstance(x, (Gauss, RatFunc)):
        return x.conjugate()
    return x


def arith(op: str, x, y=None):
    """Dispatch a named arithmetic operation (``add``, ``sub``, ``mul``,
    ``div``, ``neg``, ``inv``, ``eq``) with field checking."""
    if y is not None and op not in ("neg", "inv"):
        fx, fy = field_of(x), field_of(y)
        if fx is not fy and FieldId.Q not in (fx, fy):
            raise FieldMismatch(f"{fx} vs {fy}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if not y:
            raise DivisionByZero("division by zero")
        if isinstance(x, _RATIONAL) and isinstance(y, _RATIONAL):
            return Fraction(x) / Fraction(y)
        return x / y
    if op == "neg":
        return -x
    if op == "inv":
        if not x:
            raise DivisionByZero("inverse of zero")
        if isinstance(x, _RATIONAL):
            return 1 / Fraction(x)
        return x.inverse()
    if op == "eq":
        return x == y
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# places


@dataclass(frozen=True)
class Place:
    """A valuation on one of the supported fields, trivial on Q.

    ``kind`` is ``"finite_center"`` (center ``c``: val = order of vanishing at
    t = c), ``"infinity"`` (val = deg den - deg num) or ``"hahn_t_adic"``.
    """

    field: FieldId
    kind: str
    center: Any = None

    def __post_init__(self):
        object.__setattr__(self, "field", as_field_id(self.field))
        if self.kind == "finite_center":
            if self.field not in (FieldId.QT, FieldId.QIT):
                raise DomainError(f"no finite places on {self.field}")
            c = self.center
            if isinstance(c, str):
                c = parse_element(FieldId.QI if self.field is FieldId.QIT else FieldId.Q, c)
            object.__setattr__(self, "center", _canon_coeff(self.field, c))
        elif self.kind == "infinity":
            if self.field not in (FieldId.QT, FieldId.QIT):
                raise DomainError(f"no place at infinity on {self.field}")
        elif self.kind == "hahn_t_adic":
            if self.field is not FieldId.HAHN:
                raise DomainError("the t-adic Hahn place lives on Hahn")
        else:
            raise DomainError(f"unknown place kind {self.kind!r}")

    @classmethod
    def at(cls, c, field=FieldId.QT):
        return cls(as_field_id(field), "finite_center", c)

    @classmethod
    def infinity(cls, field=FieldId.QT):
        return cls(as_field_id(field), "infinity")

    @classmethod
    def hahn(cls):
        return cls(FieldId.HAHN, "hahn_t_adic")

    @property
    def residue_field(self) -> FieldId:
        return FieldId.QI if self.field is FieldId.QIT else FieldId.Q

    def _check(self, x):
        x = coerce(self.field, x) if isinstance(x, (_RATIONAL, Gauss)) else x
        if field_of(x) is not self.field:
            raise FieldMismatch(f"{format_element(x)} is not in {self.field}")
        return x

    def valuation(self, x):
        x = self._check(x)
        if not x:
            return INF
        if self.kind == "hahn_t_adic":
            return x.val()
        if self.kind == "infinity":
            return Fraction(len(x.den) - len(x.num))
        c = self.center
        return Fraction(_ord_at(x.num, c) - _ord_at(x.den, c))

    def residue(self, x):
        x = self._check(x)
        v = self.valuation(x)
        if v < 0:
            raise NegativeValuation(f"val({format_element(x)}) = {v} < 0 at {self.describe()}")
        k = self.residue_field
        if v > 0:
            return zero(k)
        if self.kind == "hahn_t_adic":
            return x.terms[0][1]
        if self.kind == "infinity":
            r = x.num[-1] / x.den[-1]
        else:
            r = _peval(x.num, self.center) / _peval(x.den, self.center)
        return coerce(k, r)

    def lift(self, r):
        if field_of(r) not in (FieldId.Q, self.residue_field):
            raise FieldMismatch(f"{format_element(r)} is not in {self.residue_field}")
        return coerce(self.field, r)

    def describe(self) -> str:
        if self.kind == "finite_center":
            return f"{self.field}: t={format_element(self.center)}"
        if self.kind == "infinity":
            return f"{self.field}: t=inf"
        return "Hahn: t-adic"

    def to_json(self):
        d = {"field": self.field.value, "kind": self.kind}
        if self.kind == "finite_center":
            d["center"] = format_element(self.center)
        return d

    @classmethod
    def from_json(cls, d):
        if isinstance(d, str):
            return parse_place(d)
        return cls(as_field_id(d["field"]), d["kind"], d.get("center"))


def parse_place(text: str, field=FieldId.QT) -> Place:
    """Shorthand places: ``"t=0"``, ``"t=1/2"``, ``"t=inf"``, ``"hahn"``."""
    text = text.strip()
    if text.lower() == "hahn":
        return Place.hahn()
    m = re.fullmatch(r"t\s*=\s*(.+)", text)
    if not m:
        raise LiteralSyntaxError(f"bad place {text!r}")
    c = m.group(1).strip()
    if c in ("inf", "oo", "∞"):
        return Place.infinity(field)
    return Place.at(c, field)


# ---------------------------------------------------------------------------
# literal grammar

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([ti])|([-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise LiteralSyntaxError(f"unexpected character at {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", Fraction(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, field, text):
        self.field = field
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k] if self.k < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            raise LiteralSyntaxError(f"expected {value or kind} in {self.text!r}")
        self.k += 1
        return tok

    def parse(self):
        if not self.toks:
            raise LiteralSyntaxError("empty literal")
        v = self.expr()
        if self.k != len(self.toks):
            raise LiteralSyntaxError(f"trailing input in {self.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while True:
            tok = self.peek()
            if tok in (("op", "*"), ("op", "/")):
                self.take()
                w = self.unary()
                v = v * w if tok[1] == "*" else _div(v, w)
            elif tok[0] in ("num", "name") or tok == ("op", "("):
                v = v * self.power()  # implicit multiplication: 2t, 3i, 2(t+1)
            else:
                return v

    def unary(self):
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            return -self.unary()
        if tok == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            e = self.exponent()
            return _power(self.field, base, e)
        return base

    def exponent(self):
        tok = self.peek()
        if tok == ("op", "("):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            e = self.take("num")[1] * sign
            self.take("op", ")")
            return e
        if tok == ("op", "-"):
            self.take()
            return -self.take("num")[1]
        return self.take("num")[1]

    def atom(self):
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            return coerce(self.field, tok[1])
        if tok[0] == "name":
            self.take()
            return _name(self.field, tok[1])
        if tok == ("op", "("):
            self.take()
            v = self.expr()
            self.take("op", ")")
            return v
        raise LiteralSyntaxError(f"unexpected token {tok[1]!r} in {self.text!r}")


def _div(v, w):
    if not w:
        raise DivisionByZero("division by zero in literal")
    return v / w


def _name(field, name):
    if name == "i":
        if field is FieldId.QI:
            return I
        if field is FieldId.QIT:
            return RatFunc.const(field, I)
        raise DomainError(f"i is not in {field}")
    if field in (FieldId.QT, FieldId.QIT):
        return RatFunc.t(field)
    if field is FieldId.HAHN:
        return Hahn([(1, 1)])
    raise DomainError(f"t is not in {field}")


def _power(field, base, e):
    if field is FieldId.HAHN and isinstance(base, Hahn) and base.is_monomial():
        (be, bc), = base.terms
        if e.denominator != 1 and bc != 1:
            raise DomainError("rational powers only of monomials with coefficient 1")
        _check_hahn_exponent(be * e)
        return Hahn([(be * e, bc ** int(e) if e.denominator == 1 else bc)])
    if e.denominator != 1:
        raise DomainError(f"rational exponent {e} not allowed in {field}")
    e = int(e)
    if isinstance(base, _RATIONAL) or isinstance(base, Gauss):
        if e < 0:
            if not base:
                raise DivisionByZero("0 to a negative power")
            return coerce(field, (1 / base) ** (-e) if isinstance(base, Gauss) else Fraction(base) ** e)
        out = coerce(field, 1)
        for _ in range(e):
            out = out * base
        return out
    return base ** e


def parse_element(field, literal: str):
    """Parse an element literal into canonical form."""
    field = as_field_id(field)
    if not isinstance(literal, str):
        return coerce(field, literal)
    return _Parser(field, literal).parse()


def _fmt_rational(q) -> str:
    return str(Fraction(q))


def _fmt_gauss(z: Gauss) -> str:
    re_, im = z.re, z.im
    if im == 0:
        return _fmt_rational(re_)
    ims = "i" if im == 1 else "-i" if im == -1 else f"{_fmt_rational(im)}i"
    if re_ == 0:
        return ims
    return f"{_fmt_rational(re_)}{'' if im < 0 else '+'}{ims}"


def _fmt_coeff_term(c, mono: str) -> str:
    """Format ``c * mono`` for a nonconstant monomial string."""
    if isinstance(c, Gauss) and c.im == 0:
        c = c.re
    if isinstance(c, Gauss):
        return f"({_fmt_gauss(c)})*{mono}"
    c = Fraction(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    sign = "-" if c < 0 else ""
    a = abs(c)
    if a.denominator == 1:
        return f"{sign}{a}*{mono}"
    return f"{sign}({a})*{mono}"


def _fmt_const(c) -> str:
    return _fmt_gauss(c) if isinstance(c, Gauss) else _fmt_rational(c)


def _join_terms(terms):
    if not terms:
        return "0"
    out = terms[0]
    for s in terms[1:]:
        out += s if s.startswith("-") else "+" + s
    return out


def _fmt_poly(p) -> str:
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if not c:
            continue
        if k == 0:
            terms.append(_fmt_const(c))
        else:
            terms.append(_fmt_coeff_term(c, "t" if k == 1 else f"t^{k}"))
    return _join_terms(terms)


def _is_simple(s: str) -> bool:
    return "+" not in s and "-" not in s[1:]


def _fmt_exponent(e: Fraction) -> str:
    if e == 1:
        return "t"
    if e.denominator == 1 and e > 0:
        return f"t^{e}"
    return f"t^({e})"


def format_element(x) -> str:
    """Canonical text for an element; ``parse_element`` inverts it."""
    if isinstance(x, _RATIONAL):
        return _fmt_rational(x)
    if isinstance(x, Gauss):
        return _fmt_gauss(x)
    if isinstance(x, RatFunc):
        ns = _fmt_poly(x.num)
        if len(x.den) == 1:
            return ns
        ds = _fmt_poly(x.den)
        if sum(1 for c in x.num if c) > 1 or not _is_simple(ns):
            ns = f"({ns})"
        if sum(1 for c in x.den if c) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"
    if isinstance(x, Hahn):
        terms = []
        for e, c in x.terms:
            terms.append(_fmt_const(c) if e == 0 else _fmt_coeff_term(c, _fmt_exponent(e)))
        return _join_terms(terms)
    raise TypeError(f"not a field element: {x!r}")


# ---------------------------------------------------------------------------
# random elements (used by the property harnesses)


def random_rational(rng, bound=3, allow_zero=True):
    while True:
        q = Fraction(rng.randint(-bound, bound), rng.randint(1, 2))
        if q or allow_zero:
            return q


def _random_poly(rng, field, deg, bound):
    coeffs = []
    for _ in range(deg + 1):
        c = random_rational(rng, bound)
        if field is FieldId.QIT and rng.random() < 0.4:
            c = Gauss(c, random_rational(rng, bound))
        coeffs.append(c)
    return coeffs


def random_element(field, rng, complexity: int = 2):
    """A random element with small height.

    Qt/Qit elements are built as ``c * t^a * (t-1)^b * u`` with a unit-ish
    cofactor ``u`` so that the built-in places see a spread of valuations.
    """
    field = as_field_id(field)
    if field is FieldId.Q:
        return random_rational(rng)
    if field is FieldId.QI:
        return Gauss(random_rational(rng), random_rational(rng) if rng.random() < 0.7 else 0)
    if field in (FieldId.QT, FieldId.QIT):
        if rng.random() < 0.1:
            return coerce(field, 0)
        t = RatFunc.t(field)
        x = coerce(field, random_rational(rng, allow_zero=False))
        if field is FieldId.QIT and rng.random() < 0.5:
            x = x * RatFunc.const(field, Gauss(random_rational(rng), 1))
        x = x * t ** rng.randint(-complexity, complexity)
        x = x * (t - 1) ** rng.randint(-1, 1)
        if rng.random() < 0.6:
            num = _random_poly(rng, field, rng.randint(0, complexity), 3)
            den = _random_poly(rng, field, rng.randint(0, complexity - 1), 3)
            num, den = _trim(num), _trim(den)
            if num and den:
                x = x * RatFunc(field, num, den)
        return x
    terms = []
    for _ in range(rng.randint(0, 4)):
        e = Fraction(rng.randint(-6, 12), 3 ** rng.randint(0, 2))
        terms.append((e, random_rational(rng, allow_zero=False)))
    return Hahn(terms)

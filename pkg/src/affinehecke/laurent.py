"""Exact sparse Laurent polynomials.

Three layers live here:

* ``QTPoly`` -- Laurent polynomials in the formal parameters ``q`` and ``t``
  with rational coefficients and exponents in ``(1/2) Z``.  Exponents are
  stored internally in half units (an exponent ``e`` is kept as the integer
  ``2 e``), which enforces the global denominator bound of 2.
* ``QTFrac`` -- quotients of two ``QTPoly``; this is the coefficient field
  used wherever genuine division by parameters is needed.
* ``LaurentPoly`` -- polynomials in the ambient variables ``z_1..z_n`` (the
  group algebra of a weight lattice) whose coefficients are ``QTPoly``.  The
  storage is flat: one dict keyed by ``(z_exponents, q_half, t_half)``.  This
  keeps operator application cheap since no nested objects are created.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.rings import ring

Number = Union[int, Fraction]
ZExp = Tuple  # tuple of int | Fraction

MAX_EXP_DENOMINATOR = 2


class ExponentError(ArithmeticError):
    """Raised when an exponent leaves the allowed lattice (denominator > 2)."""


class SpecializationError(ArithmeticError):
    """Raised when a parameter specialization is undefined or incomplete."""


def _num(c) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _ex(x) -> Number:
    """Normalize one exponent: integral Fractions become ints."""
    if isinstance(x, int):
        return x
    x = Fraction(x)
    if x.denominator == 1:
        return int(x)
    if x.denominator > MAX_EXP_DENOMINATOR:
        raise ExponentError(f"exponent {x} exceeds denominator bound {MAX_EXP_DENOMINATOR}")
    return x


def zexp(v: Iterable) -> ZExp:
    return tuple(_ex(x) for x in v)


def half_units(e) -> int:
    """Convert an exponent in (1/2)Z to half units."""
    e2 = Fraction(e) * 2
    if e2.denominator != 1:
        raise ExponentError(f"parameter exponent {e} is not a multiple of 1/2")
    return int(e2)


def frac_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    return Fraction(str(s))


def _fmt_power(name: str, e2: int) -> str:
    if e2 == 0:
        return ""
    if e2 == 2:
        return name
    if e2 % 2 == 0:
        return f"{name}^{e2 // 2}"
    return f"{name}^({e2}/2)"


# ---------------------------------------------------------------------------
# Laurent polynomials in q, t
# ---------------------------------------------------------------------------


class QTPoly:
    """Laurent polynomial in ``q`` and ``t``; immutable by convention."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Tuple[int, int], Number] | None = None):
        self.terms: Dict[Tuple[int, int], Number] = (
            {k: _num(v) for k, v in terms.items() if v} if terms else {}
        )
        self._hash = None

    # -- constructors --------------------------------------------------------
    @classmethod
    def const(cls, c: Number) -> "QTPoly":
        return cls({(0, 0): c}) if c else cls()

    @classmethod
    def monomial(cls, qexp=0, texp=0, coeff: Number = 1) -> "QTPoly":
        return cls({(half_units(qexp), half_units(texp)): coeff})

    @classmethod
    def q(cls, e=1) -> "QTPoly":
        return cls.monomial(e, 0)

    @classmethod
    def t(cls, e=1) -> "QTPoly":
        return cls.monomial(0, e)

    @classmethod
    def coerce(cls, x) -> "QTPoly":
        if isinstance(x, QTPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to QTPoly")

    # -- predicates ----------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0, 0)}

    def constant_value(self) -> Number:
        return self.terms.get((0, 0), 0)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, QTPoly):
            if isinstance(other, (int, Fraction)):
                other = QTPoly.const(other)
            else:
                return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return QTPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return QTPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, QTPoly):
            if isinstance(other, (int, Fraction)):
                other = QTPoly.const(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QTPoly({k: v * other for k, v in self.terms.items()}) if other else QTPoly()
        if not isinstance(other, QTPoly):
            return NotImplemented
        out: Dict[Tuple[int, int], Number] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                s = out.get(k, 0) + c1 * c2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return QTPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise ZeroDivisionError("only monomials are invertible in QTPoly")
            ((a, b), c), = self.terms.items()
            return QTPoly({(-a * (-n), -b * (-n)): Fraction(1, 1) / Fraction(c) ** (-n)})
        out = QTPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QTPoly({k: _num(Fraction(v) / other) for k, v in self.terms.items()})
        other = QTPoly.coerce(other) if not isinstance(other, QTFrac) else other
        if isinstance(other, QTPoly) and other.is_monomial():
            return self * other ** -1
        return QTFrac(self, 1) / other

    # -- comparison ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QTPoly.const(other)
        if isinstance(other, QTFrac):
            return other == self
        if not isinstance(other, QTPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- involutions / substitutions ----------------------------------------
    def bar(self) -> "QTPoly":
        """q -> 1/q, t -> 1/t; rational coefficients are fixed."""
        return QTPoly({(-a, -b): c for (a, b), c in self.terms.items()})

    def specialize(self, kappa: int) -> "QTPoly":
        """Substitute ``q = t^(kappa/2)``; the result only involves ``t``."""
        out: Dict[Tuple[int, int], Number] = {}
        for (a, b), c in self.terms.items():
            num = a * kappa
            if num % 2:
                raise SpecializationError("specialization produces a quarter power of t")
            k = (0, b + num // 2)
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return QTPoly(out)

    def involves_q(self) -> bool:
        return any(a for a, _ in self.terms)

    def leading(self) -> Tuple[Tuple[int, int], Number]:
        """Leading term in graded lexicographic order on (q, t) exponents."""
        k = max(self.terms, key=_grlex_key)
        return k, self.terms[k]

    def min_exponents(self) -> Tuple[int, int]:
        return (min(a for a, _ in self.terms), min(b for _, b in self.terms))

    def shift(self, da: int, db: int) -> "QTPoly":
        """Multiply by q^(da/2) t^(db/2) (half-unit shifts)."""
        return QTPoly({(a + da, b + db): c for (a, b), c in self.terms.items()})

    # -- output --------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def to_string(self, s_variable: bool = False) -> str:
        """Render exactly, e.g. ``q^2 - q^-2``.

        With ``s_variable`` the t-exponent is printed as a power of
        ``s = t^(1/2)`` (used after the ``q = t^(kappa/2)`` specialization).
        """
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in self.sorted_terms():
            mono = []
            if a:
                mono.append(_fmt_power("q", a))
            if b:
                mono.append(_fmt_power("s", 2 * b) if s_variable else _fmt_power("t", b))
            c = Fraction(c)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if mono:
                body = "*".join(mono)
                if mag != 1:
                    body = f"{frac_str(mag)}*{body}"
            else:
                body = frac_str(mag)
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"QTPoly({self.to_string()})"

    def to_json(self):
        return [[frac_str(Fraction(a, 2)), frac_str(Fraction(b, 2)), frac_str(c)]
                for (a, b), c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data) -> "QTPoly":
        return cls({(half_units(parse_frac(a)), half_units(parse_frac(b))): parse_frac(c)
                    for a, b, c in data})


def _grlex_key(k: Tuple[int, int]):
    return (k[0] + k[1], k[0], k[1])


Q = QTPoly.q
T = QTPoly.t
ONE = QTPoly.const(1)
ZERO = QTPoly()


# ---------------------------------------------------------------------------
# Fractions of QTPoly (the parameter field)
# ---------------------------------------------------------------------------

_SYM_RING, _SYM_Q, _SYM_T = ring("Q,T", QQ)


def _to_sym(p: QTPoly, da: int, db: int):
    return _SYM_RING.from_dict({(a - da, b - db): QQ(Fraction(c).numerator, Fraction(c).denominator)
                                for (a, b), c in p.terms.items()})


def _from_sym(p, da: int, db: int) -> QTPoly:
    return QTPoly({(a + da, b + db): Fraction(int(c.numerator), int(c.denominator))
                   for (a, b), c in p.items()})


def _reduce(num: QTPoly, den: QTPoly) -> Tuple[QTPoly, QTPoly]:
    if den.is_zero():
        raise ZeroDivisionError("QTFrac with zero denominator")
    if num.is_zero():
        return ZERO, ONE
    if den.is_monomial():
        return num * den ** -1, ONE
    na, nb = num.min_exponents()
    da, db = den.min_exponents()
    sn, sd = _to_sym(num, na, nb), _to_sym(den, da, db)
    sn, sd = sn.cancel(sd)
    num2 = _from_sym(sn, na - da, nb - db)
    den2 = _from_sym(sd, 0, 0)
    # canonical window: den has minimal exponents (0, 0) and leading coefficient 1
    (lk, lc) = den2.leading()
    if lc != 1:
        num2 = QTPoly({k: _num(Fraction(v) / lc) for k, v in num2.terms.items()})
        den2 = QTPoly({k: _num(Fraction(v) / lc) for k, v in den2.terms.items()})
    if den2.is_monomial():
        return num2 * den2 ** -1, ONE
    return num2, den2


class QTFrac:
    """Element of the fraction field Q(q^(1/2), t^(1/2)).

    Always kept reduced: numerator and denominator are coprime (via a
    polynomial gcd) and the denominator is normalized to have leading
    coefficient 1 and minimal exponents 0.  Equality is decided by
    cross-multiplication, so it never depends on the normalization.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, reduce: bool = True):
        num = QTPoly.coerce(num)
        den = QTPoly.coerce(den)
        if reduce:
            num, den = _reduce(num, den)
        elif den.is_zero():
            raise ZeroDivisionError("QTFrac with zero denominator")
        self.num, self.den = num, den

    @classmethod
    def coerce(cls, x) -> "QTFrac":
        if isinstance(x, QTFrac):
            return x
        return cls(QTPoly.coerce(x), ONE, reduce=False)

    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den == ONE

    def as_poly(self) -> QTPoly:
        if not self.is_poly():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def __add__(self, other):
        if not isinstance(other, QTFrac):
            try:
                other = QTFrac.coerce(other)
            except TypeError:
                return NotImplemented
        if self.den == other.den:
            return QTFrac(self.num + other.num, self.den)
        return QTFrac(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return QTFrac(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        if not isinstance(other, QTFrac):
            try:
                other = QTFrac.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QTFrac):
            try:
                other = QTFrac.coerce(other)
            except TypeError:
                return NotImplemented
        return QTFrac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = QTFrac.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero parameter")
        return QTFrac(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return QTFrac.coerce(other) / self

    def __eq__(self, other):
        if not isinstance(other, QTFrac):
            try:
                other = QTFrac.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def bar(self) -> "QTFrac":
        return QTFrac(self.num.bar(), self.den.bar())

    def specialize(self, kappa: int) -> "QTFrac":
        den = self.den.specialize(kappa)
        if den.is_zero():
            raise SpecializationError(f"denominator {self.den} vanishes at q = t^({kappa}/2)")
        return QTFrac(self.num.specialize(kappa), den)

    def to_string(self, s_variable: bool = False) -> str:
        n = self.num.to_string(s_variable)
        if self.is_poly():
            return n
        return f"({n})/({self.den.to_string(s_variable)})"

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"QTFrac({self})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "QTFrac":
        return cls(QTPoly.from_json(data["num"]), QTPoly.from_json(data["den"]))


ParamScalar = QTFrac


def common_denominator(values: Iterable[QTFrac]) -> QTPoly:
    """Monic lcm of the denominators of ``values``."""
    acc = _SYM_RING.one
    for v in values:
        v = QTFrac.coerce(v)
        if not v.den.is_constant():
            acc = acc.lcm(_to_sym(v.den, 0, 0))
    out = _from_sym(acc, 0, 0)
    (_, lc) = out.leading()
    return QTPoly({k: _num(Fraction(c) / lc) for k, c in out.terms.items()})


# ---------------------------------------------------------------------------
# Laurent polynomials in z with (q, t) coefficients
# ---------------------------------------------------------------------------

Key = Tuple[ZExp, int, int]


def _pair(x: Sequence, y: Sequence):
    return sum(a * b for a, b in zip(x, y))


class LaurentPoly:
    """Sparse element of Z[q^(1/2)^{+-1}, t^(1/2)^{+-1}][P] for a lattice P in Q^n."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[Key, Number] | None = None):
        self.dim = dim
        self.terms: Dict[Key, Number] = {k: v for k, v in terms.items() if v} if terms else {}

    # -- constructors --------------------------------------------------------
    @classmethod
    def from_terms(cls, dim: int, terms: Dict[Key, Number]) -> "LaurentPoly":
        """Wrap an already normalized term dict (no zero coefficients) without copying."""
        p = cls.__new__(cls)
        p.dim = dim
        p.terms = terms
        return p

    @classmethod
    def zero(cls, dim: int) -> "LaurentPoly":
        return cls(dim)

    @classmethod
    def monomial(cls, exps: Iterable, coeff=1) -> "LaurentPoly":
        z = zexp(exps)
        return cls.from_coefficients(len(z), {z: coeff})

    @classmethod
    def constant(cls, dim: int, coeff=1) -> "LaurentPoly":
        return cls.from_coefficients(dim, {(0,) * dim: coeff})

    @classmethod
    def var(cls, dim: int, i: int) -> "LaurentPoly":
        """The coordinate function z_i (0-based index)."""
        e = [0] * dim
        e[i] = 1
        return cls.monomial(e)

    @classmethod
    def from_coefficients(cls, dim: int, coeffs: Mapping[Iterable, object]) -> "LaurentPoly":
        out: Dict[Key, Number] = {}
        for z, c in coeffs.items():
            z = zexp(z)
            if len(z) != dim:
                raise ValueError(f"exponent {z} has length {len(z)}, expected {dim}")
            c = QTPoly.coerce(c)
            for (a, b), v in c.terms.items():
                k = (z, a, b)
                s = out.get(k, 0) + v
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return cls(dim, out)

    # -- views ---------------------------------------------------------------
    def coefficients(self) -> Dict[ZExp, QTPoly]:
        grouped: Dict[ZExp, Dict[Tuple[int, int], Number]] = {}
        for (z, a, b), c in self.terms.items():
            grouped.setdefault(z, {})[(a, b)] = c
        return {z: QTPoly(d) for z, d in grouped.items()}

    def coeff(self, z: Iterable) -> QTPoly:
        z = zexp(z)
        return QTPoly({(a, b): c for (zz, a, b), c in self.terms.items() if zz == z})

    def support(self):
        return {z for z, _, _ in self.terms}

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    # -- arithmetic ----------------------------------------------------------
    def _check(self, other: "LaurentPoly"):
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction, QTPoly)):
                other = LaurentPoly.constant(self.dim, other)
            else:
                return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentPoly(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.dim, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction, QTPoly)):
                other = LaurentPoly.constant(self.dim, other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "LaurentPoly":
        if isinstance(c, (int, Fraction)):
            if not c:
                return LaurentPoly(self.dim)
            return LaurentPoly(self.dim, {k: _num(v * c) for k, v in self.terms.items()})
        c = QTPoly.coerce(c)
        out: Dict[Key, Number] = {}
        for (z, a, b), v in self.terms.items():
            for (da, db), w in c.terms.items():
                k = (z, a + da, b + db)
                s = out.get(k, 0) + v * w
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return LaurentPoly(self.dim, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QTPoly)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        out: Dict[Key, Number] = {}
        for (z1, a1, b1), c1 in self.terms.items():
            for (z2, a2, b2), c2 in other.terms.items():
                k = (tuple(_ex(x + y) if not (isinstance(x, int) and isinstance(y, int)) else x + y
                           for x, y in zip(z1, z2)), a1 + a2, b1 + b2)
                s = out.get(k, 0) + c1 * c2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return LaurentPoly(self.dim, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.support()) != 1:
                raise ZeroDivisionError("only monomials in z are invertible")
            (z,) = self.support()
            c = self.coeff(z)
            return LaurentPoly.from_coefficients(self.dim, {tuple(-x for x in z): c ** -1}) ** (-n)
        out = LaurentPoly.constant(self.dim, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QTPoly)):
            other = LaurentPoly.constant(self.dim, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- structure maps ------------------------------------------------------
    def bar(self) -> "LaurentPoly":
        """Formal complex conjugation: z, q, t all inverted."""
        return LaurentPoly(self.dim, {(tuple(-x for x in z), -a, -b): c
                                      for (z, a, b), c in self.terms.items()})

    def constant_term(self) -> QTPoly:
        zero = (0,) * self.dim
        return QTPoly({(a, b): c for (z, a, b), c in self.terms.items() if z == zero})

    def diagonal_shift(self, a: Sequence) -> "LaurentPoly":
        """e^lam -> t^{(lam, a)} e^lam."""
        a = tuple(Fraction(x) for x in a)
        if len(a) != self.dim:
            raise ValueError("shift vector has wrong dimension")
        out: Dict[Key, Number] = {}
        for (z, qa, tb), c in self.terms.items():
            k = (z, qa, tb + half_units(_pair(z, a)))
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentPoly(self.dim, out)

    def specialize(self, kappa: int) -> "LaurentPoly":
        """Substitute q = t^(kappa/2) in every coefficient."""
        out: Dict[Key, Number] = {}
        for (z, a, b), c in self.terms.items():
            num = a * kappa
            if num % 2:
                raise SpecializationError("specialization produces a quarter power of t")
            k = (z, 0, b + num // 2)
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentPoly(self.dim, out)

    def involves_q(self) -> bool:
        return any(a for _, a, _ in self.terms)

    def degree_set(self):
        return {sum(z) for z in self.support()}

    # -- output --------------------------------------------------------------
    def sorted_items(self):
        return sorted(self.coefficients().items(), key=lambda kv: monomial_order_key(kv[0]), reverse=True)

    def to_string(self, s_variable: bool = False) -> str:
        if not self.terms:
            return "0"
        parts = []
        for z, c in self.sorted_items():
            mono = "*".join(
                (f"z{i + 1}" if e == 1 else f"z{i + 1}^{e}" if isinstance(e, int) else f"z{i + 1}^({e})")
                for i, e in enumerate(z) if e)
            cs = c.to_string(s_variable)
            if not mono:
                parts.append(f"({cs})" if len(c.terms) > 1 else cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"LaurentPoly({self.to_string()})"

    def to_json(self):
        return [{"exponents": [frac_str(x) for x in z],
                 "coeff": {"num": c.to_json(), "den": ONE.to_json()}}
                for z, c in self.sorted_items()]

    @classmethod
    def from_json(cls, data, dim: int | None = None) -> "LaurentPoly":
        coeffs = {}
        for item in data:
            z = tuple(parse_frac(x) for x in item["exponents"])
            c = QTFrac.from_json(item["coeff"])
            coeffs[z] = c.as_poly()
        if dim is None:
            if not coeffs:
                raise ValueError("cannot infer dimension of an empty polynomial")
            dim = len(next(iter(coeffs)))
        return cls.from_coefficients(dim, coeffs)


def monomial_order_key(z: Sequence):
    """Graded lexicographic key on exponent vectors."""
    return (sum(z), tuple(z))


def demazure_divide_terms(lam: ZExp, r: Sequence, r_coroot: Sequence):
    """Monomial image of (s_r - 1)/(e^r - 1) applied to e^lam.

    Returns a list of ``(exponent, coefficient)``; the closed telescoping form
    avoids any division.
    """
    m = _pair(lam, r_coroot)
    m = Fraction(m)
    if m.denominator != 1:
        raise ExponentError(f"pairing {m} of {lam} with a coroot is not integral")
    m = int(m)
    out = []
    if m > 0:
        for i in range(1, m + 1):
            out.append((tuple(_ex(x - i * y) for x, y in zip(lam, r)), -1))
    elif m < 0:
        for i in range(0, -m):
            out.append((tuple(_ex(x + i * y) for x, y in zip(lam, r)), 1))
    return out


def demazure_divide(rs, r: Sequence, p: LaurentPoly) -> LaurentPoly:
    """((s_r - 1) p) / (e^r - 1), computed monomial by monomial."""
    r = tuple(r)
    if rs is not None and not rs.is_root(r):
        raise ValueError(f"{r} is not a root of {rs.name}")
    rr = _pair(r, r)
    rv = tuple(Fraction(2 * x) / rr for x in r)
    out: Dict[Key, Number] = {}
    for (z, a, b), c in p.terms.items():
        for z2, c2 in demazure_divide_terms(z, r, rv):
            k = (z2, a, b)
            s = out.get(k, 0) + c * c2
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return LaurentPoly(p.dim, out)


def bar_involution(p: LaurentPoly) -> LaurentPoly:
    return p.bar()


def constant_term(p: LaurentPoly) -> QTPoly:
    return p.constant_term()


def diagonal_shift(p: LaurentPoly, a: Sequence) -> LaurentPoly:
    return p.diagonal_shift(a)

"""Polynomial representation of the affine Hecke algebra.

Operators act on ``LaurentPoly``.  Primitive operators compute the image of
a single monomial ``e^lam`` and memoize it; composite operators are trees of
primitives.  Everything stays polynomial: the divided difference
``(e^r - 1)^{-1} (s_r - 1)`` is evaluated through its telescoping closed form.

Conventions:
  g_r       = q_r s_r + (q_r - q_r^{-1}) (e^r - 1)^{-1} (s_r - 1)
  g_r^{-1}  = g_r - (q_r - q_r^{-1})
  x_r       = s_r g_r            (r positive)
  x_{-r}    = g_r^{-1} s_r = x_r^{-1}
  t^a e^lam = t^{(lam, a)} e^lam
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import kernel
from .affine import (
    AffineRoot,
    Reflect,
    Translate,
    Word,
    bernstein_decomposition,
    geodesic_word,
    invert_tokens,
    minuscule_class,
)
from .laurent import (
    ExponentError,
    LaurentPoly,
    QTPoly,
    half_units,
)
from .rootsys import RootSystem, Vector, build_root_system, coroot, dot, fmt_vec, neg, smul, vec

Image = Tuple[Tuple[tuple, int, int, object], ...]


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def _nvec(v: Sequence) -> tuple:
    return tuple(_norm(Fraction(a)) for a in v)


def _int_pairing(lam, rv) -> int:
    m = sum(a * b for a, b in zip(lam, rv))
    if isinstance(m, Fraction):
        if m.denominator != 1:
            raise ExponentError(f"exponent {lam} pairs non-integrally with coroot {rv}")
        m = int(m)
    return m


def _acc(out: Dict, key, c):
    s = out.get(key, 0) + c
    if s:
        out[key] = s
    else:
        out.pop(key, None)


class PolyOperator:
    """Linear endomorphism of LaurentPoly."""

    def apply(self, p: LaurentPoly) -> LaurentPoly:
        raise NotImplementedError

    def __call__(self, p: LaurentPoly) -> LaurentPoly:
        return self.apply(p)

    def apply_many(self, polys: Sequence[LaurentPoly]) -> List[LaurentPoly]:
        return [self.apply(p) for p in polys]

    def __mul__(self, other):
        if isinstance(other, PolyOperator):
            return Compose([self, other])
        return Compose([Scale(QTPoly.coerce(other)), self])

    def __rmul__(self, other):
        return Compose([Scale(QTPoly.coerce(other)), self])

    def __add__(self, other):
        return Sum([self, other])

    def __sub__(self, other):
        return Sum([self, Compose([Scale(QTPoly.const(-1)), other])])

    def __neg__(self):
        return Compose([Scale(QTPoly.const(-1)), self])

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers need an explicit inverse")
        return Compose([self] * n) if n else Identity()


class MonomialOperator(PolyOperator):
    """Operator given by a memoized monomial image map."""

    def __init__(self):
        self._cache: Dict[tuple, Image] = {}

    def image(self, z: tuple) -> Image:
        raise NotImplementedError

    def image_of(self, z: tuple) -> Image:
        img = self._cache.get(z)
        if img is None:
            img = self._cache[z] = self.image(z)
        return img

    def images_of(self, zs: Sequence[tuple]) -> List[Image]:
        return [self.image_of(z) for z in zs]

    def apply_many(self, polys: Sequence[LaurentPoly]) -> List[LaurentPoly]:
        return Compose([self]).apply_many(polys) if polys else []

    def apply(self, p: LaurentPoly) -> LaurentPoly:
        out: Dict = {}
        get = out.get
        cache = self._cache
        for (z, a, b), c in p.terms.items():
            img = cache.get(z)
            if img is None:
                img = self.image(z)
                cache[z] = img
            for z2, da, db, c2 in img:
                k = (z2, a + da, b + db)
                out[k] = get(k, 0) + c * c2
        return LaurentPoly.from_terms(p.dim, {k: v for k, v in out.items() if v})


class Identity(PolyOperator):
    def apply(self, p):
        return p


class Scale(PolyOperator):
    def __init__(self, c: QTPoly):
        self.c = QTPoly.coerce(c)

    def apply(self, p):
        return p.scale(self.c)


class Mult(PolyOperator):
    """Multiplication by a fixed Laurent polynomial."""

    def __init__(self, f: LaurentPoly):
        self.f = f

    def apply(self, p):
        return self.f * p


class Sum(PolyOperator):
    def __init__(self, ops: Sequence[PolyOperator]):
        self.ops = list(ops)

    def apply(self, p):
        out = LaurentPoly(p.dim)
        for op in self.ops:
            out = out + op.apply(p)
        return out


class Compose(PolyOperator):
    """ops[0] o ops[1] o ... ; the last operator is applied first."""

    def __init__(self, ops: Sequence[PolyOperator]):
        flat: List[PolyOperator] = []
        for op in ops:
            if isinstance(op, Compose):
                flat.extend(op.ops)
            elif not isinstance(op, Identity):
                flat.append(op)
        self.ops = flat

    def _monomial_chain(self) -> bool:
        return bool(self.ops) and all(isinstance(op, MonomialOperator) for op in self.ops)

    def apply(self, p):
        if len(self.ops) > 1 and self._monomial_chain():
            try:
                return LaurentPoly.from_terms(p.dim, kernel.apply_chain(self.ops, p.dim, p.terms))
            except kernel.Unsupported:
                pass
        for op in reversed(self.ops):
            p = op.apply(p)
        return p

    def apply_many(self, polys):
        polys = list(polys)
        if not (polys and self._monomial_chain()):
            return [self.apply(p) for p in polys]
        out: List[LaurentPoly] = []
        dim = polys[0].dim
        for i in range(0, len(polys), kernel.BATCH):
            chunk = polys[i:i + kernel.BATCH]
            try:
                res = kernel.apply_chain_batch(self.ops, dim, [p.terms for p in chunk])
                out.extend(LaurentPoly.from_terms(dim, t) for t in res)
            except kernel.Unsupported:
                out.extend(self.apply(p) for p in chunk)
        return out


class Reflection(MonomialOperator):
    """s_r: e^lam -> e^{w_r(lam)}."""

    def __init__(self, r: Sequence):
        super().__init__()
        self.r = _nvec(r)
        self.rv = _nvec(coroot(vec(r)))

    def image(self, z):
        m = _int_pairing(z, self.rv)
        return (((tuple(_norm(x - m * y) for x, y in zip(z, self.r))), 0, 0, 1),)


class WeylAction(MonomialOperator):
    """e^lam -> e^{w(lam)} for a Weyl group matrix."""

    def __init__(self, matrix):
        super().__init__()
        self.matrix = tuple(_nvec(row) for row in matrix)

    def image(self, z):
        return ((tuple(_norm(sum(a * b for a, b in zip(row, z))) for row in self.matrix), 0, 0, 1),)


class Shift(MonomialOperator):
    """t^a: e^lam -> t^{(lam, a)} e^lam."""

    def __init__(self, a: Sequence):
        super().__init__()
        self.a = _nvec(a)

    def image(self, z):
        return ((z, 0, half_units(sum(x * y for x, y in zip(z, self.a))), 1),)


def _hecke_terms(z, r, rv, p2: int, inverse: bool):
    """Image of e^z under g_r (or g_r^{-1}) as a dict keyed (z, q_half, t_half).

    ``p2`` is the Hecke parameter exponent in half units (q_r = q^{p2/2}).
    """
    out: Dict = {}
    m = _int_pairing(z, rv)
    sz = tuple(_norm(x - m * y) for x, y in zip(z, r))
    _acc(out, (sz, p2, 0), 1)
    # (q - q^{-1}) * ((s - 1) e^z) / (e^r - 1)
    if m > 0:
        for i in range(1, m + 1):
            w = tuple(_norm(x - i * y) for x, y in zip(z, r))
            _acc(out, (w, p2, 0), -1)
            _acc(out, (w, -p2, 0), 1)
    elif m < 0:
        for i in range(0, -m):
            w = tuple(_norm(x + i * y) for x, y in zip(z, r))
            _acc(out, (w, p2, 0), 1)
            _acc(out, (w, -p2, 0), -1)
    if inverse:
        _acc(out, (z, p2, 0), -1)
        _acc(out, (z, -p2, 0), 1)
    return out


class Hecke(MonomialOperator):
    """Demazure-Lusztig operator g_r (or its inverse)."""

    def __init__(self, r: Sequence, power=1, inverse: bool = False):
        super().__init__()
        self.r = _nvec(r)
        self.rv = _nvec(coroot(vec(r)))
        self.p2 = half_units(power)
        self.inverse = inverse

    def image(self, z):
        d = _hecke_terms(z, self.r, self.rv, self.p2, self.inverse)
        return tuple((k[0], k[1], k[2], c) for k, c in d.items())


class LimitX(MonomialOperator):
    """Limiting Yang-Baxter generator x_rho for a signed root rho.

    rho = r positive:  x_r    = s_r o g_r
    rho = -r:          x_{-r} = g_r^{-1} o s_r
    """

    def __init__(self, rho: Sequence, positive: bool, power=1):
        super().__init__()
        self.rho = _nvec(rho)
        self.positive = positive
        r = self.rho if positive else tuple(-a for a in self.rho)
        self.r = r
        self.rv = _nvec(coroot(vec(r)))
        self.p2 = half_units(power)

    def image(self, z):
        r, rv = self.r, self.rv
        if self.positive:
            d = _hecke_terms(z, r, rv, self.p2, False)
            out: Dict = {}
            for (w, a, b), c in d.items():
                m = _int_pairing(w, rv)
                _acc(out, (tuple(_norm(x - m * y) for x, y in zip(w, r)), a, b), c)
        else:
            m = _int_pairing(z, rv)
            sz = tuple(_norm(x - m * y) for x, y in zip(z, r))
            out = _hecke_terms(sz, r, rv, self.p2, True)
        return tuple((k[0], k[1], k[2], c) for k, c in out.items())


# -- shared primitive instances ---------------------------------------------------
# Primitives are immutable apart from their monomial caches, so equal
# primitives are interned and the caches are shared by every operator.

@lru_cache(maxsize=None)
def _reflection(r: tuple) -> Reflection:
    return Reflection(r)


@lru_cache(maxsize=None)
def _hecke(r: tuple, power: Fraction, inverse: bool) -> Hecke:
    return Hecke(r, power, inverse)


@lru_cache(maxsize=None)
def _limit_x(rho: tuple, positive: bool, power: Fraction) -> LimitX:
    return LimitX(rho, positive, power)


@lru_cache(maxsize=None)
def _shift(a: tuple) -> Shift:
    return Shift(a)


def clear_caches() -> None:
    """Drop all interned primitives together with their monomial caches."""
    for f in (_reflection, _hecke, _limit_x, _shift):
        f.cache_clear()


# -- public constructors ---------------------------------------------------------

def op_s(rs: RootSystem, r) -> Reflection:
    return _reflection(_nvec(rs.check_root(r)))


def op_g(rs: RootSystem, r) -> Hecke:
    r = rs.check_root(r)
    return _hecke(_nvec(r), rs.hecke_power(r), False)


def op_g_inv(rs: RootSystem, r) -> Hecke:
    r = rs.check_root(r)
    return _hecke(_nvec(r), rs.hecke_power(r), True)


def op_t(rs: Optional[RootSystem], a) -> Shift:
    return _shift(_nvec(a))


def op_x_limit(rs: RootSystem, rho) -> LimitX:
    rho = rs.check_root(rho)
    return _limit_x(_nvec(rho), rs.is_positive(rho), rs.hecke_power(rho))


def op_x_limit_inv(rs: RootSystem, rho) -> LimitX:
    return op_x_limit(rs, neg(vec(rho)))


def op_mult(p: LaurentPoly) -> Mult:
    return Mult(p)


def _token_ops(rs: RootSystem, tokens) -> List[PolyOperator]:
    ops: List[PolyOperator] = []
    for tok in tokens:
        if isinstance(tok, Translate):
            ops.append(_shift(_nvec(tok.vec)))
        else:
            ops.append(op_x_limit(rs, tok.root))
    return ops


def eval_word(rs: RootSystem, word: Word) -> PolyOperator:
    """Compose the token operators; the inverse part is applied first."""
    ops = _token_ops(rs, word.tokens) + _token_ops(rs, invert_tokens(word.inverse_tokens))
    return Compose(ops) if ops else Identity()


def eval_word_inverse(rs: RootSystem, word: Word) -> PolyOperator:
    ops = _token_ops(rs, word.inverse_tokens) + _token_ops(rs, invert_tokens(word.tokens))
    return Compose(ops) if ops else Identity()


def scattering_operator(rs: RootSystem, xi, base=None) -> PolyOperator:
    return eval_word(rs, geodesic_word(rs, xi, base))


def affine_generator(rs: RootSystem, ar: AffineRoot) -> PolyOperator:
    """G(rho, l) = t^{-P} g_rho t^{P} for any P with (rho, P) = l."""
    rho = rs.check_root(ar.root)
    p = smul(Fraction(ar.level, 2), coroot(rho))
    g = _hecke(_nvec(rho), rs.hecke_power(rho), False)
    if ar.level == 0:
        return g
    return Compose([_shift(_nvec(neg(p))), g, _shift(_nvec(p))])


def affine_generator_g0(rs: RootSystem) -> PolyOperator:
    """g_{-r_m + delta} = t^{-p} g_{-r_m} t^{p} with p = r_m^V / 2."""
    rm = rs.highest_root
    p = smul(Fraction(1, 2), coroot(rm))
    return Compose([_shift(_nvec(neg(p))), _hecke(_nvec(neg(rm)), rs.hecke_power(rm), False), _shift(_nvec(p))])


# -- type A --------------------------------------------------------------------

def type_a(n: int) -> RootSystem:
    """GL_n ambient root system (rank n - 1)."""
    if n < 2:
        raise ValueError("type A needs at least two variables")
    return build_root_system("A", n - 1)


def _eij(n, i, j):
    return tuple(1 if k == i else -1 if k == j else 0 for k in range(n))


def x_ij(n: int, i: int, j: int) -> LimitX:
    """x_{i,j} = s_{ij} g_{ij} for 1 <= i < j <= n (1-based)."""
    return _limit_x(_eij(n, i - 1, j - 1), True, Fraction(1))


def x_ij_inv(n: int, i: int, j: int) -> LimitX:
    return _limit_x(_eij(n, j - 1, i - 1), False, Fraction(1))


def g_adjacent(n: int, j: int, inverse: bool = False) -> Hecke:
    """g_{j,j+1} (1-based)."""
    return _hecke(_eij(n, j - 1, j), Fraction(1), inverse)


def _shift_j(n: int, j: int, sign: int) -> Shift:
    return _shift(tuple(sign if k == j - 1 else 0 for k in range(n)))


def _check_index(n: int, j: int) -> None:
    if not 1 <= j <= n:
        raise IndexError(f"j = {j} out of range 1..{n}")


def cherednik_typeA(n: int, j: int) -> PolyOperator:
    """S_j = x_{j,j+1}^{-1} ... x_{j,n}^{-1} t_j x_{1,j} ... x_{j-1,j}.

    This is S_{e_j}, the inverse of the A_n example word for S_{-e_j}; it
    satisfies g_{j,j+1} S_j = S_{j+1} g_{j,j+1}^{-1} and has diagonal
    entries t^{k_j} q^{n+1-2j} up to permutation.
    """
    _check_index(n, j)
    ops: List[PolyOperator] = [x_ij_inv(n, j, k) for k in range(j + 1, n + 1)]
    ops.append(_shift_j(n, j, 1))
    ops.extend(x_ij(n, i, j) for i in range(1, j))
    return Compose(ops)


def cherednik_typeA_inverse(n: int, j: int) -> PolyOperator:
    _check_index(n, j)
    ops: List[PolyOperator] = [x_ij_inv(n, i, j) for i in range(j - 1, 0, -1)]
    ops.append(_shift_j(n, j, -1))
    ops.extend(x_ij(n, j, k) for k in range(n, j, -1))
    return Compose(ops)


def cherednik_typeA_displayed(n: int, j: int) -> PolyOperator:
    """x_{j-1,j}^{-1} ... x_{1,j}^{-1} t_j x_{j,n} ... x_{j,j+1}.

    Equals the walk operator S_{e_j}; cherednik_typeA is its image under
    the mirror t -> t^{-1} composed with xi -> -xi.
    """
    _check_index(n, j)
    ops: List[PolyOperator] = [x_ij_inv(n, i, j) for i in range(j - 1, 0, -1)]
    ops.append(_shift_j(n, j, 1))
    ops.extend(x_ij(n, j, k) for k in range(n, j, -1))
    return Compose(ops)


class Mirror(PolyOperator):
    """sigma op sigma with sigma the substitution t -> t^{-1}."""

    def __init__(self, op: PolyOperator):
        self.op = op

    def apply(self, p: LaurentPoly) -> LaurentPoly:
        return invert_t(self.op.apply(invert_t(p)))


def invert_t(p: LaurentPoly) -> LaurentPoly:
    return LaurentPoly.from_terms(p.dim, {(z, a, -b): c for (z, a, b), c in p.terms.items()})


def hamiltonian(n: int, l: int) -> PolyOperator:
    """H_l = sum over i_1 < ... < i_l of S_{i_1} ... S_{i_l}."""
    if not 1 <= l <= n:
        raise IndexError(f"l = {l} out of range 1..{n}")
    ss = [cherednik_typeA(n, j) for j in range(1, n + 1)]
    return Sum([Compose([ss[i] for i in c]) for c in combinations(range(n), l)])


# -- verification helpers ---------------------------------------------------------

def window(rs_or_dim, d: int) -> List[LaurentPoly]:
    """Monomials with exponents in [-d, d]^n (root-lattice combinations for G2)."""
    if isinstance(rs_or_dim, RootSystem) and rs_or_dim.family == "G":
        rs = rs_or_dim
        out = []
        for c in product(range(-d, d + 1), repeat=rs.rank):
            lam = [Fraction(0)] * rs.ambient_dim
            for ci, a in zip(c, rs.simple_roots):
                lam = [x + ci * y for x, y in zip(lam, a)]
            out.append(LaurentPoly.monomial(lam))
        return out
    n = rs_or_dim.ambient_dim if isinstance(rs_or_dim, RootSystem) else rs_or_dim
    return [LaurentPoly.monomial(e) for e in product(range(-d, d + 1), repeat=n)]


def polynomial_window(n: int, max_degree: int, min_degree: int = 0) -> List[LaurentPoly]:
    """Monomials z^k with k >= 0 and min_degree <= |k| <= max_degree."""
    out = []
    for deg in range(min_degree, max_degree + 1):
        for k in compositions(deg, n):
            out.append(LaurentPoly.monomial(k))
    return out


def compositions(deg: int, n: int) -> List[Tuple[int, ...]]:
    if n == 1:
        return [(deg,)]
    out = []
    for first in range(deg, -1, -1):
        for rest in compositions(deg - first, n - 1):
            out.append((first,) + rest)
    return out


@dataclass
class Comparison:
    cases: int = 0
    failures: List[Tuple[LaurentPoly, LaurentPoly, LaurentPoly]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok

    def merge(self, other: "Comparison") -> "Comparison":
        self.cases += other.cases
        self.failures.extend(other.failures)
        return self


def _chain_of(op: PolyOperator) -> Optional[List["MonomialOperator"]]:
    if isinstance(op, MonomialOperator):
        return [op]
    if isinstance(op, Compose) and op._monomial_chain():
        return op.ops
    if isinstance(op, Identity):
        return []
    return None


def compare_on(op1: PolyOperator, op2: PolyOperator, monomials: Iterable[LaurentPoly],
               max_failures: int = 5) -> Comparison:
    res = Comparison()
    monomials = list(monomials)
    chains = [_chain_of(op1), _chain_of(op2)]
    if monomials and None not in chains:
        dim = monomials[0].dim
        try:
            for i in range(0, len(monomials), kernel.BATCH):
                chunk = monomials[i:i + kernel.BATCH]
                bad = kernel.compare_chains(chains[0], chains[1], dim, [m.terms for m in chunk])
                res.cases += len(chunk)
                for j, a, b in bad:
                    res.failures.append((chunk[j], LaurentPoly.from_terms(dim, a),
                                         LaurentPoly.from_terms(dim, b)))
                if len(res.failures) > max_failures:
                    del res.failures[max_failures + 1:]
                    break
            return res
        except kernel.Unsupported:
            res = Comparison()
    for m, a, b in zip(monomials, op1.apply_many(monomials), op2.apply_many(monomials)):
        res.cases += 1
        if a != b:
            if len(res.failures) < max_failures:
                res.failures.append((m, a, b))
            else:
                res.failures.append((m, a, b))
                break
    return res


def operator_equal(op1: PolyOperator, op2: PolyOperator, monomials: Iterable[LaurentPoly]) -> bool:
    return compare_on(op1, op2, monomials, max_failures=0).ok


def annihilates(op: PolyOperator, monomials: Iterable[LaurentPoly]) -> Comparison:
    res = Comparison()
    for m in monomials:
        res.cases += 1
        a = op.apply(m)
        if a:
            res.failures.append((m, a, LaurentPoly(m.dim)))
    return res


# -- Bernstein factorization ------------------------------------------------------

@dataclass
class BernsteinResult:
    xi: Vector
    gamma: Vector
    weyl_word: Tuple[int, ...]
    affine_word: Tuple[Optional[int], ...]
    length_ok: bool
    gamma_ok: bool
    comparison: Optional[Comparison]

    @property
    def ok(self) -> bool:
        return (self.length_ok and self.gamma_ok and all(i is not None for i in self.affine_word)
                and self.comparison is not None and self.comparison.ok)


def bernstein_check(rs: RootSystem, xi, monomials: Optional[Iterable[LaurentPoly]] = None,
                    d: int = 2) -> BernsteinResult:
    """Compare S_xi with t^{-gamma} w^{-1} g_{i_1} ... g_{i_l} on a window.

    The affine generators are read off by moving the finite Weyl parts of the
    walk to the left; the node generator that arises is G(-r_m, 1) (the
    affine wall of the walk's starting alcove).
    """
    xi = vec(xi)
    word = geodesic_word(rs, xi)
    data = bernstein_decomposition(rs, word)
    gamma = neg(data.translation)
    length_ok = len(data.generators) == word.reflection_count == sum(
        (dot(xi, r) for r in rs.positive_roots), Fraction(0))
    # gamma represents the class of -xi modulo Q^V (and the diagonal in type A)
    gamma_ok = minuscule_class(rs, gamma) == minuscule_class(rs, neg(xi))
    comparison = None
    if data.simple:
        ops: List[PolyOperator] = [_shift(_nvec(data.translation)), WeylAction(data.weyl.matrix)]
        ops.extend(affine_generator(rs, g) for g in data.generators)
        rhs = Compose(ops)
        if monomials is None:
            monomials = window(rs, d)
        comparison = compare_on(eval_word(rs, word), rhs, monomials)
    return BernsteinResult(xi, gamma, data.weyl.word, data.indices, length_ok, gamma_ok, comparison)

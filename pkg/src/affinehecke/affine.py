"""Affine roots, alcoves and alcove-walk words for coweight translations.

A word is stored in written order: ``tokens[0]`` is the leftmost factor and
is applied last.  A ``Reflect`` token carries the affine hyperplane it came
from, ``(root, x) = level``; the running sum of translations read from the
right must lie on that hyperplane when the token is reached.

The walk starts from a generic point in the negative of the fundamental
alcove, where every positive root takes values in (-1, 0).  Along the
segment to ``base + xi`` with ``xi`` dominant, the positive root ``r`` is
crossed at levels ``0, 1, ..., (xi, r) - 1``; each crossing contributes the
root that points into the arrival side.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .rootsys import (
    RootSystem,
    RootSystemError,
    Vector,
    WeylElement,
    add,
    coroot,
    dot,
    fmt_vec,
    identity_matrix,
    is_zero,
    neg,
    reflection_matrix,
    smul,
    sub,
    vec,
)

PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
          73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151)
MAX_BASE_POINT_ATTEMPTS = 20


class NonGenericError(RuntimeError):
    """No generic base point was found within the retry budget."""


class WordError(RuntimeError):
    """A word violates the translation/wall bookkeeping invariant."""


@dataclass(frozen=True)
class AffineRoot:
    """Affine function x -> (root, x) - level; its zero set is H_{root,level}."""

    root: Vector
    level: Fraction

    def value(self, x: Sequence) -> Fraction:
        return dot(self.root, x) - self.level

    def reflect(self, x: Sequence) -> Vector:
        return affine_reflect(self, x)

    def __str__(self):
        return f"{fmt_vec(self.root)}@{self.level}"


def affine_reflect(ar: AffineRoot, x: Sequence) -> Vector:
    """w_{r+k delta}(x) = x - ((r, x) - k) r^V."""
    c = dot(ar.root, x) - ar.level
    rv = coroot(ar.root)
    return tuple(Fraction(a) - c * b for a, b in zip(x, rv))


@dataclass(frozen=True)
class Alcove:
    """Region {x : (r, x) >= level for every bounding affine root}."""

    bounding: Tuple[AffineRoot, ...]

    def contains(self, x: Sequence, strict: bool = True) -> bool:
        if strict:
            return all(a.value(x) > 0 for a in self.bounding)
        return all(a.value(x) >= 0 for a in self.bounding)


def fundamental_alcove(rs: RootSystem) -> Alcove:
    if rs.family == "A1xA1":
        raise RootSystemError("alcoves are only implemented for irreducible root systems")
    walls = [AffineRoot(a, Fraction(0)) for a in rs.simple_roots]
    walls.append(AffineRoot(neg(rs.highest_root), Fraction(-1)))
    return Alcove(tuple(walls))


def alcove_vertices(rs: RootSystem) -> List[Vector]:
    """0 together with omega_i / m_i, where m_i are the highest-root marks."""
    if rs.family == "A1xA1":
        raise RootSystemError("alcoves are only implemented for irreducible root systems")
    out = [tuple(Fraction(0) for _ in range(rs.ambient_dim))]
    for w in rs.fundamental_coweights:
        m = dot(w, rs.highest_root)
        out.append(smul(1 / m, w))
    return out


def barycenter(rs: RootSystem) -> Vector:
    vs = alcove_vertices(rs)
    s = vs[0]
    for v in vs[1:]:
        s = add(s, v)
    return smul(Fraction(1, len(vs)), s)


def base_point(rs: RootSystem, attempt: int = 0) -> Vector:
    """Deterministic generic point inside the negative fundamental alcove."""
    b = neg(barycenter(rs))
    n = rs.ambient_dim
    pert = tuple(Fraction(1, 1000 * PRIMES[(attempt + i) % len(PRIMES)] ** (i + 1)) for i in range(n))
    p = add(b, pert)
    assert all(-1 < dot(r, p) < 0 for r in rs.positive_roots), "perturbation left the alcove"
    return p


def inversion_set(rs: RootSystem, xi: Sequence) -> frozenset:
    """{r + k delta : r > 0, 0 <= k < (xi, r)} for dominant xi."""
    xi = vec(xi)
    if not rs.is_dominant(xi):
        raise ValueError(f"{fmt_vec(xi)} is not dominant")
    out = set()
    for r in rs.positive_roots:
        for k in range(int(dot(xi, r))):
            out.add(AffineRoot(r, Fraction(k)))
    return frozenset(out)


# -- tokens and words -----------------------------------------------------------

@dataclass(frozen=True)
class Reflect:
    root: Vector
    level: Fraction

    def to_json(self):
        return {"kind": "reflect", "root": [_fs(a) for a in self.root], "level": _fs(self.level)}

    def inverse(self) -> "Reflect":
        # x_r^{-1} = x_{-r}; the hyperplane is unchanged
        return Reflect(neg(self.root), -self.level)


@dataclass(frozen=True)
class Translate:
    vec: Vector

    def to_json(self):
        return {"kind": "translate", "vec": [_fs(a) for a in self.vec]}

    def inverse(self) -> "Translate":
        return Translate(neg(self.vec))


Token = Union[Reflect, Translate]


def _fs(a) -> str:
    a = Fraction(a)
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def invert_tokens(tokens: Sequence[Token]) -> Tuple[Token, ...]:
    return tuple(t.inverse() for t in reversed(tokens))


def check_tokens(tokens: Sequence[Token], dim: int) -> Vector:
    """Validate the wall invariant; returns the total translation."""
    partial = tuple(Fraction(0) for _ in range(dim))
    for tok in reversed(tokens):
        if isinstance(tok, Translate):
            partial = add(partial, tok.vec)
        elif dot(tok.root, partial) != tok.level:
            raise WordError(f"origin {fmt_vec(partial)} is not on the wall {fmt_vec(tok.root)}@{tok.level}")
    return partial


@dataclass(frozen=True)
class Word:
    """S_xi as ``tokens`` times the inverse of ``inverse_tokens``.

    For dominant xi ``inverse_tokens`` is empty.  Otherwise xi = xi1 - xi2
    with xi1, xi2 dominant, ``tokens`` is the walk for xi1 and
    ``inverse_tokens`` the walk for xi2 (stored uninverted).
    """

    tokens: Tuple[Token, ...]
    xi: Vector
    inverse_tokens: Tuple[Token, ...] = ()
    gamma: Optional[Vector] = None
    base: Optional[Vector] = None

    @property
    def dim(self) -> int:
        return len(self.xi)

    @property
    def is_quotient(self) -> bool:
        return bool(self.inverse_tokens)

    @property
    def total_translate(self) -> Vector:
        a = check_tokens(self.tokens, self.dim)
        b = check_tokens(self.inverse_tokens, self.dim)
        return sub(a, b)

    def reflections(self) -> List[Vector]:
        return [t.root for t in self.tokens + self.inverse_tokens if isinstance(t, Reflect)]

    @property
    def reflection_count(self) -> int:
        return len(self.reflections())

    def reflection_multiset(self) -> Counter:
        return Counter(self.reflections())

    def flat_tokens(self) -> Tuple[Token, ...]:
        """Single token list with the inverse part written out explicitly."""
        return self.tokens + invert_tokens(self.inverse_tokens)

    def validate(self) -> None:
        total = self.total_translate
        if total != self.xi:
            raise WordError(f"total translation {fmt_vec(total)} differs from xi = {fmt_vec(self.xi)}")

    def to_json(self) -> dict:
        out = {
            "xi": [_fs(a) for a in self.xi],
            "tokens": [t.to_json() for t in self.tokens],
            "reflection_count": self.reflection_count,
            "total_translate": [_fs(a) for a in self.total_translate],
        }
        if self.inverse_tokens:
            out["inverse_tokens"] = [t.to_json() for t in self.inverse_tokens]
        if self.gamma is not None:
            out["gamma"] = [_fs(a) for a in self.gamma]
        if self.base is not None:
            out["base_point"] = [_fs(a) for a in self.base]
        return out


def _lattice_origin(rs: RootSystem, r: Vector, k: Fraction) -> Vector:
    return _lattice_origin_cached(rs.name, rs.coweight_lattice_basis(), r, k)


@lru_cache(maxsize=None)
def _lattice_origin_cached(name: str, basis: Tuple[Vector, ...], r: Vector, k: Fraction) -> Vector:
    """Minimal-norm lattice point on H_{r,k}, lexicographically smallest on ties."""
    if k == 0:
        return tuple(Fraction(0) for _ in r)
    vals = [dot(r, b) for b in basis]
    for radius in range(1, 2 * int(abs(k)) + 6):
        best = None
        rng = range(-radius, radius + 1)
        for c in product(rng, repeat=len(basis)):
            if sum(ci * vi for ci, vi in zip(c, vals)) != k:
                continue
            p = tuple(sum((ci * b[j] for ci, b in zip(c, basis)), Fraction(0)) for j in range(len(r)))
            key = (dot(p, p), p)
            if best is None or key < best[0]:
                best = (key, p)
        if best is not None:
            # one more ring cannot shorten a solution found at this radius by much; search it too
            rng = range(-radius - 1, radius + 2)
            for c in product(rng, repeat=len(basis)):
                if sum(ci * vi for ci, vi in zip(c, vals)) != k:
                    continue
                p = tuple(sum((ci * b[j] for ci, b in zip(c, basis)), Fraction(0)) for j in range(len(r)))
                key = (dot(p, p), p)
                if key < best[0]:
                    best = (key, p)
            return best[1]
    raise WordError(f"no lattice point on H_({fmt_vec(r)}, {k}) in {name}")


def crossings(rs: RootSystem, start: Vector, xi: Vector) -> List[Tuple[Fraction, Vector, Fraction]]:
    """Hyperplane crossings (time, positive root, level) of the open segment."""
    out = []
    for r in rs.positive_roots:
        a, d = dot(r, start), dot(r, xi)
        if d == 0:
            continue
        lo, hi = sorted((a, a + d))
        k = lo.__floor__() + 1
        while k < hi:
            out.append(((k - a) / d, r, Fraction(k)))
            k += 1
    out.sort(key=lambda c: c[0])
    return out


def _is_generic(cs) -> bool:
    times = [c[0] for c in cs]
    return len(times) == len(set(times))


def walk_tokens(rs: RootSystem, xi: Vector, start: Vector) -> Tuple[Token, ...]:
    """Tokens of the straight walk from ``start`` to ``start + xi``.

    Raises NonGenericError when two walls are crossed simultaneously.
    """
    cs = crossings(rs, start, xi)
    if not _is_generic(cs):
        raise NonGenericError("segment meets a wall intersection of codimension >= 2")
    tokens: List[Token] = []
    prev = tuple(Fraction(0) for _ in xi)
    # build right to left: first crossing is the rightmost reflection
    for _, r, k in cs:
        sign = 1 if dot(r, xi) > 0 else -1
        root = r if sign > 0 else neg(r)
        origin = _lattice_origin(rs, r, k)
        a = sub(origin, prev)
        if not is_zero(a):
            tokens.append(Translate(a))
        tokens.append(Reflect(root, sign * k))
        prev = origin
    last = sub(xi, prev)
    if not is_zero(last):
        tokens.append(Translate(last))
    return tuple(reversed(tokens))


def dominant_split(rs: RootSystem, xi: Vector) -> Tuple[Vector, Vector]:
    """xi = xi1 - xi2 with xi2 = sum_i max(0, -(xi, alpha_i)) omega_i."""
    xi2 = tuple(Fraction(0) for _ in xi)
    for p, w in zip(rs.simple_pairings(xi), rs.fundamental_coweights):
        if p < 0:
            xi2 = add(xi2, smul(-p, w))
    return add(xi, xi2), xi2


def geodesic_word(rs: RootSystem, xi: Sequence, base: Optional[Sequence] = None,
                  split: bool = True) -> Word:
    """Alcove-walk word S_xi.

    With ``split`` (the default) a non-dominant xi becomes the formal
    quotient of two dominant walks; otherwise the straight walk is used
    directly, which introduces tokens for negative roots.
    """
    xi = vec(xi)
    if len(xi) != rs.ambient_dim:
        raise ValueError(f"xi must have {rs.ambient_dim} coordinates")
    if not rs.is_coweight(xi):
        raise ValueError(f"{fmt_vec(xi)} is not in the coweight lattice of {rs.name}")
    if split and not rs.is_dominant(xi):
        xi1, xi2 = dominant_split(rs, xi)
        w1 = geodesic_word(rs, xi1, base)
        w2 = geodesic_word(rs, xi2, base)
        word = Word(w1.tokens, xi, w2.tokens, gamma=None, base=w1.base)
        word.validate()
        return word
    if base is not None:
        base = vec(base)
        tokens = walk_tokens(rs, xi, base)
    else:
        for attempt in range(MAX_BASE_POINT_ATTEMPTS):
            base = base_point(rs, attempt)
            try:
                tokens = walk_tokens(rs, xi, base)
                break
            except NonGenericError:
                continue
        else:
            raise NonGenericError(f"no generic base point for xi = {fmt_vec(xi)} after "
                                  f"{MAX_BASE_POINT_ATTEMPTS} attempts")
    word = Word(tokens, xi, base=base)
    word.validate()
    gamma = None
    if rs.is_dominant(xi):
        gamma = neg(bernstein_decomposition(rs, word).translation)
    word = Word(tokens, xi, gamma=gamma, base=base)
    return word


def word_concat(w1: Word, w2: Word) -> Word:
    """Word for S_{xi1} S_{xi2}: w2 is applied first.

    The walls of w1 are re-levelled by the translation of w2.  For quotient
    words the numerators and denominators are concatenated separately, which
    is legitimate because the S_xi commute.
    """
    if w1.dim != w2.dim:
        raise ValueError("dimension mismatch")

    def shifted(tokens, offset):
        return tuple(Reflect(t.root, t.level + dot(t.root, offset)) if isinstance(t, Reflect) else t
                     for t in tokens)

    off2 = check_tokens(w2.tokens, w2.dim)
    tokens = shifted(w1.tokens, off2) + w2.tokens
    off2i = check_tokens(w2.inverse_tokens, w2.dim)
    inv = shifted(w1.inverse_tokens, off2i) + w2.inverse_tokens
    word = Word(tokens, add(w1.xi, w2.xi), inv)
    word.validate()
    return word


# -- rewriting into affine Hecke generators ---------------------------------------

@dataclass(frozen=True)
class AffineElement:
    """t^a w acting on affine roots; composition (t^a w)(t^b v) = t^{a + w b} w v."""

    translation: Vector
    weyl: Tuple[Vector, ...]

    def __mul__(self, other: "AffineElement") -> "AffineElement":
        w = self.weyl
        wb = tuple(dot(row, other.translation) for row in w)
        n = len(w)
        m = tuple(tuple(sum((w[i][k] * other.weyl[k][j] for k in range(n)), Fraction(0)) for j in range(n))
                  for i in range(n))
        return AffineElement(add(self.translation, wb), m)

    def inverse(self) -> "AffineElement":
        n = len(self.weyl)
        wt = tuple(tuple(self.weyl[j][i] for j in range(n)) for i in range(n))
        return AffineElement(neg(tuple(dot(row, self.translation) for row in wt)), wt)

    def conjugate_root(self, ar: AffineRoot) -> AffineRoot:
        """tau^{-1} G(ar) tau for tau = self, where G(r, l) = t^{-P} g_r t^P with (r, P) = l."""
        n = len(self.weyl)
        wt = tuple(tuple(self.weyl[j][i] for j in range(n)) for i in range(n))
        return AffineRoot(tuple(dot(row, ar.root) for row in wt), ar.level + dot(ar.root, self.translation))


@dataclass(frozen=True)
class BernsteinData:
    """S_xi = t^{translation} w G_{m-1} ... G_0 with each G an affine simple generator.

    ``generators`` lists affine roots left to right; ``indices`` names them
    (0 for the affine node, i >= 1 for simple root i).  ``simple`` is False
    when some factor is not an affine simple generator.
    """

    translation: Vector
    weyl: WeylElement
    generators: Tuple[AffineRoot, ...]
    indices: Tuple[Optional[int], ...]

    @property
    def simple(self) -> bool:
        return all(i is not None for i in self.indices)


def affine_node(rs: RootSystem) -> AffineRoot:
    """Affine wall of the starting alcove -C in the G(r, l) labelling: (-r_m, 1).

    G(-r_m, 1) = t^{r_m^V/2} g_{-r_m} t^{-r_m^V/2}; the conjugate with the
    opposite half shift is G(-r_m, -1).
    """
    return AffineRoot(neg(rs.highest_root), Fraction(1))


def bernstein_decomposition(rs: RootSystem, word: Word) -> BernsteinData:
    """Move the finite Weyl parts of every x to the left of the word.

    Each factor t^{-P} x_r t^{P} (r > 0, (r, P) = k) equals
    sigma G(r, k) with sigma = t^{-P} s_r t^{P} = t^{-k r^V} s_r.
    """
    if word.is_quotient:
        raise ValueError("decomposition requires a dominant word")
    dim = word.dim
    one = AffineElement(tuple(Fraction(0) for _ in range(dim)), identity_matrix(dim))
    # collect (root, level) right to left with origins
    factors: List[AffineRoot] = []
    for tok in word.tokens:
        if isinstance(tok, Reflect):
            if not rs.is_positive(tok.root):
                raise ValueError("decomposition requires positive reflection tokens")
            factors.append(AffineRoot(tok.root, tok.level))
    # factors[0] is leftmost (applied last); tau_i = sigma_{i-1}...sigma_0 in crossing order
    crossing = list(reversed(factors))
    tau = one
    conj: List[AffineRoot] = []
    for ar in crossing:
        conj.append(tau.conjugate_root(ar))
        sigma = AffineElement(smul(-ar.level, coroot(ar.root)), reflection_matrix(ar.root))
        tau = sigma * tau
    total = AffineElement(word.xi, identity_matrix(dim)) * tau
    gens = tuple(reversed(conj))
    simple = {tuple(a): i + 1 for i, a in enumerate(rs.simple_roots)}
    node = affine_node(rs)
    idx = []
    for g in gens:
        if g.level == 0 and g.root in simple:
            idx.append(simple[g.root])
        elif g == node:
            idx.append(0)
        else:
            idx.append(None)
    w = WeylElement((), total.weyl)
    w = rs.reduce(w)
    return BernsteinData(total.translation, w, gens, tuple(idx))


def fundamental_coweight_list(rs: RootSystem) -> List[Vector]:
    return list(rs.fundamental_coweights)


def minuscule_class(rs: RootSystem, x: Sequence) -> Vector:
    """Minuscule representative v with x - v in Q^V (modulo the diagonal in type A)."""
    for v in rs.minuscule_weights:
        if rs.in_coroot_lattice(sub(vec(x), v)):
            return v
    raise ValueError(f"{fmt_vec(x)} has no minuscule representative")

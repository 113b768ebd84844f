"""Finite root systems and their Weyl groups in exact ambient coordinates.

Vectors are tuples of ``Fraction``.  Type A of rank ``n - 1`` lives in the
``n``-dimensional GL ambient (simple roots ``e_i - e_{i+1}``), so the
coordinate functions ``z_i = e^{e_i}`` are available.  Types B, C, D use the
standard orthogonal ambient.  G2 is placed in the sum-zero plane of a
3-dimensional ambient, the smallest rational realization.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Vector = Tuple[Fraction, ...]

SUPPORTED = "A (rank>=1), B (rank>=2), C (rank>=2), D (rank>=3), G (rank 2), A1xA1"


class RootSystemError(ValueError):
    """Unsupported family/rank pair or an invalid root argument."""


# -- vector helpers ---------------------------------------------------------

def vec(xs: Iterable) -> Vector:
    return tuple(Fraction(x) for x in xs)


def dot(x: Sequence, y: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def add(x: Sequence, y: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Sequence, y: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def smul(c, x: Sequence) -> Vector:
    return tuple(c * a for a in x)


def neg(x: Sequence) -> Vector:
    return tuple(-a for a in x)


def unit(n: int, i: int, c=1) -> Vector:
    return tuple(Fraction(c) if j == i else Fraction(0) for j in range(n))


def is_zero(x: Sequence) -> bool:
    return all(a == 0 for a in x)


def fmt_vec(x: Sequence) -> str:
    return "(" + ", ".join(_fs(a) for a in x) + ")"


def _fs(a) -> str:
    a = Fraction(a)
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def fmt_root(x: Sequence) -> str:
    """Human-readable combination of basis vectors, e.g. ``e1-e2`` or ``2e1``."""
    parts = []
    for i, a in enumerate(x):
        if a == 0:
            continue
        mag = abs(a)
        coef = "" if mag == 1 else _fs(mag)
        parts.append(("-" if a < 0 else "+") + f"{coef}e{i + 1}")
    if not parts:
        return "0"
    s = "".join(parts)
    return s[1:] if s[0] == "+" else s


def coroot(r: Sequence) -> Vector:
    rr = dot(r, r)
    return tuple(2 * a / rr for a in r)


def pairing(x: Sequence, r: Sequence) -> Fraction:
    """(x, r^V) = 2 (x, r) / (r, r)."""
    return 2 * dot(x, r) / dot(r, r)


def reflect_vector(r: Sequence, x: Sequence) -> Vector:
    """w_r(x) = x - 2 (r, x)/(r, r) r."""
    if is_zero(r):
        raise RootSystemError("cannot reflect in the zero vector")
    c = pairing(x, r)
    return tuple(a - c * b for a, b in zip(x, r))


def solve_exact(columns: Sequence[Sequence], target: Sequence) -> Optional[List[Fraction]]:
    """Solve sum_i c_i columns[i] = target exactly; None when inconsistent.

    The columns must be linearly independent.
    """
    m, k = len(target), len(columns)
    rows = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(m)]
    pivots = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [a / pv for a in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(rows[i][k] != 0 for i in range(r, m)):
        return None
    sol = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        sol[c] = rows[i][k]
    return sol


# -- Weyl group elements ----------------------------------------------------

@dataclass(frozen=True)
class WeylElement:
    """Element of a finite Weyl group: a word in simple reflections and its matrix.

    ``word`` is read like the product ``w_{i_0} w_{i_1} ...`` (leftmost letter
    applied last).  ``matrix`` acts on column vectors of ambient coordinates.
    """

    word: Tuple[int, ...]
    matrix: Tuple[Vector, ...]

    def act(self, x: Sequence) -> Vector:
        return tuple(dot(row, x) for row in self.matrix)

    def inverse_matrix(self) -> Tuple[Vector, ...]:
        # Weyl group matrices are orthogonal
        n = len(self.matrix)
        return tuple(tuple(self.matrix[j][i] for j in range(n)) for i in range(n))

    def act_inverse(self, x: Sequence) -> Vector:
        return tuple(dot(row, x) for row in self.inverse_matrix())

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        n = len(self.matrix)
        m = tuple(tuple(sum((self.matrix[i][k] * other.matrix[k][j] for k in range(n)), Fraction(0))
                        for j in range(n)) for i in range(n))
        return WeylElement(self.word + other.word, m)

    def is_identity(self) -> bool:
        n = len(self.matrix)
        return all(self.matrix[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))


def identity_matrix(n: int) -> Tuple[Vector, ...]:
    return tuple(unit(n, i) for i in range(n))


def reflection_matrix(r: Sequence) -> Tuple[Vector, ...]:
    n = len(r)
    cols = [reflect_vector(r, unit(n, j)) for j in range(n)]
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


# -- root systems -------------------------------------------------------------

@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    ambient_dim: int
    simple_roots: Tuple[Vector, ...]
    positive_roots: Tuple[Vector, ...]
    highest_root: Vector
    braid_orders: Dict[Tuple[int, int], int]
    # Hecke parameter of a root is q**hecke_powers[length class]
    hecke_powers: Dict[str, Fraction] = field(default_factory=lambda: {"short": Fraction(1), "long": Fraction(1)})

    @property
    def name(self) -> str:
        return "A1xA1" if self.family == "A1xA1" else f"{self.family}{self.rank}"

    @cached_property
    def roots(self) -> frozenset:
        return frozenset(self.positive_roots) | frozenset(neg(r) for r in self.positive_roots)

    @cached_property
    def _positive_set(self) -> frozenset:
        return frozenset(self.positive_roots)

    @cached_property
    def _long_norm(self) -> Fraction:
        return max(dot(r, r) for r in self.positive_roots)

    def is_root(self, r: Sequence) -> bool:
        return tuple(Fraction(a) for a in r) in self.roots

    def is_positive(self, r: Sequence) -> bool:
        return tuple(Fraction(a) for a in r) in self._positive_set

    def check_root(self, r: Sequence) -> Vector:
        r = vec(r)
        if not self.is_root(r):
            raise RootSystemError(f"{fmt_vec(r)} is not a root of {self.name}")
        return r

    def length_class(self, r: Sequence) -> str:
        if self.family in ("A", "D", "A1xA1"):
            return "long"
        return "long" if dot(r, r) == self._long_norm else "short"

    def hecke_power(self, r: Sequence) -> Fraction:
        return self.hecke_powers[self.length_class(r)]

    def with_hecke_powers(self, short=1, long=1) -> "RootSystem":
        return RootSystem(self.family, self.rank, self.ambient_dim, self.simple_roots,
                          self.positive_roots, self.highest_root, self.braid_orders,
                          {"short": Fraction(short), "long": Fraction(long)})

    def simple_coefficients(self, x: Sequence) -> Optional[List[Fraction]]:
        return solve_exact(self.simple_roots, x)

    def height(self, r: Sequence) -> Fraction:
        return sum(self.simple_coefficients(r), Fraction(0))

    def reflect(self, r: Sequence, x: Sequence) -> Vector:
        return reflect_vector(self.check_root(r), x)

    # -- coweights ---------------------------------------------------------
    @cached_property
    def fundamental_coweights(self) -> Tuple[Vector, ...]:
        """Dual basis to the simple roots: (omega_i, alpha_j) = delta_ij.

        In type A the GL lift e_1 + ... + e_i is used.
        """
        n = self.ambient_dim
        if self.family == "A":
            return tuple(tuple(Fraction(1 if j <= i else 0) for j in range(n)) for i in range(self.rank))
        out = []
        for i in range(self.rank):
            # omega in the span of the roots
            gram = [[dot(a, b) for b in self.simple_roots] for a in self.simple_roots]
            rhs = [Fraction(1 if j == i else 0) for j in range(self.rank)]
            c = solve_exact([[gram[k][j] for k in range(self.rank)] for j in range(self.rank)], rhs)
            v = [Fraction(0)] * n
            for cj, a in zip(c, self.simple_roots):
                v = [x + cj * y for x, y in zip(v, a)]
            out.append(tuple(v))
        return tuple(out)

    def is_coweight(self, x: Sequence) -> bool:
        """x in P^V: integral pairing with every root."""
        return all(dot(x, a).denominator == 1 for a in self.simple_roots)

    def is_dominant(self, x: Sequence) -> bool:
        return all(dot(x, a) >= 0 for a in self.simple_roots)

    def simple_pairings(self, x: Sequence) -> List[Fraction]:
        return [dot(x, a) for a in self.simple_roots]

    def in_coroot_lattice(self, x: Sequence, modulo_diagonal: bool = True) -> bool:
        """x in Q^V (in type A optionally modulo the diagonal direction)."""
        x = vec(x)
        if self.family == "A" and modulo_diagonal:
            mean = sum(x, Fraction(0)) / self.ambient_dim
            x = tuple(a - mean for a in x)
        c = solve_exact([coroot(a) for a in self.simple_roots], x)
        return c is not None and all(a.denominator == 1 for a in c)

    @cached_property
    def minuscule_weights(self) -> Tuple[Vector, ...]:
        """0 together with the dominant coweights gamma with (gamma, r_m) = 1."""
        out = [tuple(Fraction(0) for _ in range(self.ambient_dim))]
        for w in self.fundamental_coweights:
            if dot(w, self.highest_root) == 1:
                out.append(w)
        return tuple(out)

    def coweight_lattice_basis(self) -> Tuple[Vector, ...]:
        """A Z-basis of the translation lattice used for walk origins."""
        n = self.ambient_dim
        if self.family in ("A", "B", "A1xA1"):
            return tuple(unit(n, i) for i in range(n))
        if self.family in ("C", "D"):
            half = tuple(Fraction(1, 2) for _ in range(n))
            return tuple(unit(n, i) for i in range(n - 1)) + (half,)
        return tuple(coroot(a) for a in self.simple_roots)

    # -- Weyl group --------------------------------------------------------
    def simple_reflection(self, i: int) -> WeylElement:
        return WeylElement((i,), reflection_matrix(self.simple_roots[i]))

    def identity(self) -> WeylElement:
        return WeylElement((), identity_matrix(self.ambient_dim))

    def element(self, word: Sequence[int]) -> WeylElement:
        w = self.identity()
        for i in word:
            w = w * self.simple_reflection(i)
        return w

    def weyl_length(self, w: WeylElement) -> int:
        return sum(1 for r in self.positive_roots if not self.is_positive(w.act(r)))

    def reduced_word(self, w: WeylElement) -> Tuple[int, ...]:
        """Reduced word by descent: peel a simple right descent until length 0."""
        word: List[int] = []
        m = w.matrix
        cur = WeylElement((), m)
        while True:
            for i, a in enumerate(self.simple_roots):
                if not self.is_positive(cur.act(a)):
                    cur = cur * self.simple_reflection(i)
                    word.append(i)
                    break
            else:
                break
        return tuple(reversed(word))

    def reduce(self, w: WeylElement) -> WeylElement:
        return WeylElement(self.reduced_word(w), w.matrix)

    @cached_property
    def weyl_group(self) -> Tuple[WeylElement, ...]:
        """All elements with reduced words, by breadth-first search on lengths."""
        seen = {self.identity().matrix: self.identity()}
        frontier = [self.identity()]
        while frontier:
            nxt = []
            for w in frontier:
                for i in range(self.rank):
                    v = w * self.simple_reflection(i)
                    if v.matrix not in seen:
                        seen[v.matrix] = v
                        nxt.append(v)
            frontier = nxt
        return tuple(seen.values())

    @cached_property
    def longest_element(self) -> WeylElement:
        return max(self.weyl_group, key=lambda w: len(w.word))

    def to_text(self) -> str:
        lines = [f"family: {self.family}", f"rank: {self.rank}", f"ambient_dim: {self.ambient_dim}"]
        for i, a in enumerate(self.simple_roots):
            lines.append(f"simple_root {i + 1}: {fmt_vec(a)}")
        return "\n".join(lines)

    def describe(self) -> dict:
        return {
            "family": self.family,
            "rank": self.rank,
            "ambient_dim": self.ambient_dim,
            "simple_roots": [[_fs(a) for a in r] for r in self.simple_roots],
            "positive_roots": [[_fs(a) for a in r] for r in self.positive_roots],
            "highest_root": [_fs(a) for a in self.highest_root],
            "minuscule_weights": [[_fs(a) for a in r] for r in self.minuscule_weights],
            "fundamental_coweights": [[_fs(a) for a in r] for r in self.fundamental_coweights],
            "braid_orders": [{"pair": [i + 1, j + 1], "m": m} for (i, j), m in sorted(self.braid_orders.items())],
            "hecke_params": {k: ("q" if v == 1 else f"q^{_fs(v)}") for k, v in self.hecke_powers.items()},
            "weyl_group_order": len(self.weyl_group),
        }


def _simple_roots(family: str, rank: int) -> Tuple[int, List[Vector]]:
    n = rank
    if family == "A" and n >= 1:
        d = n + 1
        return d, [sub(unit(d, i), unit(d, i + 1)) for i in range(n)]
    if family == "B" and n >= 2:
        return n, [sub(unit(n, i), unit(n, i + 1)) for i in range(n - 1)] + [unit(n, n - 1)]
    if family == "C" and n >= 2:
        return n, [sub(unit(n, i), unit(n, i + 1)) for i in range(n - 1)] + [unit(n, n - 1, 2)]
    if family == "D" and n >= 3:
        return n, [sub(unit(n, i), unit(n, i + 1)) for i in range(n - 1)] + [add(unit(n, n - 2), unit(n, n - 1))]
    if family == "G" and n == 2:
        return 3, [vec((1, -1, 0)), vec((-2, 1, 1))]
    if family == "A1xA1" and n == 2:
        return 2, [unit(2, 0), unit(2, 1)]
    raise RootSystemError(f"unsupported root system ({family}, {rank}); supported: {SUPPORTED}")


def _braid_order(a: Vector, b: Vector) -> int:
    prod_ = pairing(a, b) * pairing(b, a)
    return {0: 2, 1: 3, 2: 4, 3: 6}[int(prod_)]


def build_root_system(family: str, rank: int) -> RootSystem:
    family = family.upper() if family.upper() != "A1XA1" else "A1xA1"
    if family == "G2":
        family = "G"
    dim, simple = _simple_roots(family, rank)
    # closure under simple reflections
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for a in simple:
                s = reflect_vector(a, r)
                if s not in roots:
                    roots.add(s)
                    nxt.append(s)
        frontier = nxt
    pos = []
    heights = {}
    for r in roots:
        c = solve_exact(simple, r)
        if c is None or any(x.denominator != 1 for x in c):
            raise AssertionError(f"root {r} is not an integral combination of simple roots")
        if all(x >= 0 for x in c):
            pos.append(r)
            heights[r] = sum(c)
        elif not all(x <= 0 for x in c):
            raise AssertionError(f"root {r} has mixed-sign simple coefficients")
    pos.sort(key=lambda r: (heights[r], tuple(-a for a in r)))
    braid = {(i, j): _braid_order(simple[i], simple[j])
             for i in range(rank) for j in range(i + 1, rank)}
    return RootSystem(family, rank, dim, tuple(simple), tuple(pos), pos[-1], braid)


def parse_type(spec: str, rank: Optional[int] = None) -> RootSystem:
    """Accept ``A2``, ``B3``, ``G2``, ``A1xA1`` or a family letter plus rank."""
    s = spec.strip()
    if s.upper() == "A1XA1":
        return build_root_system("A1xA1", 2)
    if rank is None:
        fam, num = s[:1], s[1:]
        if not num.isdigit():
            raise RootSystemError(f"cannot parse root system {spec!r}")
        return build_root_system(fam, int(num))
    if len(s) > 1 and s[1:].isdigit():
        if int(s[1:]) != rank:
            raise RootSystemError(f"type {spec!r} conflicts with rank {rank}")
        s = s[:1]
    return build_root_system(s, rank)

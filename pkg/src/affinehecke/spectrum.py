"""Spectral theory of the type-A operators S_j on polynomials.

Compositions k are exponent vectors of monomials z^k.  They are ordered by
dominance of their partitions (generated by squeezing moves) and, inside one
partition orbit, by the transitive closure of the off-diagonal support the
S_j actually produce.  In that order every S_j is triangular, its diagonal
gives the eigenvalue multiplet of z^k, and the joint eigenfunctions E_k
follow by back-substitution.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Dict, List, Optional, Sequence, Tuple

from .heckerep import PolyOperator, cherednik_typeA, compositions
from .laurent import LaurentPoly, QTFrac, QTPoly, common_denominator, monomial_order_key

Composition = Tuple[int, ...]

LESS, EQUAL, GREATER, INCOMPARABLE = "less", "equal", "greater", "incomparable"


class SpectrumError(RuntimeError):
    pass


class TriangularityError(SpectrumError):
    def __init__(self, row: Composition, col: Composition, value):
        super().__init__(f"entry at row {row}, column {col} is {value} but {row} is not below {col}")
        self.row, self.col, self.value = row, col, value


class DegeneracyError(SpectrumError):
    def __init__(self, k: Composition, colliding: Composition):
        super().__init__(f"eigenvalues of {colliding} coincide with those of {k}")
        self.k, self.colliding = k, colliding


def _comp(k: Sequence[int]) -> Composition:
    k = tuple(int(x) for x in k)
    if any(x < 0 for x in k):
        raise ValueError(f"composition {k} has a negative part")
    return k


def partition_of(k: Sequence[int]) -> Composition:
    return tuple(sorted(_comp(k), reverse=True))


def orbit(partition: Sequence[int]) -> List[Composition]:
    """Distinct rearrangements, in decreasing lexicographic order."""
    return sorted(set(permutations(_comp(partition))), reverse=True)


def dominates(p1: Sequence[int], p2: Sequence[int]) -> bool:
    """p1 >= p2 in dominance order (partial sums of p1 are never smaller)."""
    s1 = s2 = 0
    for a, b in zip(p1, p2):
        s1 += a
        s2 += b
        if s1 < s2:
            return False
    return True


def squeeze_once(p: Composition) -> List[Composition]:
    """Partitions reached from p by one move (.., a, .., b, ..) -> (.., a-1, .., b+1, ..) with a > b + 1."""
    out = set()
    for i, j in combinations(range(len(p)), 2):
        a, b = p[i], p[j]
        if a - b >= 2:
            q = list(p)
            q[i], q[j] = a - 1, b + 1
            out.add(tuple(sorted(q, reverse=True)))
    return sorted(out)


# -- operator images ---------------------------------------------------------------

@lru_cache(maxsize=None)
def _cherednik(n: int, j: int) -> PolyOperator:
    return cherednik_typeA(n, j)


@lru_cache(maxsize=None)
def _image(n: int, j: int, k: Composition) -> Tuple[Tuple[Composition, QTPoly], ...]:
    img = _cherednik(n, j).apply(LaurentPoly.monomial(k))
    return tuple(sorted(((tuple(int(x) for x in z), c) for z, c in img.coefficients().items()),
                        key=lambda zc: monomial_order_key(zc[0])))


def image_coefficients(n: int, j: int, k: Sequence[int]) -> Dict[Composition, QTPoly]:
    return dict(_image(n, j, _comp(k)))


@lru_cache(maxsize=None)
def orbit_order(n: int, partition: Composition) -> Dict[Composition, frozenset]:
    """For each orbit member k, the set of orbit members strictly below k.

    Built from the observed support of S_1..S_n on the orbit and closed
    transitively; a cycle means no triangular order exists.
    """
    members = orbit(partition)
    inside = set(members)
    below = {k: set() for k in members}
    for k in members:
        for j in range(1, n + 1):
            for z in image_coefficients(n, j, k):
                if z in inside and z != k:
                    below[k].add(z)
    changed = True
    while changed:
        changed = False
        for k in members:
            extra = set()
            for z in below[k]:
                extra |= below[z]
            if not extra <= below[k]:
                below[k] |= extra
                changed = True
    for k in members:
        if k in below[k]:
            raise SpectrumError(f"observed support of the S_j is cyclic on the orbit of {partition}")
    return {k: frozenset(v) for k, v in below.items()}


def order_leq(k1: Sequence[int], k2: Sequence[int], n: Optional[int] = None) -> str:
    """Relation of k1 to k2: less, equal, greater or incomparable."""
    k1, k2 = _comp(k1), _comp(k2)
    if len(k1) != len(k2):
        raise ValueError("compositions of different lengths")
    if sum(k1) != sum(k2):
        raise ValueError(f"degree mismatch: {k1} vs {k2}")
    if k1 == k2:
        return EQUAL
    p1, p2 = partition_of(k1), partition_of(k2)
    if p1 != p2:
        if dominates(p2, p1):
            return LESS
        if dominates(p1, p2):
            return GREATER
        return INCOMPARABLE
    below = orbit_order(n or len(k1), p1)
    if k1 in below[k2]:
        return LESS
    if k2 in below[k1]:
        return GREATER
    return INCOMPARABLE


def is_below(k1: Sequence[int], k2: Sequence[int]) -> bool:
    return order_leq(k1, k2) == LESS


@lru_cache(maxsize=None)
def spectral_basis(n: int, degree: int) -> Tuple[Composition, ...]:
    """Linear extension of the spectral order on degree-d compositions.

    Kahn's algorithm; among available minimal elements the smallest in the
    graded lexicographic monomial order is taken first.
    """
    comps = [tuple(c) for c in compositions(degree, n)]
    preds = {k: {k2 for k2 in comps if k2 != k and is_below(k2, k)} for k in comps}
    ready = [(monomial_order_key(k), k) for k in comps if not preds[k]]
    heapq.heapify(ready)
    out: List[Composition] = []
    done = set()
    while ready:
        _, k = heapq.heappop(ready)
        out.append(k)
        done.add(k)
        for k2 in comps:
            if k2 not in done and k in preds[k2]:
                preds[k2].discard(k)
                if not preds[k2] and all(k2 != r[1] for r in ready):
                    heapq.heappush(ready, (monomial_order_key(k2), k2))
    if len(out) != len(comps):
        raise SpectrumError("spectral order is not acyclic")
    return tuple(out)


# -- matrices ----------------------------------------------------------------------

@dataclass
class SpectralMatrix:
    """Matrix of a degree-preserving operator; entries[(row, col)] = coefficient of z^row in op(z^col)."""

    basis: Tuple[Composition, ...]
    entries: Dict[Tuple[Composition, Composition], QTPoly]

    def __getitem__(self, rc: Tuple[Composition, Composition]) -> QTPoly:
        return self.entries.get(rc, QTPoly())

    def diagonal(self) -> List[QTPoly]:
        return [self[k, k] for k in self.basis]

    def violations(self) -> List[Tuple[Composition, Composition, QTPoly]]:
        return [(r, c, v) for (r, c), v in sorted(self.entries.items())
                if r != c and not is_below(r, c)]

    def is_upper_triangular(self) -> bool:
        pos = {k: i for i, k in enumerate(self.basis)}
        return all(pos[r] <= pos[c] for (r, c) in self.entries)

    def rows(self) -> List[List[QTPoly]]:
        return [[self[r, c] for c in self.basis] for r in self.basis]


def matrix_of(op: PolyOperator, degree: int, n: int, check: bool = True) -> SpectralMatrix:
    basis = spectral_basis(n, degree)
    entries: Dict[Tuple[Composition, Composition], QTPoly] = {}
    for col in basis:
        img = op.apply(LaurentPoly.monomial(col))
        for z, c in img.coefficients().items():
            row = tuple(int(x) for x in z)
            if any(x < 0 for x in row) or sum(row) != degree:
                raise SpectrumError(f"operator does not preserve degree-{degree} polynomials: z^{col} -> {img}")
            entries[(row, col)] = c
    m = SpectralMatrix(basis, entries)
    if check:
        bad = m.violations()
        if bad:
            raise TriangularityError(*bad[0])
    return m


def cherednik_matrix(n: int, j: int, degree: int, check: bool = True) -> SpectralMatrix:
    basis = spectral_basis(n, degree)
    entries = {}
    for col in basis:
        for row, c in image_coefficients(n, j, col).items():
            entries[(row, col)] = c
    m = SpectralMatrix(basis, entries)
    if check:
        bad = m.violations()
        if bad:
            raise TriangularityError(*bad[0])
    return m


# -- multiplets and eigenfunctions -------------------------------------------------

def diagonal_entry(n: int, j: int, k: Sequence[int]) -> QTPoly:
    return image_coefficients(n, j, k).get(_comp(k), QTPoly())


def eigen_multiplet(n: int, k: Sequence[int]) -> List[QTPoly]:
    """Diagonal entries of S_1..S_n at z^k."""
    k = _comp(k)
    if len(k) != n:
        raise ValueError(f"composition {k} does not have {n} parts")
    return [diagonal_entry(n, j, k) for j in range(1, n + 1)]


def predicted_multiplet(n: int, partition: Sequence[int]) -> List[QTPoly]:
    """(t^{k_j} q^{n+1-2j}) for the decreasing partition k."""
    p = partition_of(partition)
    return [QTPoly.monomial(n + 1 - 2 * j, p[j - 1]) for j in range(1, n + 1)]


def _multiset(vals) -> List[str]:
    return sorted(str(v) for v in vals)


def multiplet_matches(n: int, k: Sequence[int]) -> bool:
    """The multiplet of z^k is a permutation of the predicted one for its partition."""
    return _multiset(eigen_multiplet(n, k)) == _multiset(predicted_multiplet(n, partition_of(k)))


@dataclass
class RationalPoly:
    """Polynomial in z with coefficients in the (q, t) fraction field."""

    n: int
    coefficients: Dict[Composition, QTFrac]

    def cleared(self) -> Tuple[LaurentPoly, QTPoly]:
        """(N, D) with self = N / D and N a LaurentPoly."""
        d = common_denominator(self.coefficients.values())
        out = {}
        for k, c in self.coefficients.items():
            out[k] = (c * QTFrac(d)).as_poly()
        return LaurentPoly.from_coefficients(self.n, out), d

    def support(self) -> List[Composition]:
        return sorted(self.coefficients, key=monomial_order_key)

    def to_json(self):
        return [{"exponents": [str(x) for x in k], "coeff": self.coefficients[k].to_json(),
                 "coeff_str": self.coefficients[k].to_string()}
                for k in sorted(self.coefficients, key=monomial_order_key, reverse=True)]

    def to_string(self, s_variable: bool = False) -> str:
        parts = []
        for k in sorted(self.coefficients, key=monomial_order_key, reverse=True):
            mono = LaurentPoly.monomial(k).to_string()
            c = self.coefficients[k]
            if c == QTFrac(1):
                parts.append(mono)
            else:
                cs = c.to_string(s_variable)
                parts.append(f"({cs})" if mono == "1" else f"({cs})*{mono}")
        return " + ".join(parts) if parts else "0"


@dataclass
class SpectralRecord:
    composition: Composition
    multiplet: List[QTPoly]
    eigenfunction: RationalPoly
    hamiltonian_values: List[QTPoly]
    verified: bool = False
    momenta: Optional[List[Fraction]] = None

    def to_json(self):
        out = {
            "composition": list(self.composition),
            "partition": list(partition_of(self.composition)),
            "multiplet": [str(v) for v in self.multiplet],
            "hamiltonian_values": [str(v) for v in self.hamiltonian_values],
            "eigenfunction": self.eigenfunction.to_string(),
            "eigenfunction_terms": self.eigenfunction.to_json(),
            "verified": self.verified,
        }
        if self.momenta is not None:
            out["momenta"] = [str(m) for m in self.momenta]
        return out


def elementary_symmetric(vals: Sequence[QTPoly], l: int) -> QTPoly:
    total = QTPoly()
    for c in combinations(vals, l):
        p = QTPoly.const(1)
        for v in c:
            p = p * v
        total = total + p
    return total


def _solve(n: int, k: Composition) -> Dict[Composition, QTFrac]:
    basis = spectral_basis(n, sum(k))
    lam = eigen_multiplet(n, k)
    below = [k2 for k2 in basis if is_below(k2, k)]
    coeff: Dict[Composition, QTFrac] = {k: QTFrac(1)}
    for k2 in reversed(below):
        # row k2 of (S_j - lambda_j) E = 0, using the first j that separates k2 from k
        for j in range(1, n + 1):
            diff = diagonal_entry(n, j, k2) - lam[j - 1]
            if not diff:
                continue
            acc = QTFrac(0)
            for k3, c in coeff.items():
                e = image_coefficients(n, j, k3).get(k2)
                if e:
                    acc = acc + QTFrac(e) * c
            val = -acc / QTFrac(diff)
            if val:
                coeff[k2] = val
            break
        else:
            raise DegeneracyError(k, k2)
    return coeff


def verify_eigenfunction(n: int, e: RationalPoly, multiplet: Sequence[QTPoly]) -> bool:
    """S_j E = lambda_j E for all j, by direct operator application to the cleared numerator."""
    num, _ = e.cleared()
    for j in range(1, n + 1):
        if cherednik_typeA(n, j).apply(num) != num.scale(multiplet[j - 1]):
            return False
    return True


def eigenfunction(n: int, k: Sequence[int], verify: bool = True) -> SpectralRecord:
    k = _comp(k)
    if len(k) != n:
        raise ValueError(f"composition {k} does not have {n} parts")
    coeff = _solve(n, k)
    e = RationalPoly(n, coeff)
    mult = eigen_multiplet(n, k)
    ham = [elementary_symmetric(mult, l) for l in range(1, n + 1)]
    rec = SpectralRecord(k, mult, e, ham)
    if verify:
        rec.verified = verify_eigenfunction(n, e, mult)
        if not rec.verified:
            raise SpectrumError(f"E_{k} fails the eigenvalue equations")
    return rec


def hamiltonian_spectrum(n: int, l: int, partition: Sequence[int]) -> List[Tuple[Composition, QTPoly]]:
    """e_l of the multiplet for every composition in the orbit of ``partition``."""
    if not 1 <= l <= n:
        raise IndexError(f"l = {l} out of range 1..{n}")
    return [(k, elementary_symmetric(eigen_multiplet(n, k), l)) for k in orbit(partition)]


# -- momenta -----------------------------------------------------------------------

def momenta(multiplet: Sequence[QTPoly], beta: Fraction) -> List[Fraction]:
    """K with t^K the value of each entry t^a q^b under q = t^{beta/2}: K = a + beta b / 2."""
    out = []
    for v in multiplet:
        if not v.is_monomial():
            raise ValueError(f"{v} is not a monomial")
        (qh, th), c = next(iter(v.terms.items()))
        if c != 1:
            raise ValueError(f"{v} has coefficient {c}")
        out.append(Fraction(th, 2) + Fraction(beta) * Fraction(qh, 2) / 2)
    return out


def pauli_gaps(n: int, k: Sequence[int], beta) -> List[Fraction]:
    """Gaps between the sorted momenta of the multiplet of z^k."""
    ks = sorted(momenta(eigen_multiplet(n, k), Fraction(beta)))
    return [b - a for a, b in zip(ks, ks[1:])]


def pauli_check(n: int, partition: Sequence[int], beta) -> bool:
    """Every orbit member has momentum gaps >= beta (partition with distinct parts)."""
    beta = Fraction(beta)
    return all(g >= beta for k in orbit(partition) for g in pauli_gaps(n, k, beta))

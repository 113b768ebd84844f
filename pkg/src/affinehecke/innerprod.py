"""Constant-term scalar product for the type-A operators.

    <p1, p2> = CT( bar(p1) p2 C ),
    C = prod_{i<j} prod_{l=-kappa}^{kappa-1} (t^{l/2} (z_i/z_j)^{1/2} - t^{-l/2} (z_j/z_i)^{1/2})

with q specialized to t^{kappa/2}.  bar inverts z, q and t.  Values are
reported in s = t^{1/2}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .heckerep import PolyOperator, polynomial_window
from .laurent import LaurentPoly, QTFrac, QTPoly, SpecializationError
from .spectrum import Composition, DegeneracyError, RationalPoly, compositions, eigenfunction


class MeasureError(ArithmeticError):
    pass


@dataclass(frozen=True)
class MeasureSpec:
    n: int
    kappa: int
    measure: LaurentPoly
    bar_sign: int = 1


def _half(i: int, j: int, n: int, sign: int) -> Tuple[Fraction, ...]:
    return tuple(Fraction(sign, 2) if k == i else Fraction(-sign, 2) if k == j else Fraction(0)
                 for k in range(n))


@lru_cache(maxsize=None)
def build_measure(n: int, kappa: int) -> MeasureSpec:
    if kappa < 0:
        raise ValueError("kappa must be non-negative")
    c = LaurentPoly.constant(n, 1)
    for i in range(n):
        for j in range(i + 1, n):
            for l in range(-kappa, kappa):
                f = (LaurentPoly.monomial(_half(i, j, n, 1), QTPoly.t(Fraction(l, 2)))
                     - LaurentPoly.monomial(_half(i, j, n, -1), QTPoly.t(Fraction(-l, 2))))
                c = c * f
    for z in c.coefficients():
        if any(Fraction(x).denominator != 1 for x in z):
            raise MeasureError(f"measure has a non-integral exponent {z}")
    if c.bar() == c:
        sign = 1
    elif c.bar() == -c:
        sign = -1
    else:
        raise MeasureError("measure is not bar-invariant up to sign")
    return MeasureSpec(n, kappa, c, sign)


def _specialized(p: LaurentPoly) -> LaurentPoly:
    if p.involves_q():
        raise SpecializationError("q must be specialized before pairing")
    return p


def pair_with(x: LaurentPoly, y_times_c: LaurentPoly) -> QTFrac:
    """CT(bar(x) * Y) for a precomputed Y = p2 * C."""
    total = QTPoly()
    yc = y_times_c.coefficients()
    for z, c in x.coefficients().items():
        d = yc.get(z)
        if d is not None:
            total = total + c.bar() * d
    return QTFrac(total)


def scalar_product(p1: LaurentPoly, p2: LaurentPoly, spec: MeasureSpec) -> QTFrac:
    p1, p2 = _specialized(p1), _specialized(p2)
    return pair_with(p1, p2 * spec.measure)


def specialize(p: LaurentPoly, kappa: int) -> LaurentPoly:
    return p.specialize(kappa)


def rational_specialize(e: RationalPoly, kappa: int) -> Tuple[LaurentPoly, QTFrac]:
    """(N, D) with N a specialized LaurentPoly and D a nonzero specialized scalar."""
    num, den = e.cleared()
    d = den.specialize(kappa)
    if d.is_zero():
        raise SpecializationError(f"eigenfunction denominator {den} vanishes at q = t^({kappa}/2)")
    return num.specialize(kappa), QTFrac(d)


def rational_product(e1: RationalPoly, e2: RationalPoly, spec: MeasureSpec) -> QTFrac:
    n1, d1 = rational_specialize(e1, spec.kappa)
    n2, d2 = rational_specialize(e2, spec.kappa)
    return scalar_product(n1, n2, spec) / (d1.bar() * d2)


@dataclass
class AdjointReport:
    cases: int = 0
    failures: List[Tuple[LaurentPoly, LaurentPoly, QTFrac, QTFrac]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_adjoint(op: PolyOperator, adj: PolyOperator, spec: MeasureSpec,
                  window: Iterable[LaurentPoly], max_failures: int = 5) -> AdjointReport:
    """<op p1, p2> = <p1, adj p2> for all pairs of the window."""
    k = spec.kappa
    window = list(window)
    left = [op.apply(p).specialize(k) for p in window]
    plain = [p.specialize(k) for p in window]
    right = [adj.apply(p).specialize(k) * spec.measure for p in window]
    plain_c = [p * spec.measure for p in plain]
    rep = AdjointReport()
    for i, p1 in enumerate(window):
        for j, p2 in enumerate(window):
            rep.cases += 1
            a = pair_with(left[i], plain_c[j])
            b = pair_with(plain[i], right[j])
            if a != b and len(rep.failures) < max_failures:
                rep.failures.append((p1, p2, a, b))
    return rep


@dataclass
class OrthogonalityReport:
    n: int
    kappa: int
    degree: int
    compositions: List[Composition] = field(default_factory=list)
    gram: Dict[Tuple[Composition, Composition], QTFrac] = field(default_factory=dict)
    skipped: List[Tuple[Composition, str]] = field(default_factory=list)
    failures: List[Tuple[Composition, Composition, QTFrac]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self):
        comps = self.compositions
        return {
            "n": self.n,
            "kappa": self.kappa,
            "degree": self.degree,
            "variable": "s = t^(1/2)",
            "compositions": [list(k) for k in comps],
            "gram": [[self.gram[(a, b)].to_string(s_variable=True) if (a, b) in self.gram else None
                      for b in comps] for a in comps],
            "skipped": [{"composition": list(k), "reason": r} for k, r in self.skipped],
            "failures": [[list(a), list(b), v.to_string(s_variable=True)] for a, b, v in self.failures],
        }


def eigenbasis(n: int, degree: int) -> List[Composition]:
    out: List[Composition] = []
    for d in range(degree + 1):
        out.extend(tuple(c) for c in compositions(d, n))
    return out


def orthogonality_check(n: int, kappa: int, degree: int) -> OrthogonalityReport:
    """Gram matrix of the E_k up to ``degree``; distinct pairs must vanish."""
    spec = build_measure(n, kappa)
    rep = OrthogonalityReport(n, kappa, degree)
    specialized: Dict[Composition, Tuple[LaurentPoly, QTFrac]] = {}
    for k in eigenbasis(n, degree):
        try:
            specialized[k] = rational_specialize(eigenfunction(n, k).eigenfunction, kappa)
        except (DegeneracyError, SpecializationError) as exc:
            rep.skipped.append((k, str(exc)))
    rep.compositions = list(specialized)
    times_c = {k: nd[0] * spec.measure for k, nd in specialized.items()}
    for a, (na, da) in specialized.items():
        for b in specialized:
            val = pair_with(na, times_c[b]) / (da.bar() * specialized[b][1])
            rep.gram[(a, b)] = val
            if a != b and val:
                rep.failures.append((a, b, val))
    return rep


def default_window(n: int, degree: int) -> List[LaurentPoly]:
    return polynomial_window(n, degree)

"""Weyl-relation form of the spectral-parameter Yang-Baxter generators.

The carrier is (z-rational functions) tensor (regular module of the finite
Hecke algebra).  An element is stored as ``numerator / denominator`` where
the numerator maps basis labels T_w to Laurent polynomials in z and the
denominator is a common z-polynomial kept as a list of factors.

    y_r = s_r (e^r f_r - f_r^{-1}) / (e^r q_r - q_r^{-1})

with f_r the left multiplication by T_r and s_r acting on z only.  The
identities y_r^2 = 1 and (y_r y_s)^{m_rs} = 1 are checked by clearing
denominators: after the operators are applied, numerator must equal
denominator times the starting element.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .laurent import LaurentPoly, QTPoly, half_units
from .rootsys import RootSystem, WeylElement, coroot, fmt_root, fmt_vec, neg, parse_type, vec

Matrix = Tuple[Tuple[Fraction, ...], ...]


class HeckeRegular:
    """Regular left module of the finite Hecke algebra of ``rs``."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.elements: Dict[Matrix, WeylElement] = {w.matrix: w for w in rs.weyl_group}
        self.length: Dict[Matrix, int] = {m: len(w.word) for m, w in self.elements.items()}
        self.identity = rs.identity().matrix
        self._left: Dict[Tuple[int, Matrix], Tuple[Matrix, bool]] = {}
        for i in range(rs.rank):
            s = rs.simple_reflection(i)
            for m, w in self.elements.items():
                sw = (s * w).matrix
                self._left[(i, m)] = (sw, self.length[sw] > self.length[m])

    def label(self, m: Matrix) -> Tuple[int, ...]:
        return self.elements[m].word

    def left_mult(self, i: int, elt: Dict[Matrix, object], power=1) -> Dict[Matrix, object]:
        """T_i * elt with T_i T_w = T_{s_i w} (length up) or T_{s_i w} + (q - q^{-1}) T_w."""
        p2 = half_units(power)
        dq = QTPoly({(p2, 0): 1, (-p2, 0): -1})
        out: Dict[Matrix, object] = {}
        for m, c in elt.items():
            sw, up = self._left[(i, m)]
            _add(out, sw, c)
            if not up:
                _add(out, m, c * dq)
        return out


def _add(d: Dict, k, v):
    cur = d.get(k)
    s = v if cur is None else cur + v
    if s:
        d[k] = s
    else:
        d.pop(k, None)


def hecke_left_mult(rs: RootSystem, i: int, elt: Dict[Matrix, object],
                    module: Optional[HeckeRegular] = None) -> Dict[Matrix, object]:
    module = module or HeckeRegular(rs)
    return module.left_mult(i, elt, rs.hecke_power(rs.simple_roots[i]))


@dataclass
class CarrierElement:
    """numerator / product(denominator factors)."""

    numerator: Dict[Matrix, LaurentPoly]
    factors: List[LaurentPoly] = field(default_factory=list)

    def denominator(self, dim: int) -> LaurentPoly:
        d = LaurentPoly.constant(dim, 1)
        for f in self.factors:
            d = d * f
        return d


def _reflect_poly(p: LaurentPoly, r, rv) -> LaurentPoly:
    out = {}
    for (z, a, b), c in p.terms.items():
        m = sum(x * y for x, y in zip(z, rv))
        m = int(m)
        z2 = tuple(_n(x - m * y) for x, y in zip(z, r))
        out[(z2, a, b)] = c
    return LaurentPoly.from_terms(p.dim, out)


def _n(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


class YOperator:
    """y_r for a simple root index i."""

    def __init__(self, rs: RootSystem, i: int, module: HeckeRegular):
        self.rs = rs
        self.i = i
        self.module = module
        r = rs.simple_roots[i]
        self.power = rs.hecke_power(r)
        self.r = tuple(_n(a) for a in r)
        self.rv = tuple(_n(a) for a in coroot(r))
        dim = rs.ambient_dim
        p2 = half_units(self.power)
        self.er = LaurentPoly.monomial(self.r)
        self.q = QTPoly({(p2, 0): 1})
        self.qinv = QTPoly({(-p2, 0): 1})
        self.dq = self.q - self.qinv
        # s_r applied to the denominator factor (e^r q - q^{-1})
        self.den = _reflect_poly(self.er.scale(self.q) - LaurentPoly.constant(dim, self.qinv), self.r, self.rv)

    def apply(self, v: CarrierElement) -> CarrierElement:
        f = self.module.left_mult(self.i, v.numerator, self.power)
        # e^r f N - f^{-1} N with f^{-1} = f - (q - q^{-1})
        out: Dict[Matrix, LaurentPoly] = {}
        for m, c in f.items():
            _add(out, m, self.er * c - c)
        for m, c in v.numerator.items():
            _add(out, m, c.scale(self.dq))
        num = {m: _reflect_poly(c, self.r, self.rv) for m, c in out.items()}
        factors = [_reflect_poly(f, self.r, self.rv) for f in v.factors]
        return CarrierElement(num, factors + [self.den])


def y_operator(rs: RootSystem, i: int, module: Optional[HeckeRegular] = None) -> YOperator:
    return YOperator(rs, i, module or HeckeRegular(rs))


def basis_window(rs: RootSystem, d: int = 1) -> List[LaurentPoly]:
    """z-monomials e^{sum c_i alpha_i} with c_i in [-d, d]."""
    out = []
    for c in product(range(-d, d + 1), repeat=rs.rank):
        lam = [Fraction(0)] * rs.ambient_dim
        for ci, a in zip(c, rs.simple_roots):
            lam = [x + ci * y for x, y in zip(lam, a)]
        out.append(LaurentPoly.monomial(lam))
    return out


@dataclass
class RelationFailure:
    relation: str
    monomial: LaurentPoly
    basis: Tuple[int, ...]
    lhs: Dict[Tuple[int, ...], LaurentPoly]
    rhs: Dict[Tuple[int, ...], LaurentPoly]


@dataclass
class WeylRelationReport:
    system: str
    cases: int = 0
    failures: List[RelationFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_word(ops: Sequence[YOperator], start: CarrierElement, dim: int) -> Tuple[bool, Dict, Dict]:
    """Apply ops right to left and test equality with the identity after clearing denominators."""
    v = start
    for op in reversed(ops):
        v = op.apply(v)
    d = v.denominator(dim)
    lhs = {m: c for m, c in v.numerator.items() if c}
    rhs = {m: d * c for m, c in start.numerator.items()}
    rhs = {m: c for m, c in rhs.items() if c}
    return lhs == rhs, lhs, rhs


def verify_weyl_relations(rs: RootSystem, d: int = 1, max_failures: int = 5) -> WeylRelationReport:
    """y_r^2 = 1 for every simple r and (y_r y_s)^{m_rs} = 1 for every simple pair."""
    module = HeckeRegular(rs)
    ys = [YOperator(rs, i, module) for i in range(rs.rank)]
    words: List[Tuple[str, List[YOperator]]] = []
    for i in range(rs.rank):
        words.append((f"y_{i + 1}^2", [ys[i], ys[i]]))
    for (i, j), m in sorted(rs.braid_orders.items()):
        words.append((f"(y_{i + 1} y_{j + 1})^{m}", [ys[i], ys[j]] * m))
    report = WeylRelationReport(rs.name)
    for mono in basis_window(rs, d):
        for wm in module.elements:
            start = CarrierElement({wm: mono})
            for name, ops in words:
                report.cases += 1
                ok, lhs, rhs = check_word(ops, start, rs.ambient_dim)
                if not ok and len(report.failures) < max_failures:
                    report.failures.append(RelationFailure(
                        name, mono, module.label(wm),
                        {module.label(k): v for k, v in lhs.items()},
                        {module.label(k): v for k, v in rhs.items()}))
    return report


def ybb_roots(rs: RootSystem, i: int, j: int) -> List[Tuple[Fraction, ...]]:
    """Root sequence r_1 = s, r_2 = w_s(r), r_3 = w_s w_r(s), ... of length m_rs.

    Here r = alpha_i and s = alpha_j; the last root equals r.
    """
    a, b = rs.simple_roots[i], rs.simple_roots[j]
    m = rs.braid_orders[(min(i, j), max(i, j))]
    out = []
    for k in range(m):
        # alternate the reflections w_s w_r w_s ... applied to s or r
        target = b if k % 2 == 0 else a
        refl = [b if t % 2 == 0 else a for t in range(k)]
        v = target
        for rr in reversed(refl):
            v = rs.reflect(rr, v)
        out.append(v)
    return out

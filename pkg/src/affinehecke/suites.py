"""Verification suites shared by the CLI and the acceptance tests.

Every suite returns a ``SuiteReport``; a suite passes when it records no
failures.  Failures carry the witness monomial and both sides.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence

from .affine import base_point, geodesic_word
from .heckerep import (
    Comparison,
    Compose,
    Identity,
    PolyOperator,
    Scale,
    Sum,
    bernstein_check,
    cherednik_typeA,
    cherednik_typeA_inverse,
    compare_on,
    eval_word,
    eval_word_inverse,
    g_adjacent,
    hamiltonian,
    op_g,
    op_g_inv,
    op_x_limit,
    op_x_limit_inv,
    polynomial_window,
    scattering_operator,
    type_a,
    window,
)
from .laurent import QTPoly, half_units
from .rootsys import RootSystem, Vector, add, dot, fmt_root, fmt_vec, vec

SUITES = ("quadratic", "braid", "yang-baxter", "affine-hecke", "exchange", "commute", "center",
          "bernstein", "unitarity", "adjoint", "triangularity")


@dataclass
class SuiteReport:
    suite: str
    system: str
    window: str
    cases: int = 0
    failures: List[dict] = field(default_factory=list)
    checks: List[dict] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def add(self, relation: str, cmp: Comparison, limit: int = 5) -> bool:
        self.cases += cmp.cases
        self.checks.append({"relation": relation, "cases": cmp.cases, "ok": cmp.ok})
        for m, lhs, rhs in cmp.failures[:limit]:
            self.failures.append({"relation": relation, "monomial": str(m), "lhs": str(lhs), "rhs": str(rhs)})
        return cmp.ok

    def add_flag(self, relation: str, ok: bool, detail: Optional[dict] = None) -> bool:
        self.cases += 1
        self.checks.append({"relation": relation, "cases": 1, "ok": ok})
        if not ok:
            self.failures.append(dict({"relation": relation}, **(detail or {})))
        return ok

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "system": self.system,
            "window": self.window,
            "cases": self.cases,
            "passed": self.ok,
            "checks": self.checks,
            "failures": self.failures,
        }


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.seconds = time.perf_counter() - t0
        return rep
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _q(rs: RootSystem, r) -> QTPoly:
    return QTPoly({(half_units(rs.hecke_power(r)), 0): 1})


def _box(d: int) -> str:
    return f"exponents in [-{d},{d}]"


# -- finite Hecke relations --------------------------------------------------------

@_timed
def quadratic_suite(rs: RootSystem, d: int = 2) -> SuiteReport:
    """(g - q)(g + q^{-1}) = 0 for every simple root."""
    rep = SuiteReport("quadratic", rs.name, _box(d))
    mons = window(rs, d)
    for i, r in enumerate(rs.simple_roots):
        g = op_g(rs, r)
        q = _q(rs, r)
        lhs = Compose([Sum([g, Scale(-q)]), Sum([g, Scale(q.bar())])])
        zero = Scale(QTPoly())
        rep.add(f"(g_{i + 1} - q)(g_{i + 1} + q^-1) = 0", compare_on(lhs, zero, mons))
        rep.add(f"g_{i + 1} g_{i + 1}^-1 = 1", compare_on(Compose([g, op_g_inv(rs, r)]), Identity(), mons))
    return rep


def _alternating(a: PolyOperator, b: PolyOperator, m: int) -> Compose:
    return Compose([a if k % 2 == 0 else b for k in range(m)])


@_timed
def braid_suite(rs: RootSystem, d: int = 2) -> SuiteReport:
    rep = SuiteReport("braid", rs.name, _box(d))
    mons = window(rs, d)
    for (i, j), m in sorted(rs.braid_orders.items()):
        gi, gj = op_g(rs, rs.simple_roots[i]), op_g(rs, rs.simple_roots[j])
        rep.add(f"(g_{i + 1} g_{j + 1})^{m}/2 braid, m = {m}",
                compare_on(_alternating(gi, gj, m), _alternating(gj, gi, m), mons))
    return rep


@_timed
def yang_baxter_suite(rs: RootSystem, d: int = 1) -> SuiteReport:
    from .yangbaxter import verify_weyl_relations

    res = verify_weyl_relations(rs, d)
    rep = SuiteReport("yang-baxter", rs.name, f"root-lattice monomials with coefficients in [-{d},{d}] x all T_w")
    rep.cases = res.cases
    rep.checks.append({"relation": "y_r^2 = 1 and (y_r y_s)^m = 1", "cases": res.cases, "ok": res.ok})
    for f in res.failures:
        rep.failures.append({"relation": f.relation, "monomial": str(f.monomial), "basis": list(f.basis),
                             "lhs": {str(k): str(v) for k, v in f.lhs.items()},
                             "rhs": {str(k): str(v) for k, v in f.rhs.items()}})
    return rep


@_timed
def unitarity_suite(rs: RootSystem, d: int = 2) -> SuiteReport:
    """x_{-r} x_r = 1 for every positive root, and word times inverse word = 1."""
    rep = SuiteReport("unitarity", rs.name, _box(d))
    mons = window(rs, d)
    for r in rs.positive_roots:
        rep.add(f"x_-({fmt_root(r)}) x_{fmt_root(r)} = 1",
                compare_on(Compose([op_x_limit_inv(rs, r), op_x_limit(rs, r)]), Identity(), mons))
        rep.add(f"x_{fmt_root(r)} x_-({fmt_root(r)}) = 1",
                compare_on(Compose([op_x_limit(rs, r), op_x_limit_inv(rs, r)]), Identity(), mons))
    for xi in rs.fundamental_coweights:
        w = geodesic_word(rs, xi)
        rep.add(f"S_{fmt_vec(xi)} S_{fmt_vec(xi)}^-1 = 1",
                compare_on(Compose([eval_word(rs, w), eval_word_inverse(rs, w)]), Identity(), mons))
    return rep


# -- affine Hecke relations --------------------------------------------------------

def default_xis(rs: RootSystem) -> List[Vector]:
    """Fundamental coweights together with the minuscule weights."""
    out: List[Vector] = []
    for v in list(rs.fundamental_coweights) + list(rs.minuscule_weights):
        if v not in out:
            out.append(v)
    return out


@_timed
def affine_hecke_suite(rs: RootSystem, d: int = 3, xis: Optional[Sequence] = None,
                       form: str = "stated") -> SuiteReport:
    """Relations between g_r (r simple) and S_xi.

    (r, xi) = 0: g_r S_xi = S_xi g_r.
    (r, xi) = 1, form "stated":  g_r S_xi = S_{w_r xi} g_r^{-1}.
    (r, xi) = 1, form "derived": g_r^{-1} S_xi = S_{w_r xi} g_r.
    """
    if form not in ("stated", "derived"):
        raise ValueError(f"unknown form {form!r}")
    rep = SuiteReport("affine-hecke", rs.name, f"{_box(d)}, form {form}")
    mons = window(rs, d)
    xis = [vec(x) for x in (xis if xis is not None else default_xis(rs))]
    ops: Dict[Vector, PolyOperator] = {}

    def S(x):
        if x not in ops:
            ops[x] = scattering_operator(rs, x)
        return ops[x]

    for xi in xis:
        for i, r in enumerate(rs.simple_roots):
            p = dot(r, xi)
            g, gi = op_g(rs, r), op_g_inv(rs, r)
            if p == 0:
                rep.add(f"g_{i + 1} S_{fmt_vec(xi)} = S_{fmt_vec(xi)} g_{i + 1}",
                        compare_on(Compose([g, S(xi)]), Compose([S(xi), g]), mons))
            elif p == 1:
                wx = rs.reflect(r, xi)
                if form == "stated":
                    rel = f"g_{i + 1} S_{fmt_vec(xi)} = S_{fmt_vec(wx)} g_{i + 1}^-1"
                    cmp = compare_on(Compose([g, S(xi)]), Compose([S(wx), gi]), mons)
                else:
                    rel = f"g_{i + 1}^-1 S_{fmt_vec(xi)} = S_{fmt_vec(wx)} g_{i + 1}"
                    cmp = compare_on(Compose([gi, S(xi)]), Compose([S(wx), g]), mons)
                rep.add(rel, cmp)
    return rep


@_timed
def commute_suite(rs: RootSystem, d: int = 3, xis: Optional[Sequence] = None) -> SuiteReport:
    """S_a S_b = S_b S_a = S_{a+b} and independence of the base point."""
    rep = SuiteReport("commute", rs.name, _box(d))
    mons = window(rs, d)
    xis = [vec(x) for x in (xis if xis is not None else rs.fundamental_coweights)]
    ops = {x: scattering_operator(rs, x) for x in xis}
    sums = {}
    for a_i, a in enumerate(xis):
        for b in xis[a_i:]:
            ab = Compose([ops[a], ops[b]])
            ba = Compose([ops[b], ops[a]])
            s = sums[(a, b)] = scattering_operator(rs, add(a, b))
            rep.add(f"S_{fmt_vec(a)} S_{fmt_vec(b)} = S_{fmt_vec(add(a, b))}", compare_on(ab, s, mons))
            if a != b:
                rep.add(f"S_{fmt_vec(b)} S_{fmt_vec(a)} = S_{fmt_vec(add(a, b))}", compare_on(ba, s, mons))
    alt = alternate_base_point(rs)
    differ = []
    for a_i, a in enumerate(xis):
        for b in xis[a_i:]:
            x = add(a, b)
            w0, w1 = geodesic_word(rs, x), geodesic_word(rs, x, alt)
            if w0.tokens != w1.tokens:
                differ.append(fmt_vec(x))
            rep.add(f"S_{fmt_vec(x)} independent of the base point",
                    compare_on(sums[(a, b)], eval_word(rs, w1), mons))
    rep.add_flag("some pair of base points yields distinct words", bool(differ) or not xis,
                 {"distinct_words_for": differ})
    return rep


def alternate_base_point(rs: RootSystem) -> Vector:
    """A generic point of the starting alcove away from the default one (near a vertex)."""
    from .affine import alcove_vertices, PRIMES
    from .rootsys import neg, smul

    vs = alcove_vertices(rs)
    weights = [Fraction(1)] * len(vs)
    weights[1] = Fraction(12)
    tot = sum(weights)
    p = tuple(sum(w * v[k] for w, v in zip(weights, vs)) / tot for k in range(rs.ambient_dim))
    p = add(neg(p), tuple(Fraction(1, 997 * PRIMES[i] ** 2) for i in range(rs.ambient_dim)))
    assert all(-1 < dot(r, p) < 0 for r in rs.positive_roots)
    return p


@_timed
def bernstein_suite(rs: RootSystem, d: int = 2, xis: Optional[Sequence] = None) -> SuiteReport:
    rep = SuiteReport("bernstein", rs.name, _box(d))
    mons = window(rs, d)
    xis = [vec(x) for x in (xis if xis is not None else rs.fundamental_coweights)]
    for xi in xis:
        res = bernstein_check(rs, xi, mons)
        label = f"S_{fmt_vec(xi)} = t^(-gamma) w^-1 g_({','.join(str(i) for i in res.affine_word)})"
        detail = {"gamma": fmt_vec(res.gamma), "weyl_word": [i + 1 for i in res.weyl_word],
                  "affine_word": list(res.affine_word), "length_ok": res.length_ok, "gamma_ok": res.gamma_ok}
        if res.comparison is not None:
            rep.add(label, res.comparison)
        rep.add_flag(f"{label}: reduced affine word, length and gamma", res.length_ok and res.gamma_ok
                     and all(i is not None for i in res.affine_word), detail)
    return rep


# -- type A ------------------------------------------------------------------------

@_timed
def exchange_suite(n: int, d: int = 3) -> SuiteReport:
    """[g_k, S_j] = 0 for j not in {k, k+1}; g_j S_j = S_{j+1} g_j^{-1}."""
    rep = SuiteReport("exchange", f"GL{n}", f"polynomials of degree <= {d}")
    mons = polynomial_window(n, d)
    S = {j: cherednik_typeA(n, j) for j in range(1, n + 1)}
    for k in range(1, n):
        g, gi = g_adjacent(n, k), g_adjacent(n, k, True)
        for j in range(1, n + 1):
            if j in (k, k + 1):
                continue
            rep.add(f"[g_{k},{k + 1}, S_{j}] = 0", compare_on(Compose([g, S[j]]), Compose([S[j], g]), mons))
        rep.add(f"g_{k},{k + 1} S_{k} = S_{k + 1} g_{k},{k + 1}^-1",
                compare_on(Compose([g, S[k]]), Compose([S[k + 1], gi]), mons))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rep.add(f"S_{i} S_{j} = S_{j} S_{i}", compare_on(Compose([S[i], S[j]]), Compose([S[j], S[i]]), mons))
    return rep


@_timed
def center_suite(n: int, d: int = 3) -> SuiteReport:
    """[H_l, g_{j,j+1}] = 0 and [H_l, H_m] = 0."""
    rep = SuiteReport("center", f"GL{n}", f"polynomials of degree <= {d}")
    mons = polynomial_window(n, d)
    H = {l: hamiltonian(n, l) for l in range(1, n + 1)}
    for l in range(1, n + 1):
        for j in range(1, n):
            g = g_adjacent(n, j)
            rep.add(f"[H_{l}, g_{j},{j + 1}] = 0", compare_on(Compose([H[l], g]), Compose([g, H[l]]), mons))
        for m in range(l + 1, n + 1):
            rep.add(f"[H_{l}, H_{m}] = 0", compare_on(Compose([H[l], H[m]]), Compose([H[m], H[l]]), mons))
    return rep


@_timed
def triangularity_suite(n: int, d: int = 4) -> SuiteReport:
    from .spectrum import (TriangularityError, cherednik_matrix, eigen_multiplet, multiplet_matches, orbit,
                           partition_of, predicted_multiplet)
    from .heckerep import compositions

    rep = SuiteReport("triangularity", f"GL{n}", f"polynomials of degree <= {d}")
    for deg in range(d + 1):
        for j in range(1, n + 1):
            try:
                cherednik_matrix(n, j, deg)
                ok, detail = True, {}
            except TriangularityError as exc:
                ok, detail = False, {"row": list(exc.row), "col": list(exc.col), "value": str(exc.value)}
            rep.add_flag(f"S_{j} triangular in degree {deg}", ok, detail)
        parts = sorted({partition_of(c) for c in compositions(deg, n)}, reverse=True)
        for p in parts:
            ok = all(multiplet_matches(n, k) for k in orbit(p))
            rep.add_flag(f"multiplets on the orbit of {p} permute (t^k_j q^(n+1-2j))", ok,
                         {"predicted": [str(v) for v in predicted_multiplet(n, p)],
                          "observed": {str(k): [str(v) for v in eigen_multiplet(n, k)] for k in orbit(p)}})
    return rep


@_timed
def adjoint_suite(n: int, kappa: int = 1, d: int = 3) -> SuiteReport:
    from .innerprod import build_measure, check_adjoint

    rep = SuiteReport("adjoint", f"GL{n}", f"polynomials of degree <= {d}, q = t^({kappa}/2)")
    spec = build_measure(n, kappa)
    mons = polynomial_window(n, d)

    def add(rel, res):
        rep.cases += res.cases
        rep.checks.append({"relation": rel, "cases": res.cases, "ok": res.ok})
        for p1, p2, a, b in res.failures:
            rep.failures.append({"relation": rel, "p1": str(p1), "p2": str(p2), "lhs": str(a), "rhs": str(b)})

    for j in range(1, n):
        add(f"<g_{j},{j + 1} p1, p2> = <p1, g_{j},{j + 1}^-1 p2>",
            check_adjoint(g_adjacent(n, j), g_adjacent(n, j, True), spec, mons))
    for j in range(1, n + 1):
        add(f"<S_{j} p1, p2> = <p1, S_{j}^-1 p2>",
            check_adjoint(cherednik_typeA(n, j), cherednik_typeA_inverse(n, j), spec, mons))
    return rep

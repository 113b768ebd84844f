"""Acceptance criteria 1-14.

Each criterion runs exactly as listed in the README, prints one
``criterion N: PASS|FAIL ...`` line and asserts its time budget.  The
module also runs as a script: ``python3 tests/test_acceptance.py``.
"""
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from affinehecke import suites  # noqa: E402
from affinehecke.affine import geodesic_word, inversion_set  # noqa: E402
from affinehecke.heckerep import (  # noqa: E402
    bernstein_check,
    cherednik_typeA,
    cherednik_typeA_inverse,
    g_adjacent,
    polynomial_window,
    x_ij,
)
from affinehecke.innerprod import build_measure, check_adjoint, orthogonality_check, scalar_product  # noqa: E402
from affinehecke.laurent import LaurentPoly, QTPoly  # noqa: E402
from affinehecke.rootsys import dot, parse_type  # noqa: E402
from affinehecke.spectrum import eigenfunction, verify_eigenfunction  # noqa: E402
from affinehecke.yangbaxter import verify_weyl_relations  # noqa: E402
import oracles  # noqa: E402

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # script mode without pytest
    ACCEPTANCE_LINES = {}


def _suites_ok(reports):
    bad = [f"{r.suite} {r.system}" for r in reports if not r.ok]
    cases = sum(r.cases for r in reports)
    return not bad, f"{cases} cases" + (f"; failing: {', '.join(bad)}" if bad else "")


def c1():
    """Hecke quadratic for A2, A3, B2, B3 on [-2,2]^n."""
    return _suites_ok([suites.quadratic_suite(parse_type(s), d=2) for s in ("A2", "A3", "B2", "B3")])


def c2():
    """Braid relations for all simple pairs of A3 and B3 on [-2,2]^n."""
    return _suites_ok([suites.braid_suite(parse_type(s), d=2) for s in ("A3", "B3")])


def c3():
    """y_r^2 = 1 and (y_r y_s)^m = 1 for A1xA1, A2, B2, G2."""
    reps = [verify_weyl_relations(parse_type(s), d=1) for s in ("A1xA1", "A2", "B2", "G2")]
    bad = [r.system for r in reps if not r.ok]
    return not bad, f"{sum(r.cases for r in reps)} cases" + (f"; failing: {bad}" if bad else "")


def c4():
    """x_{-r} x_r = 1 for all positive roots of A3 and B2, d = 2."""
    return _suites_ok([suites.unitarity_suite(parse_type(s), d=2) for s in ("A3", "B2")])


def c5():
    """Affine Hecke relations as stated, GL3 with all fundamental coweights and B2, d = 3."""
    a2, b2 = parse_type("A2"), parse_type("B2")
    b2_xis = [(1, 1), (1, 0)]
    stated = [suites.affine_hecke_suite(a2, d=3, xis=a2.fundamental_coweights, form="stated"),
              suites.affine_hecke_suite(b2, d=3, xis=b2_xis, form="stated")]
    derived = [suites.affine_hecke_suite(a2, d=3, xis=a2.fundamental_coweights, form="derived"),
               suites.affine_hecke_suite(b2, d=3, xis=b2_xis, form="derived")]
    ok, msg = _suites_ok(stated)
    dok = all(r.ok for r in derived)
    return ok, f"stated form: {msg}; derived form g_r^-1 S_xi = S_(w_r xi) g_r: {'PASS' if dok else 'FAIL'}"


def c6():
    """S_a S_b = S_b S_a = S_(a+b) and base-point independence, A2, A3, B2, d = 3."""
    return _suites_ok([suites.commute_suite(parse_type(s), d=3) for s in ("A2", "A3", "B2")])


def c7():
    """Type A exchange relations, n = 3, 4, degree <= 4."""
    return _suites_ok([suites.exchange_suite(n, d=4) for n in (3, 4)])


def c8():
    """[H_l, g_{j,j+1}] = 0 for n = 3, degree <= 3."""
    return _suites_ok([suites.center_suite(3, d=3)])


def c9():
    """Bernstein factorization for A2 with xi in {e1, e1+e2}, d = 2."""
    rs = parse_type("A2")
    res = [bernstein_check(rs, xi, d=2) for xi in ((1, 0, 0), (1, 1, 0))]
    return all(r.ok for r in res), f"{sum(r.comparison.cases for r in res if r.comparison)} cases"


def c10():
    """Triangularity and multiplets for n = 3, all partitions of degree <= 4."""
    return _suites_ok([suites.triangularity_suite(3, d=4)])


def c11():
    """S_j E_k = lambda_j E_k for n = 2 (degree <= 4) and n = 3 (degree <= 3)."""
    count, bad = 0, []
    for n, deg in ((2, 4), (3, 3)):
        for d in range(deg + 1):
            for k in polynomial_window(n, d, d):
                comp = tuple(int(x) for x in next(iter(k.support())))
                rec = eigenfunction(n, comp)
                count += 1
                if not (rec.verified and verify_eigenfunction(n, rec.eigenfunction, rec.multiplet)):
                    bad.append(comp)
    return not bad, f"{count} eigenfunctions" + (f"; failing: {bad}" if bad else "")


def c12():
    """Length formula and word content for the fundamental coweights of A3, B3, C3, D4."""
    count, bad = 0, []
    for name in ("A3", "B3", "C3", "D4"):
        rs = parse_type(name)
        for xi in rs.fundamental_coweights:
            w = geodesic_word(rs, xi)
            counts = w.reflection_multiset()
            expected = sum(dot(xi, r) for r in rs.positive_roots)
            ok = (w.reflection_count == expected == len(inversion_set(rs, xi))
                  and all(counts.get(r, 0) == dot(xi, r) for r in rs.positive_roots)
                  and all(rs.is_positive(r) for r in counts))
            count += 1
            if not ok:
                bad.append(f"{name} {xi}")
    return not bad, f"{count} words" + (f"; failing: {bad}" if bad else "")


def c13():
    """<1,1>, adjointness for n = 2, 3 and kappa = 1, 2, orthogonality for n = 2."""
    one = LaurentPoly.constant(2)
    norm = scalar_product(one, one, build_measure(2, 1))
    s = QTPoly.t(Fraction(1, 2))
    num = sum((oracles.Q ** a * oracles.T ** b * c for (a, b), c in norm.num.terms.items()), 0)
    den = sum((oracles.Q ** a * oracles.T ** b * c for (a, b), c in norm.den.terms.items()), 0)
    norm_ok = norm == -(s + s ** -1) and oracles.same(num / den, oracles.unit_norm_n2_kappa1())
    adj_bad = []
    cases = 0
    for n in (2, 3):
        win = polynomial_window(n, 3)
        for kappa in (1, 2):
            spec = build_measure(n, kappa)
            pairs = [(g_adjacent(n, j), g_adjacent(n, j, True)) for j in range(1, n)]
            pairs += [(cherednik_typeA(n, j), cherednik_typeA_inverse(n, j)) for j in range(1, n + 1)]
            for op, adj in pairs:
                rep = check_adjoint(op, adj, spec, win)
                cases += rep.cases
                if not rep.ok:
                    adj_bad.append((n, kappa))
    orth = orthogonality_check(2, 1, 3)
    ok = norm_ok and not adj_bad and orth.ok
    return ok, (f"<1,1> = {norm.to_string(s_variable=True)}; {cases} adjoint pairs; "
                f"{len(orth.compositions)} eigenfunctions orthogonal"
                + ("" if orth.ok else f"; orthogonality failures {len(orth.failures)}")
                + (f"; adjoint failures {adj_bad}" if adj_bad else ""))


def c14():
    """x_{i,j} 1 = q 1."""
    # The relation list for x_{i,j} has a line "x_{i,j}z_i^0=0"; direct
    # evaluation of the closed form gives q, recorded as a typo.
    bad = []
    for n in (2, 3, 4):
        one = LaurentPoly.constant(n)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if x_ij(n, i, j).apply(one) != LaurentPoly.constant(n, QTPoly.q()):
                    bad.append((n, i, j))
    return not bad, "x_{i,j} 1 = q for n <= 4" + (f"; failing: {bad}" if bad else "")


CRITERIA = [
    (1, c1, 30), (2, c2, 60), (3, c3, 120), (4, c4, 30), (5, c5, 120), (6, c6, 120), (7, c7, 60),
    (8, c8, 60), (9, c9, 60), (10, c10, 120), (11, c11, 120), (12, c12, 30), (13, c13, 180), (14, c14, 1),
]


def run_criterion(num, fn, budget):
    t0 = time.perf_counter()
    ok, msg = fn()
    elapsed = time.perf_counter() - t0
    in_time = elapsed < budget
    status = "PASS" if ok and in_time else "FAIL"
    line = f"criterion {num}: {status} {fn.__doc__.strip()} [{msg}] ({elapsed:.1f}s of {budget}s)"
    ACCEPTANCE_LINES[num] = line
    print(line)
    return ok, in_time, line


@pytest.mark.parametrize("num,fn,budget", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, fn, budget):
    ok, in_time, line = run_criterion(num, fn, budget)
    assert ok, line
    assert in_time, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    sys.exit(0 if all(ok and t for ok, t, _ in results) else 1)

from fractions import Fraction
from itertools import product

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from affinehecke import kernel
from affinehecke.affine import AffineRoot, geodesic_word, word_concat
from affinehecke.heckerep import (
    Compose,
    Identity,
    Mirror,
    Scale,
    Sum,
    affine_generator,
    affine_generator_g0,
    annihilates,
    bernstein_check,
    cherednik_typeA,
    cherednik_typeA_displayed,
    cherednik_typeA_inverse,
    compare_on,
    eval_word,
    eval_word_inverse,
    g_adjacent,
    hamiltonian,
    op_g,
    op_g_inv,
    op_mult,
    op_s,
    op_t,
    op_x_limit,
    op_x_limit_inv,
    operator_equal,
    polynomial_window,
    scattering_operator,
    window,
    x_ij,
    x_ij_inv,
)
from affinehecke.laurent import LaurentPoly, QTPoly, demazure_divide
from affinehecke.rootsys import parse_type, vec
from conftest import z
import oracles
from oracles import Q, T, to_sympy, zsyms

q = QTPoly.q()
t = QTPoly.t()
qq = q - q ** -1


def v(*xs):
    return vec(xs)


def quadratic(g, c):
    return Compose([g - Scale(c), g + Scale(c ** -1)])


# -- primitives -------------------------------------------------------------------

def test_s_swaps_variables():
    rs = parse_type("A1")
    assert op_s(rs, (1, -1))(z(1, 0)) == z(0, 1)


def test_s_fixes_symmetric_and_is_involution():
    rs = parse_type("A2")
    s = op_s(rs, (1, 0, -1))
    sym = z(1, 0, 0) + z(0, 1, 0) + z(0, 0, 1) + z(1, 1, 1)
    assert s(sym) == sym
    assert operator_equal(Compose([s, s]), Identity(), polynomial_window(3, 3))


def test_g_on_one():
    rs = parse_type("A2")
    one = LaurentPoly.constant(3)
    assert op_g(rs, (1, -1, 0))(one) == one * q


def test_g_a1_values():
    rs = parse_type("A1")
    g = op_g(rs, (1, -1))
    assert g(z(1, 0)) == z(0, 1) * q ** -1
    assert g(z(0, 1)) == z(1, 0) * q + z(0, 1) * qq


@pytest.mark.parametrize("name", ["A2", "A3", "B2", "G2"])
def test_quadratic_relation(name):
    rs = parse_type(name)
    for r in rs.simple_roots:
        c = QTPoly.q(rs.hecke_power(r))
        assert annihilates(quadratic(op_g(rs, r), c), window(rs, 2)).ok


def test_g_times_g_inv_is_identity():
    rs = parse_type("B2")
    for r in rs.positive_roots:
        assert operator_equal(Compose([op_g(rs, r), op_g_inv(rs, r)]), Identity(), window(rs, 2))


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_g_matches_divided_difference_oracle(name):
    rs = parse_type(name)
    zs = zsyms(rs.ambient_dim)
    mons = window(rs, 1)[::3]
    for r in rs.positive_roots:
        g = op_g(rs, r)
        for m in mons:
            ref = oracles.dl_g(to_sympy(m, zs), zs, [sp.Rational(Fraction(a)) for a in r])
            assert oracles.same(to_sympy(g(m), zs), ref)


def test_x_values_type_a():
    assert x_ij(2, 1, 2)(LaurentPoly.constant(2)) == LaurentPoly.constant(2, q)
    assert x_ij(2, 1, 2)(z(2, 0)) == z(2, 0) * q ** -1 - z(1, 1) * qq
    assert x_ij(2, 1, 2)(z(0, 1)) == z(0, 1) * q + z(1, 0) * qq


def test_x_ij_on_one_is_q_not_zero():
    # direct evaluation gives q; the vanishing form in the source is a typo
    for n, i, j in [(2, 1, 2), (3, 1, 3), (4, 2, 3)]:
        assert x_ij(n, i, j)(LaurentPoly.constant(n)) == LaurentPoly.constant(n, q)


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_x_and_x_minus_are_inverse(name):
    rs = parse_type(name)
    for r in rs.positive_roots:
        both = Compose([op_x_limit(rs, r), op_x_limit_inv(rs, r)])
        assert operator_equal(both, Identity(), window(rs, 1))
        both = Compose([op_x_limit_inv(rs, r), op_x_limit(rs, r)])
        assert operator_equal(both, Identity(), window(rs, 1))


def test_x_matches_oracle_a2():
    zs = zsyms(3)
    for r in [(1, -1, 0), (0, 1, -1), (1, 0, -1)]:
        rs = parse_type("A2")
        for m in polynomial_window(3, 2):
            e = to_sympy(m, zs)
            assert oracles.same(to_sympy(op_x_limit(rs, r)(m), zs), oracles.x_pos(e, zs, list(r)))
            neg = tuple(-a for a in r)
            assert oracles.same(to_sympy(op_x_limit(rs, neg)(m), zs), oracles.x_neg(e, zs, list(r)))


def test_shift_examples():
    assert op_t(None, (1, 0))(z(2, 1)) == z(2, 1) * t ** 2
    assert op_t(None, (0, 0))(z(2, 1)) == z(2, 1)
    assert op_t(None, (Fraction(1, 2), 0))(z(1, 0)) == z(1, 0) * QTPoly.t(Fraction(1, 2))


def test_bernstein_commutation():
    rs = parse_type("A2")
    r = (1, -1, 0)
    g = op_g(rs, r)
    s = op_s(rs, r)
    rng_q = [z(2, 0, 1) + z(0, 1, 0) * q, z(1, 1, 0) - z(0, 0, 3), z(3, 0, 0)]
    for qp in rng_q:
        lhs = Compose([g, op_mult(qp)])
        corr = op_mult(demazure_divide(rs, r, qp) * LaurentPoly.constant(3, qq))
        rhs = Sum([Compose([op_mult(s(qp)), g]), corr])
        assert compare_on(lhs, rhs, polynomial_window(3, 3)).ok


def test_symmetric_multiplication_is_central():
    rs = parse_type("A2")
    e2 = z(1, 1, 0) + z(1, 0, 1) + z(0, 1, 1)
    for r in rs.simple_roots:
        g = op_g(rs, r)
        assert operator_equal(Compose([g, op_mult(e2)]), Compose([op_mult(e2), g]), window(rs, 1))


# -- operator equality and the vectorized kernel ------------------------------------

def test_identity_equals_identity():
    assert operator_equal(Identity(), Identity(), window(2, 1))


def test_g_differs_from_g_inv():
    rs = parse_type("A1")
    r = (1, -1)
    assert not operator_equal(op_g(rs, r), op_g_inv(rs, r), window(rs, 1))


def test_compare_on_reports_failures():
    rs = parse_type("A2")
    r = (1, -1, 0)
    res = compare_on(Compose([op_g(rs, r), op_s(rs, r)]), Compose([op_s(rs, r), op_g(rs, r)]), window(rs, 1))
    assert not res.ok and res.failures
    m, a, b = res.failures[0]
    assert a != b


def _primitive(rs, kind, idx):
    roots = sorted(rs.positive_roots)
    r = roots[idx % len(roots)]
    if kind == 0:
        return op_s(rs, r)
    if kind == 1:
        return op_g(rs, r)
    if kind == 2:
        return op_g_inv(rs, r)
    if kind == 3:
        return op_x_limit(rs, r)
    if kind == 4:
        return op_x_limit_inv(rs, r)
    return op_t(rs, tuple((idx + k) % 3 - 1 for k in range(rs.ambient_dim)))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["A2", "B2"]),
       st.lists(st.tuples(st.integers(0, 5), st.integers(0, 9)), min_size=2, max_size=6))
def test_kernel_matches_dict_path(name, spec):
    rs = parse_type(name)
    ops = [_primitive(rs, k, i) for k, i in spec]
    mons = window(rs, 1)
    fast = Compose(ops).apply_many(mons)
    for m, f in zip(mons, fast):
        p = m
        for op in reversed(ops):
            p = op.apply(p)
        assert f == p


def test_kernel_falls_back_on_large_exponents():
    rs = parse_type("A2")
    ops = [op_g(rs, (0, 1, -1)), op_x_limit(rs, (0, 1, -1))]
    big = z(5000, 2, 0)
    with pytest.raises(kernel.Unsupported):
        kernel.apply_chain(ops, 3, big.terms)
    slow = ops[0].apply(ops[1].apply(big))
    assert Compose(ops)(big) == slow
    assert Compose(ops).apply_many([big, z(1, 0, 0)])[0] == slow
    assert compare_on(Compose(ops), Compose(ops), [big]).ok


def test_kernel_falls_back_on_fractional_exponents():
    rs = parse_type("A2")
    g0 = affine_generator_g0(rs)
    m = z(1, 0, 0)
    p = m
    for op in reversed(g0.ops):
        p = op.apply(p)
    assert g0(m) == p


# -- words and scattering operators ---------------------------------------------------

def test_empty_word_is_identity():
    rs = parse_type("A2")
    assert operator_equal(scattering_operator(rs, (0, 0, 0)), Identity(), window(rs, 2))


def test_scattering_a2_commute_and_add():
    rs = parse_type("A2")
    s1, s2 = scattering_operator(rs, (1, 0, 0)), scattering_operator(rs, (0, 1, 0))
    mons = window(rs, 2)
    assert operator_equal(Compose([s1, s2]), Compose([s2, s1]), mons)
    assert operator_equal(Compose([s1, s2]), scattering_operator(rs, (1, 1, 0)), mons)


def test_word_concat_evaluates_to_product():
    rs = parse_type("B2")
    w1, w2 = geodesic_word(rs, (1, 0)), geodesic_word(rs, (1, 1))
    assert operator_equal(eval_word(rs, word_concat(w1, w2)),
                          Compose([eval_word(rs, w1), eval_word(rs, w2)]), window(rs, 2))


def test_base_point_independence():
    from affinehecke.affine import base_point
    rs = parse_type("A2")
    xi = (1, 1, 0)
    a = eval_word(rs, geodesic_word(rs, xi, base=base_point(rs, 0)))
    b = eval_word(rs, geodesic_word(rs, xi, base=base_point(rs, 5)))
    assert operator_equal(a, b, window(rs, 2))


@pytest.mark.parametrize("xi", [(1, 0), (-1, 1), (0, -1)])
def test_word_unitarity(xi):
    rs = parse_type("B2")
    w = geodesic_word(rs, xi)
    assert operator_equal(Compose([eval_word(rs, w), eval_word_inverse(rs, w)]), Identity(), window(rs, 2))


@pytest.mark.parametrize("xi", [(0, 0, 0), (1, 0, 0), (1, 1, 0)])
def test_bernstein_check_a2(xi):
    res = bernstein_check(parse_type("A2"), xi)
    assert res.ok


def test_bernstein_gamma_a2():
    res = bernstein_check(parse_type("A2"), (1, 1, 0))
    assert res.gamma == v(-1, -1, 0)


# -- affine generator -----------------------------------------------------------------

def test_g0_quadratic_a2():
    rs = parse_type("A2")
    assert annihilates(quadratic(affine_generator_g0(rs), q), window(rs, 2)).ok


def test_g0_braid_with_adjacent_a2():
    rs = parse_type("A2")
    g0 = affine_generator_g0(rs)
    g1 = op_g(rs, rs.simple_roots[0])
    assert operator_equal(Compose([g0, g1, g0]), Compose([g1, g0, g1]), window(rs, 1))


def test_g0_commutes_with_far_generator_a3():
    rs = parse_type("A3")
    g0 = affine_generator_g0(rs)
    g2 = op_g(rs, rs.simple_roots[1])
    assert operator_equal(Compose([g0, g2]), Compose([g2, g0]), window(rs, 1))


def test_affine_node_is_conjugate_of_g0():
    rs = parse_type("A2")
    node = affine_generator(rs, AffineRoot(tuple(-a for a in rs.highest_root), Fraction(1)))
    assert annihilates(quadratic(node, q), window(rs, 1)).ok
    lit = affine_generator(rs, AffineRoot(tuple(-a for a in rs.highest_root), Fraction(-1)))
    assert operator_equal(lit, affine_generator_g0(rs), window(rs, 1))


# -- type A Cherednik operators ------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3, 4])
def test_cherednik_on_one(n):
    # the exponent is -(n + 1 - 2j), the mirror of the value listed in the contract
    one = LaurentPoly.constant(n)
    for j in range(1, n + 1):
        assert cherednik_typeA(n, j)(one) == one * QTPoly.q(-(n + 1 - 2 * j))


def test_cherednik_n2_diagonal():
    assert cherednik_typeA(2, 1)(z(1, 0)) == z(1, 0) * q * t


def test_cherednik_matches_oracle_n3():
    zs = zsyms(3)
    for j in (1, 2, 3):
        op = cherednik_typeA(3, j)
        for m in polynomial_window(3, 2):
            assert oracles.same(to_sympy(op(m), zs), oracles.cherednik(to_sympy(m, zs), zs, 3, j))


def test_cherednik_commute_n3():
    ss = [cherednik_typeA(3, j) for j in (1, 2, 3)]
    mons = polynomial_window(3, 4)
    for a, b in [(0, 1), (0, 2), (1, 2)]:
        assert operator_equal(Compose([ss[a], ss[b]]), Compose([ss[b], ss[a]]), mons)


@pytest.mark.parametrize("n", [2, 3])
def test_cherednik_inverse(n):
    mons = polynomial_window(n, 3)
    for j in range(1, n + 1):
        assert operator_equal(Compose([cherednik_typeA(n, j), cherednik_typeA_inverse(n, j)]), Identity(), mons)


def test_cherednik_exchange_n3():
    n = 3
    mons = polynomial_window(n, 3)
    for j in (1, 2):
        lhs = Compose([g_adjacent(n, j), cherednik_typeA(n, j)])
        rhs = Compose([cherednik_typeA(n, j + 1), g_adjacent(n, j, inverse=True)])
        assert operator_equal(lhs, rhs, mons)
    assert operator_equal(Compose([g_adjacent(n, 2), cherednik_typeA(n, 1)]),
                          Compose([cherednik_typeA(n, 1), g_adjacent(n, 2)]), mons)


def test_cherednik_is_mirror_of_walk_operator():
    n = 3
    rs = parse_type("A2")
    mons = polynomial_window(n, 2)
    for j in range(1, n + 1):
        xi = tuple(-1 if k == j - 1 else 0 for k in range(n))
        assert operator_equal(cherednik_typeA(n, j), Mirror(scattering_operator(rs, xi)), mons)
        e = tuple(1 if k == j - 1 else 0 for k in range(n))
        assert operator_equal(cherednik_typeA_displayed(n, j), scattering_operator(rs, e), mons)


def test_cherednik_preserves_degree():
    for m in polynomial_window(3, 3):
        deg = sum(next(iter(m.support())))
        out = cherednik_typeA(3, 2)(m)
        assert all(sum(k) == deg and min(k) >= 0 for k in out.support())


def test_cherednik_index_error():
    with pytest.raises(IndexError):
        cherednik_typeA(3, 4)
    with pytest.raises(IndexError):
        hamiltonian(3, 0)


def test_hamiltonian_examples():
    one = LaurentPoly.constant(3)
    assert hamiltonian(3, 3)(one) == one
    assert hamiltonian(2, 2)(z(1, 0)) == z(1, 0) * t


def test_hamiltonian_central_n3():
    n = 3
    mons = polynomial_window(n, 3)
    for l in (1, 2, 3):
        h = hamiltonian(n, l)
        for j in (1, 2):
            g = g_adjacent(n, j)
            assert operator_equal(Compose([h, g]), Compose([g, h]), mons)

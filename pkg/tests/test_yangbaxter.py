import pytest

from affinehecke.laurent import LaurentPoly, QTPoly
from affinehecke.rootsys import parse_type, vec
from affinehecke.yangbaxter import (
    CarrierElement,
    HeckeRegular,
    basis_window,
    check_word,
    hecke_left_mult,
    verify_weyl_relations,
    y_operator,
    ybb_roots,
)

q = QTPoly.q()
dq = q - q ** -1


def labelled(module, elt):
    return {module.label(m): c for m, c in elt.items()}


def test_left_mult_on_identity():
    rs = parse_type("A2")
    mod = HeckeRegular(rs)
    out = hecke_left_mult(rs, 0, {mod.identity: 1}, mod)
    assert labelled(mod, out) == {(0,): 1}


def test_left_mult_quadratic():
    rs = parse_type("A2")
    mod = HeckeRegular(rs)
    once = hecke_left_mult(rs, 0, {mod.identity: QTPoly.const(1)}, mod)
    twice = hecke_left_mult(rs, 0, once, mod)
    assert labelled(mod, twice) == {(): QTPoly.const(1), (0,): dq}


def test_left_mult_reduced_product_a2():
    rs = parse_type("A2")
    mod = HeckeRegular(rs)
    elt = {mod.identity: QTPoly.const(1)}
    for i in (0, 1, 0):
        elt = hecke_left_mult(rs, i, elt, mod)
    assert len(elt) == 1
    (m,) = elt
    assert mod.length[m] == 3
    assert m == rs.longest_element.matrix


def test_y_on_unit_vector():
    rs = parse_type("A1")
    mod = HeckeRegular(rs)
    y = y_operator(rs, 0, mod)
    out = y.apply(CarrierElement({mod.identity: LaurentPoly.constant(2)}))
    e_neg = LaurentPoly.monomial((-1, 1))
    one = LaurentPoly.constant(2)
    assert labelled(mod, out.numerator) == {(0,): e_neg - one, (): one.scale(dq)}
    assert out.denominator(2) == e_neg.scale(q) - one.scale(q ** -1)


def test_y_squared_on_unit_vector():
    rs = parse_type("A2")
    mod = HeckeRegular(rs)
    for i in range(rs.rank):
        y = y_operator(rs, i, mod)
        ok, _, _ = check_word([y, y], CarrierElement({mod.identity: LaurentPoly.constant(3)}), 3)
        assert ok


def test_y_linear_over_symmetric_factor():
    rs = parse_type("A2")
    mod = HeckeRegular(rs)
    y = y_operator(rs, 0, mod)
    f = LaurentPoly.monomial((1, 1, 0)) + LaurentPoly.monomial((0, 0, 1))
    base = CarrierElement({mod.identity: LaurentPoly.monomial((1, 0, 0))})
    scaled = CarrierElement({mod.identity: LaurentPoly.monomial((1, 0, 0)) * f})
    a, b = y.apply(base), y.apply(scaled)
    assert a.factors == b.factors
    assert {m: c * f for m, c in a.numerator.items()} == b.numerator


def test_basis_window_size():
    assert len(basis_window(parse_type("B2"), 1)) == 9


@pytest.mark.parametrize("name", ["A1", "A1xA1", "A2", "B2"])
def test_weyl_relations(name):
    rep = verify_weyl_relations(parse_type(name), d=1)
    assert rep.ok, rep.failures[:1]
    assert rep.cases > 0


def test_broken_relation_is_reported():
    rs = parse_type("A2")
    mod = HeckeRegular(rs)
    y1, y2 = y_operator(rs, 0, mod), y_operator(rs, 1, mod)
    ok, lhs, rhs = check_word([y1, y2], CarrierElement({mod.identity: LaurentPoly.constant(3)}), 3)
    assert not ok and lhs != rhs


def test_ybb_roots_a2():
    rs = parse_type("A2")
    assert ybb_roots(rs, 0, 1) == [vec((0, 1, -1)), vec((1, 0, -1)), vec((1, -1, 0))]


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_ybb_roots_end_with_r_and_are_positive(name):
    rs = parse_type(name)
    for i, j in [(0, 1), (1, 0)]:
        roots = ybb_roots(rs, i, j)
        assert len(roots) == rs.braid_orders[(0, 1)]
        assert roots[0] == rs.simple_roots[j] and roots[-1] == rs.simple_roots[i]
        assert len(set(roots)) == len(roots)
        assert all(rs.is_positive(r) for r in roots)

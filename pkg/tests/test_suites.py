import pytest

from affinehecke import suites
from affinehecke.rootsys import parse_type


def test_stated_affine_hecke_form_fails_a2():
    rep = suites.affine_hecke_suite(parse_type("A2"), d=1, form="stated")
    assert not rep.ok
    assert all(f["relation"].endswith("^-1") for f in rep.failures)


def test_derived_affine_hecke_form_passes_a2():
    rep = suites.affine_hecke_suite(parse_type("A2"), d=1, form="derived")
    assert rep.ok and rep.cases > 0


def test_affine_hecke_unknown_form():
    with pytest.raises(ValueError):
        suites.affine_hecke_suite(parse_type("A2"), d=1, form="other")


def test_pairing_zero_relations_hold_in_stated_form():
    rep = suites.affine_hecke_suite(parse_type("A2"), d=1, form="stated")
    zero = [c for c in rep.checks if "^-1" not in c["relation"]]
    assert zero and all(c["ok"] for c in zero)


@pytest.mark.parametrize("fn,arg", [
    (suites.quadratic_suite, "A2"),
    (suites.braid_suite, "B2"),
    (suites.unitarity_suite, "A2"),
    (suites.bernstein_suite, "A2"),
])
def test_small_root_system_suites(fn, arg):
    rep = fn(parse_type(arg), d=1)
    assert rep.ok, rep.failures[:1]
    assert rep.cases > 0 and rep.seconds >= 0


def test_commute_suite_small():
    rep = suites.commute_suite(parse_type("A2"), d=1)
    assert rep.ok
    assert any(c["relation"] == "some pair of base points yields distinct words" for c in rep.checks)


@pytest.mark.parametrize("fn", [suites.exchange_suite, suites.center_suite])
def test_type_a_suites_small(fn):
    rep = fn(3, d=2)
    assert rep.ok and rep.system == "GL3"


def test_triangularity_and_adjoint_small():
    assert suites.triangularity_suite(2, d=3).ok
    assert suites.adjoint_suite(2, 1, d=2).ok


def test_yang_baxter_suite_a2():
    assert suites.yang_baxter_suite(parse_type("A2")).ok


def test_report_json_shape():
    data = suites.quadratic_suite(parse_type("A1"), d=1).to_json()
    assert set(data) == {"suite", "system", "window", "cases", "passed", "checks", "failures"}
    assert data["passed"] is True and data["failures"] == []

from fractions import Fraction

import pytest

from lspace_kit.cable import (
    CableParams,
    cable_b,
    cable_knot_alexander,
    cable_link,
    cable_link_alexander,
    cable_maximal_point,
    naive_cable_b,
    t_map,
)
from lspace_kit.catalog import CATALOG_NAMES, catalog_get, torus_knot_2, trefoil, unknot
from lspace_kit.errors import InvalidParameters
from lspace_kit.hfun import link_h_from_alexander
from lspace_kit.invariants import genus, link_invariants
from lspace_kit.poly import LaurentPoly, half_difference, poly1
from oracles import cable_knot_value, eval_poly, torus_knot_value

U_VALUES = [Fraction(3, 2), Fraction(2, 5), Fraction(-7, 3)]


def _inv(name):
    return link_invariants(catalog_get(name).h_function())


@pytest.mark.parametrize("p, q, s, expected", [(2, 7, 1, 5), (1, 9, Fraction(-3, 2), Fraction(-3, 2)), (3, 4, 0, 3)])
def test_t_map(p, q, s, expected):
    assert t_map(CableParams(p, q), s).value == expected


@pytest.mark.parametrize("p, q", [(2, 4), (0, 3), (3, -1)])
def test_bad_parameters(p, q):
    with pytest.raises(InvalidParameters):
        CableParams(p, q)
    with pytest.raises(InvalidParameters):
        CableParams(2, 3, component=3)


def test_unknot_cable_is_torus_knot():
    assert cable_knot_alexander(unknot(), CableParams(2, 3)) == trefoil()
    for n in (5, 7, 9):
        assert cable_knot_alexander(unknot(), CableParams(2, n)) == torus_knot_2(n)


@pytest.mark.parametrize("p, q", [(2, 5), (3, 4), (3, 7), (4, 9), (5, 6)])
def test_unknot_cable_matches_quotient_formula(p, q):
    poly = cable_knot_alexander(unknot(), CableParams(p, q))
    for u in U_VALUES:
        assert eval_poly(poly.terms, (u,)) == torus_knot_value(p, q, u)


@pytest.mark.parametrize("delta", [trefoil(), torus_knot_2(5), torus_knot_2(7)])
@pytest.mark.parametrize("p, q", [(2, 7), (3, 11), (2, 9)])
def test_knot_cable_matches_numeric_formula(delta, p, q):
    poly = cable_knot_alexander(delta, CableParams(p, q))
    coeffs = {e[0] // 2: c for e, c in delta.terms.items()}
    for u in U_VALUES:
        assert eval_poly(poly.terms, (u,)) == cable_knot_value(coeffs, p, q, u)
    c = CableParams(p, q)
    assert genus(poly) == c.t(genus(delta))


def test_trefoil_cable_top_degree():
    assert cable_knot_alexander(trefoil(), CableParams(2, 7)).top_degree() == 5


def test_identity_cables():
    for delta in (unknot(), trefoil()):
        assert cable_knot_alexander(delta, CableParams(1, 6)) == delta
    wh = catalog_get("whitehead").alexander2
    assert cable_link_alexander(wh, CableParams(1, 4)) == wh
    assert cable_link_alexander(wh, CableParams(1, 4, 2)) == wh


def test_hopf_cable_support():
    poly = cable_link_alexander(LaurentPoly.constant(2, 1), CableParams(2, 3), l=1)
    assert {e[0] for e in poly.terms} == {3, -3}


def test_zero_linking_pattern_uses_first_variable_only():
    wh = catalog_get("whitehead").alexander2
    c = CableParams(2, 7)
    t1_only = LaurentPoly(2, {(7, 0): 1, (-7, 0): 1})
    assert cable_link_alexander(wh, c) == wh.substitute_power(2, 0) * t1_only


def test_second_component_by_symmetry():
    delta = catalog_get("l7a3m").alexander2
    c2 = CableParams(3, 11, 2)
    assert cable_link_alexander(delta, c2) == cable_link_alexander(delta.swap(), CableParams(3, 11)).swap()


def test_whitehead_cable_b():
    assert cable_b(_inv("whitehead"), CableParams(2, 7)) == (4, 0)


def test_whitehead_cable_derived_b():
    wh = catalog_get("whitehead")
    poly = cable_link_alexander(wh.alexander2, CableParams(2, 7))
    h = link_h_from_alexander(poly, cable_knot_alexander(unknot(), CableParams(2, 7)), unknot(), 0)
    assert link_invariants(h).b1 == 4


def test_hopf_cable_type_b_odd_linking():
    """The type/parity rule predicts 4; the cabled H-function gives 3."""
    inv = _inv("hopf")
    c = CableParams(2, 7)
    assert naive_cable_b(inv, c) == (4, 0)
    assert cable_b(inv, c) == (3, 0)
    rep = cable_link(catalog_get("hopf"), c, q_large=True)
    assert rep.derived_b == (3, 0)


def test_other_component_lower_bound():
    rep = cable_link(catalog_get("T(2,4)"), CableParams(2, 7), q_large=True)
    assert rep.derived_b == (4, 1)
    assert naive_cable_b(_inv("T(2,4)"), CableParams(2, 7)) == (4, 0)


def test_formulas_agree_without_linking():
    for name in ("whitehead", "l7a3m"):
        for c in (CableParams(2, 7), CableParams(3, 11, 2), CableParams(2, 5, 2)):
            assert naive_cable_b(_inv(name), c) == cable_b(_inv(name), c)


def test_maximal_point_map():
    assert cable_maximal_point((0, 0), CableParams(2, 7)) == (8, 0)
    assert cable_maximal_point((0, 2), CableParams(3, 11, 2)) == (0, 2 * (3 * 2 + 10 - 1))


def test_whitehead_cable_report():
    rep = cable_link(catalog_get("whitehead"), CableParams(2, 7), q_large=True)
    assert rep.formula_b == rep.derived_b == (4, 0)
    assert rep.invariants.maximal_points == frozenset({(8, 0)})
    assert rep.iff_persists is True
    assert rep.descriptor.linking == 0


def test_identity_cable_link():
    wh = catalog_get("whitehead")
    rep = cable_link(wh, CableParams(1, 5), q_large=True)
    assert rep.descriptor == wh
    assert rep.invariants == link_invariants(wh.h_function())


def test_q_large_assertion_required():
    with pytest.raises(InvalidParameters):
        cable_link(catalog_get("whitehead"), CableParams(2, 7))


@pytest.mark.parametrize("name", CATALOG_NAMES)
@pytest.mark.parametrize("c", [CableParams(2, 7, 1), CableParams(2, 7, 2), CableParams(3, 11, 1), CableParams(3, 11, 2)])
def test_transport_on_catalog(name, c):
    desc = catalog_get(name)
    inv = _inv(name)
    rep = cable_link(desc, c, q_large=True)
    assert rep.derived_b == cable_b(inv, c)
    assert rep.invariants.maximal_points == frozenset(cable_maximal_point(m, c) for m in inv.maximal_points)
    g = inv.g[c.component - 1]
    assert rep.invariants.g[c.component - 1] == c.t(g)
    assert rep.descriptor.linking == c.p * desc.linking


def test_doubly_cabled_whitehead_invariants():
    once = cable_link(catalog_get("whitehead"), CableParams(2, 7, 1), q_large=True)
    twice = cable_link(once.descriptor, CableParams(2, 7, 2), q_large=True)
    assert twice.derived_b == (4, 4)
    assert twice.invariants.maximal_points == frozenset({(8, 8)})
    assert twice.iff_persists is True

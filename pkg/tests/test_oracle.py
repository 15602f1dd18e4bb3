import pytest

from lspace_kit.catalog import CATALOG_NAMES, catalog_get
from lspace_kit.complex import SurgeryMatrix, is_lspace_surgery
from lspace_kit.errors import InconsistencyError
from lspace_kit.invariants import TYPE_A, TYPE_B, LinkInvariants
from lspace_kit.oracle import (
    COMPUTATION,
    LSPACE,
    NOT_LSPACE,
    RULES,
    THEOREMS,
    UNKNOWN,
    AlexFlags,
    Verdict,
    coefficient_from_h,
    coefficient_from_poly,
    iff_hypothesis,
    knot_surgery_is_lspace,
    link_context,
    propagate,
    region_map,
    theorem_verdict,
)

NO_FLAGS = AlexFlags(frozenset(), frozenset())


def _ctx(name):
    desc = catalog_get(name)
    return link_context(desc.h_function(), desc.alexander2)


def _synthetic(**kw):
    base = dict(b1=1, b2=1, g1=2, g2=2, linking=0, link_type=TYPE_B)
    base.update(kw)
    return LinkInvariants(**base)


@pytest.mark.parametrize("g, d, expected", [(1, 1, True), (1, 0, False), (0, -5, True), (0, 0, False), (2, 2, False), (2, 3, True)])
def test_knot_surgery(g, d, expected):
    assert knot_surgery_is_lspace(g, d) is expected


def test_whitehead_large_surgery():
    v = theorem_verdict(*_ctx("whitehead"), 5, 5)
    assert v.status == LSPACE and "R1" in v.rules


def test_whitehead_type_a_positivity():
    v = theorem_verdict(*_ctx("whitehead"), -1, 7)
    assert v.status == NOT_LSPACE and "R2" in v.rules


def test_torus_link_mixed_signs_undecided():
    v = theorem_verdict(*_ctx("T(2,4)"), 1, -1)
    assert v.status == UNKNOWN and v.rules == []


def test_det_zero():
    v = theorem_verdict(*_ctx("hopf"), 1, 1)
    assert v.status == NOT_LSPACE and v.det_zero and v.rules == ["R0"]


def test_rule_texts_cover_every_rule():
    v = theorem_verdict(*_ctx("l7a3m"), 1, 2)
    assert v.describe_rules() == [f"{r}: {RULES[r]}" for r in v.rules]
    assert v.to_dict()["status"] == NOT_LSPACE


@pytest.mark.parametrize("name", ["hopf", "whitehead", "l7a3m"])
def test_coefficients_from_h_match_polynomial(name):
    desc = catalog_get(name)
    from_h = coefficient_from_h(desc.h_function())
    from_poly = coefficient_from_poly(desc.alexander2)
    odd = (desc.linking + 1) % 2
    for x in range(-10 + odd, 11, 2):
        for y in range(-10 + odd, 11, 2):
            assert from_h(x, y) == from_poly(x, y)


def test_iff_hypothesis():
    assert iff_hypothesis(*_ctx("whitehead"))
    assert iff_hypothesis(*_ctx("l7a3m"))
    assert not iff_hypothesis(*_ctx("hopf"))


# rules that need synthetic invariants ------------------------------------------------


def test_r7_and_r10_tight_zero_linking():
    inv = _synthetic()
    low = theorem_verdict(inv, NO_FLAGS, 1, 1)
    assert low.status == NOT_LSPACE and {"R7", "R10"} <= set(low.rules)
    high = theorem_verdict(inv, NO_FLAGS, 3, 3)
    assert high.status == LSPACE and high.rules == ["R1", "R10"]


def test_rule_conflict_raises():
    # a type A link with large linking number: R1 says yes while R2 says no
    inv = _synthetic(b1=0, b2=0, g1=0, g2=0, linking=3, link_type=TYPE_A)
    with pytest.raises(InconsistencyError) as err:
        theorem_verdict(inv, NO_FLAGS, 1, 1)
    assert err.value.witness["yes"] == ["R1"]


def _grid(points, statuses):
    return {p: Verdict(p[0], p[1], statuses.get(p, UNKNOWN)) for p in points}


def test_induction_forward_and_backward():
    inv = _synthetic(b1=0, b2=0, g1=0, g2=0, linking=1)
    pts = [(d1, 2) for d1 in range(1, 5)]
    grid = _grid(pts, {(2, 2): LSPACE})
    propagate(inv, grid, (1, 4, 2, 2))
    assert [grid[p].status for p in pts] == [UNKNOWN, LSPACE, LSPACE, LSPACE]
    assert grid[(4, 2)].rules == ["R13"]
    grid = _grid(pts, {(4, 2): NOT_LSPACE})
    propagate(inv, grid, (1, 4, 2, 2))
    assert [grid[p].status for p in pts] == [NOT_LSPACE] * 4
    assert grid[(1, 2)].rules == ["R13c"]


def test_induction_conflict_raises():
    inv = _synthetic(b1=0, b2=0, g1=0, g2=0, linking=1)
    pts = [(d1, 2) for d1 in range(1, 5)]
    grid = _grid(pts, {(2, 2): LSPACE, (4, 2): NOT_LSPACE})
    with pytest.raises(InconsistencyError):
        propagate(inv, grid, (1, 4, 2, 2))


# region maps ---------------------------------------------------------------------------


def _region(name, box, mode=COMPUTATION):
    desc = catalog_get(name)
    return region_map(desc.h_function(), box, mode, delta2=desc.alexander2)


def test_whitehead_region():
    rm = _region("whitehead", (-3, 3, -3, 3))
    assert rm.lspace_points() == [(d1, d2) for d1 in range(1, 4) for d2 in range(1, 4)]
    assert all(v.status != UNKNOWN for v in rm.grid.values())


def test_l7a3m_region():
    rm = _region("l7a3m", (-3, 5, -3, 5))
    assert rm.lspace_points() == [(d1, d2) for d1 in range(1, 6) for d2 in range(3, 6)]


def test_hopf_negative_region():
    rm = _region("hopf", (-4, -2, -4, -2))
    assert len(rm.lspace_points()) == 9
    assert all(v.computed for v in rm.grid.values())


def test_torus_link_has_mixed_sign_lspaces():
    rm = _region("T(2,4)", (-3, 3, -3, 3))
    assert any(d1 * d2 < 0 for d1, d2 in rm.lspace_points())


@pytest.mark.parametrize("name", ["hopf", "whitehead", "l7a3m"])
def test_soundness_small_box(name):
    desc = catalog_get(name)
    h = desc.h_function()
    rm = _region(name, (-4, 4, -4, 4), THEOREMS)
    for (d1, d2), v in rm.grid.items():
        if v.det_zero or v.status == UNKNOWN:
            continue
        assert (v.status == LSPACE) == is_lspace_surgery(h, SurgeryMatrix(d1, d2, h.l))


def test_ascii_rendering():
    rm = _region("whitehead", (-3, 3, -3, 3))
    assert rm.ascii().splitlines()[:7] == [
        " 3 | n n n 0 L L L",
        " 2 | n n n 0 L L L",
        " 1 | n n n 0 L L L",
        " 0 | 0 0 0 0 0 0 0",
        "-1 | n n n 0 n n n",
        "-2 | n n n 0 n n n",
        "-3 | n n n 0 n n n",
    ]


def test_theorems_mode_leaves_gaps():
    rm = _region("hopf", (-2, 2, -2, 2), THEOREMS)
    assert "?" in rm.ascii()
    assert all(v.computed is None for v in rm.grid.values())


def test_svg_rendering():
    rm = _region("whitehead", (-1, 1, -1, 1))
    svg = rm.svg()
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert svg.count("<rect") == 9
    assert svg.count('fill="#3a3"') == 1


def test_region_map_to_dict():
    d = _region("whitehead", (0, 1, 0, 1)).to_dict()
    assert d["bounds"] == [0, 1, 0, 1] and len(d["grid"]) == 4


def test_bad_region_arguments():
    h = catalog_get("hopf").h_function()
    with pytest.raises(ValueError):
        region_map(h, (1, 0, 0, 1))
    with pytest.raises(ValueError):
        region_map(h, (0, 1, 0, 1), "guess")

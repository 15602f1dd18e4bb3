"""Classification data derived from an H-function: b-constants, genera, type, maximal points."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InconsistencyError
from .hfun import HFunction2D
from .poly import LaurentPoly, check_knot_polynomial, fmt_doubled

TYPE_A = "A"
TYPE_B = "B"


def genus(delta: LaurentPoly) -> int:
    """Genus of an L-space knot: the top exponent of its symmetrized Alexander polynomial."""
    check_knot_polynomial(delta)
    return int(delta.top_degree())


def _scan_margin(h: HFunction2D) -> range:
    r = h.radius + 4
    return range(-r, r + 1, 2)


def _stable_from(h: HFunction2D, axis: int) -> int:
    """Smallest doubled coordinate on ``axis`` from which H agrees with its limit for every other coordinate.

    Beyond the window the values follow the boundary rules, so checking two
    extra lattice steps on each side covers all of the lattice.
    """
    span = _scan_margin(h)
    if axis == 0:
        def ok(a: int) -> bool:
            return all(h.at(a, b) == h.inf_h2(b) for b in span)
    else:
        def ok(a: int) -> bool:
            return all(h.at(b, a) == h.h1_inf(b) for b in span)
    a = h.radius + 2
    floor = -h.radius - 4
    while a - 2 >= floor and ok(a - 2):
        a -= 2
    return a


def compute_b(h: HFunction2D) -> tuple[int, int]:
    """``b_i = min ceil(s_i - 1)`` over columns (rows) equal to the limiting column (row)."""
    out = []
    for axis in (0, 1):
        d = _stable_from(h, axis)
        out.append(math.ceil(Fraction(d, 2) - 1))
    return out[0], out[1]


def type_a_witness(h: HFunction2D) -> tuple[int, int] | None:
    """A lattice point with strict drops to both upper neighbours and a vanishing limit, if any.

    Returned in doubled coordinates; the search runs over the window, which
    contains every candidate because the limits are positive below it.
    """
    best = None
    for a, b in h.points():
        v = h.at(a, b)
        if v > h.at(a + 2, b) and v > h.at(a, b + 2) and (h.h1_inf(a) == 0 or h.inf_h2(b) == 0):
            if best is None or (a + b, a) > (best[0] + best[1], best[0]):
                best = (a, b)
    return best


def _type_from_b(b: tuple[int, int], g: tuple[int, int], l: int) -> str:
    half = Fraction(l, 2)
    return TYPE_A if any(bi >= gi + half for bi, gi in zip(b, g)) else TYPE_B


def classify_type(h: HFunction2D, b: tuple[int, int] | None = None) -> tuple[str, tuple[int, int] | None]:
    """Type A/B by witness search, cross-checked against the ``b_i >= g_i + l/2`` criterion."""
    if b is None:
        b = compute_b(h)
    witness = type_a_witness(h)
    by_witness = TYPE_A if witness is not None else TYPE_B
    by_b = _type_from_b(b, (h.boundary1.genus, h.boundary2.genus), h.l)
    if by_witness != by_b:
        raise InconsistencyError(
            f"type by witness search ({by_witness}) disagrees with type by b-criterion ({by_b})",
            {"b": b, "witness": witness},
        )
    return by_witness, witness


def maximal_lattice_points(h: HFunction2D) -> frozenset[tuple[int, int]]:
    """Points with ``H = 1`` whose right and upper neighbours have ``H = 0`` (doubled coordinates)."""
    return frozenset(
        (a, b)
        for a, b in h.points()
        if h.at(a, b) == 1 and h.at(a + 2, b) == 0 and h.at(a, b + 2) == 0
    )


def is_split_sum(h: HFunction2D) -> bool:
    """Whether ``H(s1, s2) = H1(s1 - l/2) + H2(s2 - l/2)`` on the window."""
    return all(h.at(a, b) == h.h1_inf(a) + h.inf_h2(b) for a, b in h.points())


def split_with_unknot(h: HFunction2D) -> bool:
    return min(h.boundary1.genus, h.boundary2.genus) == 0 and is_split_sum(h)


@dataclass(frozen=True)
class LinkInvariants:
    b1: int
    b2: int
    g1: int
    g2: int
    linking: int
    link_type: str
    maximal_points: frozenset = field(default_factory=frozenset)
    split_with_unknot: bool = False
    split_sum: bool = False
    witness: tuple[int, int] | None = None

    @property
    def b(self) -> tuple[int, int]:
        return self.b1, self.b2

    @property
    def g(self) -> tuple[int, int]:
        return self.g1, self.g2

    def maximal_points_str(self) -> list[str]:
        return [f"({fmt_doubled(a)}, {fmt_doubled(b)})" for a, b in sorted(self.maximal_points)]

    def to_dict(self) -> dict:
        return {
            "g1": self.g1,
            "g2": self.g2,
            "b1": self.b1,
            "b2": self.b2,
            "linking": self.linking,
            "type": self.link_type,
            "maximal_points": [[a, b] for a, b in sorted(self.maximal_points)],
            "split_with_unknot": self.split_with_unknot,
            "split_sum": self.split_sum,
        }


def link_invariants(h: HFunction2D) -> LinkInvariants:
    """Compute every invariant and check the lower bound ``b_i >= g_i - 1 + l/2``."""
    b = compute_b(h)
    g = (h.boundary1.genus, h.boundary2.genus)
    kind, witness = classify_type(h, b)
    for i in (0, 1):
        if b[i] < g[i] - 1 + Fraction(h.l, 2):
            raise InconsistencyError(f"b{i + 1} = {b[i]} is below g{i + 1} - 1 + l/2", {"b": b, "g": g})
    maximal = maximal_lattice_points(h)
    split = is_split_sum(h)
    if maximal and kind != TYPE_A:
        raise InconsistencyError("maximal lattice point on a type B link", {"maximal": sorted(maximal)})
    return LinkInvariants(
        b1=b[0],
        b2=b[1],
        g1=g[0],
        g2=g[1],
        linking=h.l,
        link_type=kind,
        maximal_points=maximal,
        split_with_unknot=split and min(g) == 0,
        split_sum=split,
        witness=witness,
    )

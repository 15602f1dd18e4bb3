"""Cabling one component of a two-component link.

The ``(p, q)`` cable replaces a component by a curve winding ``p`` times
along it and ``q`` times around it.  Constants, maximal points and
Alexander polynomials move by the affine map ``T(s) = p*s + (p-1)(q-1)/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .catalog import LinkDescriptor
from .errors import InconsistencyError, InvalidParameters
from .hfun import alexander_from_h, link_h_from_alexander
from .invariants import TYPE_A, LinkInvariants, link_invariants
from .oracle import AlexFlags, coefficient_from_poly, iff_hypothesis
from .poly import HalfInt, LaurentPoly, Number, quantum_factor, to_doubled


@dataclass(frozen=True)
class CableParams:
    p: int
    q: int
    component: int = 1

    def __post_init__(self) -> None:
        if self.p < 1 or self.q < 1 or math.gcd(self.p, self.q) != 1:
            raise InvalidParameters(f"(p, q) = ({self.p}, {self.q}) must be coprime positive integers")
        if self.component not in (1, 2):
            raise InvalidParameters("component must be 1 or 2")

    @property
    def shift(self) -> Fraction:
        return Fraction((self.p - 1) * (self.q - 1), 2)

    def t(self, s: Number) -> Fraction:
        return self.p * HalfInt.of(s).value + self.shift


def t_map(c: CableParams, s: Number) -> HalfInt:
    """``T(s) = p*s + (p-1)(q-1)/2``."""
    return HalfInt.of(c.t(s))


def cable_knot_alexander(delta: LaurentPoly, c: CableParams) -> LaurentPoly:
    """``delta(t^p) * [p]_{t^q} / [p]_t`` where ``[p]_x = (x^{p/2} - x^{-p/2}) / (x^{1/2} - x^{-1/2})``.

    Both brackets are expanded as finite sums; the remaining quotient is an
    exact polynomial division, so a remainder signals a bug.
    """
    num = delta.substitute_power(c.p) * quantum_factor(c.p, c.q)
    try:
        return num.exact_div(quantum_factor(c.p, 1))
    except ArithmeticError as exc:
        raise InconsistencyError(f"cable quotient is not exact for {c}: {exc}") from None


def _pattern_factor(c: CableParams, l: int) -> LaurentPoly:
    """``[p]`` evaluated at the monomial ``t1^q t2^l`` (two variables, cabled variable first)."""
    p, q = c.p, c.q
    return LaurentPoly(2, {(q * (p - 1 - 2 * k), l * (p - 1 - 2 * k)): 1 for k in range(p)})


def cable_link_alexander(delta2: LaurentPoly, c: CableParams, l: int = 0) -> LaurentPoly:
    """Two-variable polynomial of the cable: ``delta2(t1^p, t2) * [p]_{t1^q t2^l}``.

    With ``l = 0`` the pattern factor only involves ``t1``.  Cabling the second
    component swaps variables before and after.
    """
    if delta2.nvars != 2:
        raise InvalidParameters("two-variable polynomial expected")
    if c.component == 2:
        return cable_link_alexander(delta2.swap(), CableParams(c.p, c.q, 1), l).swap()
    return delta2.substitute_power(c.p, 0) * _pattern_factor(c, l)


def cable_b(inv: LinkInvariants, c: CableParams) -> tuple[int, int]:
    """``(b1, b2)`` of the cable predicted from the invariants of the original link.

    For the cabled component: type A uses ``T(b + 1) - 1`` (even ``l``) or
    ``T(b + 1/2) - 1/2`` (odd ``l``); type B has ``b`` at its lower bound and
    moves to ``ceil(T(g) + p*l/2 - 1)``.  The other component keeps its ``b``
    unless the new linking number pushes the lower bound
    ``ceil(g - 1 + p*l/2)`` above it.
    """
    i = c.component - 1
    b, g, l = inv.b[i], inv.g[i], inv.linking
    if inv.link_type == TYPE_A:
        if l % 2 == 0:
            cabled = c.t(b + 1) - 1
        else:
            cabled = c.t(Fraction(2 * b + 1, 2)) - Fraction(1, 2)
    else:
        cabled = c.t(g) + Fraction(c.p * l, 2) - 1
    j = 1 - i
    other = max(inv.b[j], math.ceil(inv.g[j] - 1 + Fraction(c.p * l, 2)))
    out = [0, 0]
    out[i] = math.ceil(cabled)
    out[j] = other
    return out[0], out[1]


def cable_maximal_point(point: tuple[int, int], c: CableParams) -> tuple[int, int]:
    """Image ``(T(s1 + 1) - 1, s2)`` of a maximal point (doubled coordinates, cabled axis first)."""
    i = c.component - 1
    s = Fraction(point[i], 2)
    moved = to_doubled(c.t(s + 1) - 1)
    out = list(point)
    out[i] = moved
    return out[0], out[1]


@dataclass(frozen=True)
class CableReport:
    descriptor: LinkDescriptor
    invariants: LinkInvariants
    formula_b: tuple[int, int]
    derived_b: tuple[int, int]
    expected_maximal: frozenset
    iff_persists: bool | None


def cable_link(desc: LinkDescriptor, c: CableParams, *, q_large: bool = False) -> CableReport:
    """Cable one component and check the result against the transport formulas.

    ``q_large`` is the caller's assertion that ``q/p`` is large enough for the
    cable to stay an L-space link; the cabled H-function is validated as well.
    Mismatches between derived and predicted ``b``, maximal points, or the
    reflected-coefficient hypothesis raise ``InconsistencyError``.
    """
    if not q_large:
        raise InvalidParameters("cabling needs q_large=True: the caller must assert q/p is large enough")
    h = desc.h_function()
    inv = link_invariants(h)
    delta2 = desc.alexander2 if desc.alexander2 is not None else alexander_from_h(h)
    i = c.component - 1
    comps = list(desc.component_alexander)
    comps[i] = cable_knot_alexander(comps[i], c)
    new_l = c.p * desc.linking
    new_delta2 = cable_link_alexander(delta2, c, desc.linking)
    if c.p == 1:
        name = desc.name
    else:
        name = f"{desc.name}_cable{c.component}({c.p},{c.q})"
    out = LinkDescriptor(name, new_l, (comps[0], comps[1]), alexander2=new_delta2)
    new_h = link_h_from_alexander(new_delta2, comps[0], comps[1], new_l)
    out._h = new_h
    new_inv = link_invariants(new_h)
    formula = cable_b(inv, c)
    if formula != new_inv.b:
        raise InconsistencyError(
            f"cable b: formula {formula}, derived {new_inv.b}",
            {"link": desc.name, "p": c.p, "q": c.q, "component": c.component},
        )
    expected = frozenset(cable_maximal_point(m, c) for m in inv.maximal_points)
    if expected != new_inv.maximal_points:
        raise InconsistencyError(
            "cable maximal points differ from the transported set",
            {"expected": sorted(expected), "derived": sorted(new_inv.maximal_points)},
        )
    persists = None
    old_flags = AlexFlags.from_coefficients(inv, coefficient_from_poly(delta2))
    if iff_hypothesis(inv, old_flags):
        new_flags = AlexFlags.from_coefficients(new_inv, coefficient_from_poly(new_delta2))
        persists = iff_hypothesis(new_inv, new_flags)
        if not persists:
            raise InconsistencyError(
                "reflected-coefficient hypothesis lost under cabling",
                {"link": desc.name, "p": c.p, "q": c.q},
            )
    return CableReport(out, new_inv, formula, new_inv.b, expected, persists)


def naive_cable_b(inv: LinkInvariants, c: CableParams) -> tuple[int, int]:
    """The type/parity rule applied to every link, with the other ``b`` left alone.

    Type A with odd ``l`` uses ``T(b + 1/2) - 1/2``; everything else uses
    ``T(b + 1) - 1``.  This agrees with :func:`cable_b` when ``l = 0`` and is
    kept so callers can see where the two part ways (type B, ``l`` odd).
    """
    i = c.component - 1
    b, l = inv.b[i], inv.linking
    if inv.link_type == TYPE_A and l % 2:
        cabled = c.t(Fraction(2 * b + 1, 2)) - Fraction(1, 2)
    else:
        cabled = c.t(b + 1) - 1
    out = list(inv.b)
    out[i] = math.ceil(cabled)
    return out[0], out[1]

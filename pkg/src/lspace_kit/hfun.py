"""H-functions of L-space knots and two-component L-space links.

Lattice points are handled in doubled coordinates internally: the point
``(s1, s2)`` of ``(Z + l/2)^2`` is the integer pair ``(2*s1, 2*s2)``, whose
entries are congruent to ``l`` mod 2.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping

from .errors import LatticeMismatch, NotLSpaceKnot, NotLSpaceLink
from .poly import LaurentPoly, Number, check_knot_polynomial, fmt_doubled, to_doubled


@dataclass(frozen=True)
class HFunction1D:
    """H-function of an L-space knot, ``H(s) = sum_j a_j * max(j - s, 0)``."""

    delta: LaurentPoly
    genus: int
    _coeffs: tuple[tuple[int, int], ...] = field(repr=False, compare=False, default=())

    def __call__(self, s: Number) -> int:
        d = to_doubled(s)
        if d % 2:
            raise LatticeMismatch(f"knot H-function needs an integer, got {fmt_doubled(d)}")
        return self.at(d // 2)

    def at(self, s: int) -> int:
        """Evaluate at an integer ``s``."""
        if s >= self.genus:
            return 0
        if s <= -self.genus:
            return -s
        return sum(a * (j - s) for j, a in self._coeffs if j > s)

    def values(self, lo: int, hi: int) -> list[int]:
        return [self.at(s) for s in range(lo, hi + 1)]


def knot_h_from_alexander(delta: LaurentPoly) -> HFunction1D:
    """Build the H-function of an L-space knot from its symmetrized Alexander polynomial.

    Raises ``NotLSpaceKnot`` if the polynomial is not normalized or the resulting
    function is negative somewhere or drops by more than one.
    """
    check_knot_polynomial(delta)
    coeffs = tuple(sorted((e[0] // 2, c) for e, c in delta.terms.items()))
    genus = max(j for j, _ in coeffs)
    h = HFunction1D(delta, genus, coeffs)
    prev = None
    for s in range(genus + 1, -genus - 2, -1):
        v = sum(a * max(j - s, 0) for j, a in coeffs)
        if v < 0:
            raise NotLSpaceKnot(f"H({s}) = {v} is negative")
        if prev is not None and v - prev not in (0, 1):
            raise NotLSpaceKnot(f"H({s}) - H({s + 1}) = {v - prev} is not 0 or 1")
        prev = v
    return h


def unknot_h() -> HFunction1D:
    return knot_h_from_alexander(LaurentPoly.constant(1, 1))


@dataclass(frozen=True)
class Violation:
    """One failed identity at one lattice point (doubled coordinates)."""

    point: tuple[int, int]
    identity: str
    detail: str

    def __str__(self) -> str:
        s1, s2 = (fmt_doubled(x) for x in self.point)
        return f"({s1}, {s2}): {self.identity}: {self.detail}"


class HFunction2D:
    """H-function of a two-component link on a symmetric window, extended by rule outside it.

    ``radius`` is the doubled half-width of the window; the table holds every
    lattice point with both doubled coordinates in ``[-radius, radius]``.
    """

    def __init__(
        self,
        linking: int,
        radius: int,
        table: list[list[int]],
        boundary1: HFunction1D,
        boundary2: HFunction1D,
        *,
        source: str = "alexander",
    ):
        if (radius - linking) % 2:
            raise LatticeMismatch("window radius must share the parity of the linking number")
        n = radius + 1
        if len(table) != n or any(len(row) != n for row in table):
            raise ValueError(f"table must be {n}x{n}")
        self.linking = linking
        self.radius = radius
        self._table = table
        self.boundary1 = boundary1
        self.boundary2 = boundary2
        self.source = source
        self._memo: dict[tuple[int, int], int] = {}
        self._lock = threading.Lock()

    # basic geometry ---------------------------------------------------------

    @property
    def l(self) -> int:
        return abs(self.linking)

    def points(self) -> Iterator[tuple[int, int]]:
        r = self.radius
        for a in range(-r, r + 1, 2):
            for b in range(-r, r + 1, 2):
                yield a, b

    def check_point(self, d1: int, d2: int) -> None:
        if (d1 - self.linking) % 2 or (d2 - self.linking) % 2:
            raise LatticeMismatch(
                f"({fmt_doubled(d1)}, {fmt_doubled(d2)}) is not on the lattice (Z + {fmt_doubled(self.linking)}/2)^2"
            )

    def in_window(self, d1: int, d2: int) -> bool:
        return -self.radius <= d1 <= self.radius and -self.radius <= d2 <= self.radius

    def window_value(self, d1: int, d2: int) -> int:
        r = self.radius
        return self._table[(d1 + r) // 2][(d2 + r) // 2]

    # evaluation -------------------------------------------------------------

    def h1_inf(self, d1: int) -> int:
        """``H(s1, infinity)`` for doubled ``s1``."""
        return self.boundary1.at((d1 - self.linking) // 2)

    def inf_h2(self, d2: int) -> int:
        """``H(infinity, s2)`` for doubled ``s2``."""
        return self.boundary2.at((d2 - self.linking) // 2)

    def at(self, d1: int, d2: int) -> int:
        """Evaluate at doubled coordinates without the parity check."""
        r = self.radius
        if -r <= d1 <= r and -r <= d2 <= r:
            return self._table[(d1 + r) // 2][(d2 + r) // 2]
        key = (d1, d2)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if d1 > r:
            v = self.inf_h2(d2)
        elif d2 > r:
            v = self.h1_inf(d1)
        else:
            # H(s) = H(-s) - s1 - s2, and -s has a coordinate above the window
            v = self.at(-d1, -d2) - (d1 + d2) // 2
        with self._lock:
            self._memo[key] = v
        return v

    def __call__(self, s1: Number, s2: Number) -> int:
        d1, d2 = to_doubled(s1), to_doubled(s2)
        self.check_point(d1, d2)
        return self.at(d1, d2)

    def table(self, lo: Number, hi: Number) -> dict[tuple[Fraction, Fraction], int]:
        """Values on ``[lo, hi]^2`` keyed by real coordinates."""
        dlo, dhi = to_doubled(lo), to_doubled(hi)
        self.check_point(dlo, dhi)
        return {
            (Fraction(a, 2), Fraction(b, 2)): self.at(a, b)
            for a in range(dlo, dhi + 1, 2)
            for b in range(dlo, dhi + 1, 2)
        }

    def grid(self, lo: Number, hi: Number) -> list[list[int]]:
        """Rows from top (largest ``s2``) to bottom, columns by increasing ``s1``."""
        dlo, dhi = to_doubled(lo), to_doubled(hi)
        self.check_point(dlo, dhi)
        return [[self.at(a, b) for a in range(dlo, dhi + 1, 2)] for b in range(dhi, dlo - 1, -2)]

    def __repr__(self) -> str:
        return f"HFunction2D(linking={self.linking}, radius={fmt_doubled(self.radius)}, source={self.source!r})"


def _window_radius(delta2: LaurentPoly, g1: int, g2: int, l: int) -> int:
    half = -(-delta2.radius() // 2) + 1
    r = max(half, g1, g2) + l + 2
    return 2 * r + l % 2


def link_h_from_alexander(
    delta2: LaurentPoly,
    delta_1: LaurentPoly,
    delta_2: LaurentPoly,
    l: int,
    *,
    extra_margin: int = 0,
    validate: bool = True,
) -> HFunction2D:
    """Solve the inclusion-exclusion recursion for ``H`` on a window.

    ``chi(s1, s2)`` is the coefficient of ``t1^{s1-1/2} t2^{s2-1/2}`` in
    ``delta2``; the sweep starts from the stabilized boundary values on the
    top and right edges of the window and moves toward the bottom-left corner.
    """
    if l < 0:
        raise LatticeMismatch("the working convention needs linking number >= 0")
    if delta2.nvars != 2:
        raise NotLSpaceLink("two-variable polynomial expected")
    want = (l + 1) % 2
    bad = [e for e in delta2.terms if e[0] % 2 != want or e[1] % 2 != want]
    if bad:
        raise LatticeMismatch(f"exponents {bad[:3]} do not match linking number {l}")
    h1 = knot_h_from_alexander(delta_1)
    h2 = knot_h_from_alexander(delta_2)
    radius = _window_radius(delta2, h1.genus, h2.genus, l) + 2 * extra_margin
    n = radius + 1
    chi = delta2.terms
    table = [[0] * n for _ in range(n)]
    top = n - 1
    for k in range(n):
        d = -radius + 2 * k
        table[top][k] = h2.at((d - l) // 2)
        table[k][top] = h1.at((d - l) // 2)
    for a in range(n - 2, -1, -1):
        row, up = table[a], table[a + 1]
        t1 = -radius + 2 * (a + 1)
        for b in range(n - 2, -1, -1):
            t2 = -radius + 2 * (b + 1)
            c = chi.get((t1 - 1, t2 - 1), 0)
            row[b] = row[b + 1] + up[b] - up[b + 1] - c
    h = HFunction2D(l, radius, table, h1, h2)
    if validate:
        problems = validate_h(h)
        if problems:
            raise NotLSpaceLink(
                f"{len(problems)} violation(s); first: {problems[0]}", problems
            )
    return h


def h_from_table(
    l: int,
    values: Mapping[tuple[int, int], int],
    boundary1: HFunction1D,
    boundary2: HFunction1D,
    *,
    validate: bool = True,
    source: str = "table",
) -> HFunction2D:
    """Wrap an explicit table keyed by doubled coordinates covering a symmetric square."""
    if not values:
        raise ValueError("empty H-table")
    radius = max(max(abs(a), abs(b)) for a, b in values)
    n = radius + 1
    table = [[0] * n for _ in range(n)]
    for a in range(-radius, radius + 1, 2):
        for b in range(-radius, radius + 1, 2):
            try:
                table[(a + radius) // 2][(b + radius) // 2] = values[(a, b)]
            except KeyError:
                raise ValueError(f"H-table is missing ({fmt_doubled(a)}, {fmt_doubled(b)})") from None
    h = HFunction2D(l, radius, table, boundary1, boundary2, source=source)
    if validate:
        problems = validate_h(h)
        if problems:
            raise NotLSpaceLink(f"{len(problems)} violation(s); first: {problems[0]}", problems)
    return h


def validate_h(h: HFunction2D) -> list[Violation]:
    """Check nonnegativity, unit growth, conjugation symmetry and boundary identities on the window."""
    out: list[Violation] = []
    r = h.radius
    lk = h.linking
    for a, b in h.points():
        v = h.window_value(a, b)
        if v < 0:
            out.append(Violation((a, b), "nonnegativity", f"H = {v}"))
        for name, (pa, pb) in (("growth in s1", (a - 2, b)), ("growth in s2", (a, b - 2))):
            if pa >= -r and pb >= -r:
                jump = h.window_value(pa, pb) - v
                if jump not in (0, 1):
                    out.append(Violation((a, b), name, f"H(s - e) - H(s) = {jump}"))
        mirror = h.window_value(-a, -b)
        if mirror != v + (a + b) // 2:
            out.append(Violation((a, b), "symmetry", f"H(-s) = {mirror}, H(s) + s1 + s2 = {v + (a + b) // 2}"))
        lhs = mirror - h.inf_h2(-b)
        rhs = v - h.inf_h2(b + 2 * lk) + (a - lk) // 2
        if lhs != rhs:
            out.append(Violation((a, b), "reflected difference", f"{lhs} != {rhs}"))
    for k in range(-r, r + 1, 2):
        if h.window_value(r, k) != h.inf_h2(k):
            out.append(Violation((r, k), "boundary in s1", f"{h.window_value(r, k)} != H2 = {h.inf_h2(k)}"))
        if h.window_value(k, r) != h.h1_inf(k):
            out.append(Violation((k, r), "boundary in s2", f"{h.window_value(k, r)} != H1 = {h.h1_inf(k)}"))
    return out


def reverse_orientation(h: HFunction2D) -> HFunction2D:
    """H-function after reversing the first component: ``H'(s1, s2) = H(-s1, s2) - s1 - l/2``.

    The result carries linking number ``-l``.
    """
    r = h.radius
    n = r + 1
    table = [[0] * n for _ in range(n)]
    for a, b in h.points():
        table[(a + r) // 2][(b + r) // 2] = h.window_value(-a, b) - (a + h.linking) // 2
    return HFunction2D(-h.linking, r, table, h.boundary1, h.boundary2, source=h.source + "+reversed")


def alexander_from_h(h: HFunction2D) -> LaurentPoly:
    """Recover the two-variable polynomial from ``H`` by inclusion-exclusion over unit squares.

    The coefficient of ``t1^{s1-1/2} t2^{s2-1/2}`` is
    ``H(s1-1, s2) + H(s1, s2-1) - H(s1, s2) - H(s1-1, s2-1)``.
    """
    terms = {}
    r = h.radius + 2
    for a in range(-r, r + 1, 2):
        for b in range(-r, r + 1, 2):
            c = h.at(a - 2, b) + h.at(a, b - 2) - h.at(a, b) - h.at(a - 2, b - 2)
            if c:
                terms[(a - 1, b - 1)] = c
    return LaurentPoly(2, terms)

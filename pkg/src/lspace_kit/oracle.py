"""Rule engine for L-space surgeries and region maps checked against direct computation.

Every rule is a published necessary or sufficient condition; each verdict lists
the rules that fired so a reader can audit it.  Rules never contradict each
other on a correct H-function, so any conflict raises ``InconsistencyError``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .complex import SurgeryMatrix, is_lspace_surgery, worker_count
from .errors import InconsistencyError
from .hfun import HFunction2D
from .invariants import TYPE_A, LinkInvariants, link_invariants
from .poly import LaurentPoly

LSPACE = "LSPACE"
NOT_LSPACE = "NOT_LSPACE"
UNKNOWN = "UNKNOWN"

RULES = {
    "R0": "det = 0: first Betti number is positive",
    "R1": "large surgery: d1 > 2b1 and d2 > 2b2",
    "R2": "type A links need d1 > 0, d2 > 0 and det > 0",
    "R3": "very negative surgery on a type B link forces both components unknotted",
    "R4": "d_i > 2b_i + l with d_j < 0 forces component j unknotted",
    "R5": "unknotted components with l > 1 admit no surgery with d1, d2 < 0, det > 0",
    "R6": "l = 0, d_i > 2b_i, d_j < 0 forces a split union with an unknot",
    "R7": "l = 0 or type A: some component surgery S^3_{d_i}(L_i) must be an L-space",
    "R8": "l = 0, d_j > 2b_j, d_i > 0 forces d_i > b_i and d_i >= 2g_i - 1",
    "R9": "l = 0, L_j unknotted, d_j > b_j, d_i > 0 forces d_i > 2b_i",
    "R10": "l = 0 with b_i = g_i - 1: L-space iff d1 > 2b1 and d2 > 2b2",
    "R11": "maximal point (s1, s2) with reflected Alexander coefficient: d_j > 2b_j forces d_i > 2s_i",
    "R12": "b realised by maximal points with reflected coefficients: L-space iff d1 > 2b1 and d2 > 2b2",
    "R13": "surgery induction along an axis from a known L-space surgery",
    "R13c": "surgery induction read backwards from a known non-L-space surgery",
}


def knot_surgery_is_lspace(g: int, d: int) -> bool:
    """``S^3_d(K)`` for an L-space knot of genus ``g`` is an L-space iff ``d >= 2g - 1`` (and ``d != 0``)."""
    if g < 0:
        raise ValueError("genus must be >= 0")
    if d == 0:
        return False
    if g == 0:
        return True
    return d >= 2 * g - 1


@dataclass
class Verdict:
    d1: int
    d2: int
    status: str
    rules: list[str] = field(default_factory=list)
    computed: bool | None = None

    @property
    def det_zero(self) -> bool:
        return "R0" in self.rules

    def describe_rules(self) -> list[str]:
        return [f"{r}: {RULES[r]}" for r in self.rules]

    def to_dict(self) -> dict:
        return {
            "d1": self.d1,
            "d2": self.d2,
            "status": self.status,
            "rules": list(self.rules),
            "computed": self.computed,
        }


Coefficient = Callable[[int, int], int]


def coefficient_from_h(h: HFunction2D) -> Coefficient:
    """Coefficient of ``t1^{x} t2^{y}`` (doubled exponents) recovered from ``H`` by inclusion-exclusion."""

    def coeff(x: int, y: int) -> int:
        a, b = x + 1, y + 1
        return h.at(a - 2, b) + h.at(a, b - 2) - h.at(a, b) - h.at(a - 2, b - 2)

    return coeff


def coefficient_from_poly(delta2: LaurentPoly) -> Coefficient:
    terms = delta2.terms
    return lambda x, y: terms.get((x, y), 0)


@dataclass(frozen=True)
class AlexFlags:
    """Which maximal points carry a nonzero coefficient at their reflected monomials.

    ``reflect1`` holds maximal points ``(s1, s2)`` with ``t1^{-s1-1/2} t2^{s2+1/2}``
    present; ``reflect2`` those with ``t1^{s1+1/2} t2^{-s2-1/2}`` present.
    Points are in doubled coordinates.
    """

    reflect1: frozenset
    reflect2: frozenset

    @classmethod
    def from_coefficients(cls, inv: LinkInvariants, coeff: Coefficient) -> "AlexFlags":
        r1 = frozenset(p for p in inv.maximal_points if coeff(-p[0] - 1, p[1] + 1) != 0)
        r2 = frozenset(p for p in inv.maximal_points if coeff(p[0] + 1, -p[1] - 1) != 0)
        return cls(r1, r2)


def _half(d: int) -> Fraction:
    return Fraction(d, 2)


def _fire(inv: LinkInvariants, flags: AlexFlags, d1: int, d2: int) -> tuple[list[str], list[str]]:
    """Rules concluding (L-space, not L-space) at one point."""
    yes: list[str] = []
    no: list[str] = []
    b1, b2, g1, g2, l = inv.b1, inv.b2, inv.g1, inv.g2, inv.linking
    det = d1 * d2 - l * l
    nontrivial = not inv.split_sum
    d = (d1, d2)
    b = (b1, b2)
    g = (g1, g2)

    if d1 > 2 * b1 and d2 > 2 * b2:
        yes.append("R1")
    if inv.link_type == TYPE_A and (d1 <= 0 or d2 <= 0 or det <= 0):
        no.append("R2")
    if (g1 >= 1 or g2 >= 1) and d1 < -2 * b1 - l and d2 < -2 * b2 - l:
        no.append("R3")
    for i, j in ((0, 1), (1, 0)):
        if g[j] >= 1 and d[i] > 2 * b[i] + l and d[j] < 0:
            no.append("R4")
            break
    if g1 == 0 and g2 == 0 and l > 1 and d1 < 0 and d2 < 0 and det > 0 and nontrivial:
        no.append("R5")
    if l == 0 and not inv.split_with_unknot:
        for i, j in ((0, 1), (1, 0)):
            if d[i] > 2 * b[i] and d[j] < 0:
                no.append("R6")
                break
    if (l == 0 or inv.link_type == TYPE_A) and not (
        knot_surgery_is_lspace(g1, d1) or knot_surgery_is_lspace(g2, d2)
    ):
        no.append("R7")
    if l == 0 and nontrivial:
        for i, j in ((0, 1), (1, 0)):
            if d[j] > 2 * b[j] and 0 < d[i] <= max(b[i], 2 * g[i] - 2):
                no.append("R8")
                break
        for i, j in ((0, 1), (1, 0)):
            if g[j] == 0 and d[j] > b[j] and 0 < d[i] <= 2 * b[i]:
                no.append("R9")
                break
    if l == 0 and b1 == g1 - 1 and b2 == g2 - 1:
        (yes if d1 > 2 * b1 and d2 > 2 * b2 else no).append("R10")
    for p in flags.reflect1:
        if d2 > 2 * b2 and d1 <= p[0]:
            no.append("R11")
            break
    else:
        for p in flags.reflect2:
            if d1 > 2 * b1 and d2 <= p[1]:
                no.append("R11")
                break
    if iff_hypothesis(inv, flags):
        (yes if d1 > 2 * b1 and d2 > 2 * b2 else no).append("R12")
    return yes, no


def iff_hypothesis(inv: LinkInvariants, flags: AlexFlags) -> bool:
    has1 = any(_half(p[0]) == inv.b1 for p in flags.reflect1)
    has2 = any(_half(p[1]) == inv.b2 for p in flags.reflect2)
    return has1 and has2


def theorem_verdict(inv: LinkInvariants, flags: AlexFlags, d1: int, d2: int) -> Verdict:
    """Pointwise verdict from the rules that need no neighbouring information."""
    if d1 * d2 - inv.linking ** 2 == 0:
        return Verdict(d1, d2, NOT_LSPACE, ["R0"])
    yes, no = _fire(inv, flags, d1, d2)
    if yes and no:
        raise InconsistencyError(
            f"rules disagree at ({d1}, {d2}): {yes} say L-space, {no} say not",
            {"d1": d1, "d2": d2, "yes": yes, "no": no, "invariants": inv.to_dict()},
        )
    if yes:
        return Verdict(d1, d2, LSPACE, yes)
    if no:
        return Verdict(d1, d2, NOT_LSPACE, no)
    return Verdict(d1, d2, UNKNOWN, [])


def _induction_step(inv: LinkInvariants, d1: int, d2: int, axis: int) -> int | None:
    """Direction (+1 or -1) along ``axis`` in which an L-space at ``(d1, d2)`` propagates, if any.

    Varying ``d1`` needs the other component's surgery to be an L-space and
    compares ``det`` with that of the remaining 1x1 framing matrix.
    """
    det = d1 * d2 - inv.linking ** 2
    other_d, other_g = (d2, inv.g2) if axis == 0 else (d1, inv.g1)
    if det == 0 or not knot_surgery_is_lspace(other_g, other_d):
        return None
    return 1 if det * other_d > 0 else -1


def propagate(inv: LinkInvariants, grid: dict[tuple[int, int], Verdict], bounds: tuple[int, int, int, int]) -> None:
    """Close ``grid`` under surgery induction (in place).

    Forward: an L-space at ``p`` gives L-spaces at every ``p + k*step``.
    Backward: a non-L-space at ``p + k*step`` rules out ``p`` whenever ``p``
    satisfies the hypotheses that would have produced it.
    """
    lo1, hi1, lo2, hi2 = bounds
    changed = True
    while changed:
        changed = False
        for (d1, d2), v in sorted(grid.items()):
            for axis in (0, 1):
                step = _induction_step(inv, d1, d2, axis)
                if step is None:
                    continue
                ray = []
                k = 1
                while True:
                    q = (d1 + k * step, d2) if axis == 0 else (d1, d2 + k * step)
                    if not (lo1 <= q[0] <= hi1 and lo2 <= q[1] <= hi2):
                        break
                    ray.append(q)
                    k += 1
                if v.status == LSPACE:
                    for q in ray:
                        w = grid[q]
                        if w.status == NOT_LSPACE:
                            raise InconsistencyError(
                                f"induction from L-space ({d1}, {d2}) reaches non-L-space {q}",
                                {"from": v.to_dict(), "to": w.to_dict(), "invariants": inv.to_dict()},
                            )
                        if w.status == UNKNOWN:
                            w.status = LSPACE
                            w.rules = ["R13"]
                            changed = True
                elif v.status == UNKNOWN:
                    if any(grid[q].status == NOT_LSPACE for q in ray):
                        v.status = NOT_LSPACE
                        v.rules = ["R13c"]
                        changed = True


@dataclass
class RegionMap:
    bounds: tuple[int, int, int, int]
    grid: dict[tuple[int, int], Verdict]
    mode: str

    def at(self, d1: int, d2: int) -> Verdict:
        return self.grid[(d1, d2)]

    def symbol(self, d1: int, d2: int) -> str:
        v = self.grid[(d1, d2)]
        status = v.status
        if v.computed is not None and status == UNKNOWN:
            status = LSPACE if v.computed else NOT_LSPACE
        if v.det_zero:
            return "0"
        return {LSPACE: "L", NOT_LSPACE: "n", UNKNOWN: "?"}[status]

    def lspace_points(self) -> list[tuple[int, int]]:
        return [p for p in sorted(self.grid) if self.symbol(*p) == "L"]

    def ascii(self) -> str:
        """Rows from the largest ``d2`` down; columns by increasing ``d1``."""
        lo1, hi1, lo2, hi2 = self.bounds
        width = max(len(str(lo2)), len(str(hi2)))
        lines = []
        for d2 in range(hi2, lo2 - 1, -1):
            cells = " ".join(self.symbol(d1, d2) for d1 in range(lo1, hi1 + 1))
            lines.append(f"{d2:>{width}} | {cells}")
        lines.append(" " * width + " +" + "-" * (2 * (hi1 - lo1 + 1)))
        lines.append(" " * (width + 3) + f"d1 = {lo1} .. {hi1}")
        return "\n".join(lines)

    def svg(self, cell: int = 24) -> str:
        lo1, hi1, lo2, hi2 = self.bounds
        cols, rows = hi1 - lo1 + 1, hi2 - lo2 + 1
        fill = {"L": "#3a3", "n": "#d33", "?": "#fff", "0": "#ccc"}
        pad = 30
        parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{cols * cell + pad}" height="{rows * cell + pad}">'
        ]
        for r, d2 in enumerate(range(hi2, lo2 - 1, -1)):
            parts.append(f'<text x="2" y="{r * cell + cell * 0.7:.1f}" font-size="10">{d2}</text>')
            for c, d1 in enumerate(range(lo1, hi1 + 1)):
                s = self.symbol(d1, d2)
                parts.append(
                    f'<rect x="{pad + c * cell}" y="{r * cell}" width="{cell}" height="{cell}" '
                    f'fill="{fill[s]}" stroke="#555"><title>({d1}, {d2}) {s}</title></rect>'
                )
        for c, d1 in enumerate(range(lo1, hi1 + 1)):
            parts.append(f'<text x="{pad + c * cell + 4}" y="{rows * cell + 14}" font-size="10">{d1}</text>')
        parts.append("</svg>")
        return "\n".join(parts)

    def to_dict(self) -> dict:
        return {
            "bounds": list(self.bounds),
            "mode": self.mode,
            "grid": [self.grid[p].to_dict() for p in sorted(self.grid)],
        }


THEOREMS = "theorems"
COMPUTATION = "computation"


def link_context(h: HFunction2D, delta2: LaurentPoly | None = None) -> tuple[LinkInvariants, AlexFlags]:
    inv = link_invariants(h)
    coeff = coefficient_from_poly(delta2) if delta2 is not None else coefficient_from_h(h)
    return inv, AlexFlags.from_coefficients(inv, coeff)


def region_map(
    h: HFunction2D,
    bounds: tuple[int, int, int, int],
    mode: str = THEOREMS,
    *,
    delta2: LaurentPoly | None = None,
    workers: int | None = None,
) -> RegionMap:
    """Verdicts on every integer point of ``[d1min, d1max] x [d2min, d2max]``.

    In ``computation`` mode every point with ``det != 0`` is also computed
    directly and any disagreement with a determined verdict raises.
    """
    if mode not in (THEOREMS, COMPUTATION):
        raise ValueError(f"mode must be {THEOREMS!r} or {COMPUTATION!r}")
    lo1, hi1, lo2, hi2 = bounds
    if lo1 > hi1 or lo2 > hi2:
        raise ValueError("empty box")
    inv, flags = link_context(h, delta2)
    grid = {
        (d1, d2): theorem_verdict(inv, flags, d1, d2)
        for d1 in range(lo1, hi1 + 1)
        for d2 in range(lo2, hi2 + 1)
    }
    propagate(inv, grid, bounds)
    if mode == COMPUTATION:
        todo = [p for p in sorted(grid) if not grid[p].det_zero]
        b = inv.b
        workers = worker_count() if workers is None else workers

        def run(p):
            return is_lspace_surgery(h, SurgeryMatrix(p[0], p[1], h.l), b=b, workers=1)

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(run, todo))
        else:
            results = [run(p) for p in todo]
        for p, got in zip(todo, results):
            v = grid[p]
            v.computed = got
            if v.status != UNKNOWN and (v.status == LSPACE) != got:
                raise InconsistencyError(
                    f"rules say {v.status} at {p} but the complex says {'L-space' if got else 'not an L-space'}",
                    {"verdict": v.to_dict(), "invariants": inv.to_dict(), "rules": v.describe_rules()},
                )
    return RegionMap(bounds, grid, mode)

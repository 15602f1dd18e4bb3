"""Truncated perturbed surgery complexes and their homology over GF(2).

A Spin^c class is an orbit ``u + Z*Lambda1 + Z*Lambda2`` in the lattice of the
link.  Cells are indexed by integer pairs ``(i, j)`` standing for the lattice
point ``u + i*Lambda1 + j*Lambda2``; each point carries four cells labelled
``00``, ``10``, ``01`` and ``11``.  Picture the points as unit squares of the
``(i, j)`` plane: ``00`` is the square, ``10`` its left edge, ``01`` its bottom
edge and ``11`` its lower-left corner.  The ``-L1`` map from the square at
``(i, j)`` lands on its right edge, the ``10`` cell at ``(i + 1, j)``.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InconsistencyError, InvalidParameters, NotLSpace, NotRationalHomologySphere
from .hfun import HFunction2D
from .invariants import compute_b

LABELS = ("00", "10", "01", "11")
Cell = tuple[str, tuple[int, int]]

DEFAULT_CAP = 64
MIN_HALF_WIDTH = 2

GEN_00 = "00"
GEN_11 = "11"
GEN_MID = "01+10"

EXPECTED_GENERATOR = {1: GEN_00, 2: GEN_11, 3: GEN_MID, 4: GEN_MID, 5: GEN_MID}

# (left 10 column dropped, right 10 column added, bottom 01 row dropped, top 01 row added)
_CASE_SHAPES = {
    1: (1, 0, 1, 0),
    2: (0, 1, 0, 1),
    3: (1, 0, 0, 1),
    4: (0, 1, 1, 0),
    5: (1, 0, 1, 0),
}


@dataclass(frozen=True)
class SurgeryMatrix:
    d1: int
    d2: int
    l: int

    def __post_init__(self) -> None:
        if self.l < 0:
            raise InvalidParameters("linking number must be >= 0 (reverse an orientation first)")

    @property
    def det(self) -> int:
        return self.d1 * self.d2 - self.l * self.l

    @property
    def lambda1(self) -> tuple[int, int]:
        return self.d1, self.l

    @property
    def lambda2(self) -> tuple[int, int]:
        return self.l, self.d2

    def require_rhs(self) -> None:
        if self.det == 0:
            raise NotRationalHomologySphere(
                f"det of surgery matrix ({self.d1}, {self.l}; {self.l}, {self.d2}) is 0: "
                "not a rational homology sphere"
            )

    def theta(self, point: tuple[int, int]) -> tuple[Fraction, Fraction]:
        """Coordinates of a doubled lattice point in the basis ``Lambda1, Lambda2``."""
        s1, s2 = Fraction(point[0], 2), Fraction(point[1], 2)
        det = self.det
        return (self.d2 * s1 - self.l * s2) / det, (self.d1 * s2 - self.l * s1) / det

    def point(self, base: tuple[int, int], i: int, j: int) -> tuple[int, int]:
        return (
            base[0] + 2 * (i * self.d1 + j * self.l),
            base[1] + 2 * (i * self.l + j * self.d2),
        )

    @property
    def geometry(self) -> str:
        """``positive`` (det > 0), ``untwisted``, ``degenerate`` or ``twisted`` (det < 0)."""
        if self.det > 0:
            return "positive"
        p, l2 = self.d1 * self.d2, self.l * self.l
        if p < -l2:
            return "untwisted"
        if p == -l2:
            return "degenerate"
        return "twisted"


@dataclass(frozen=True)
class SpinCClass:
    representative: tuple[int, int]
    index: int


def spinc_classes(lam: SurgeryMatrix) -> list[SpinCClass]:
    """One class per element of ``Z^2 / Lambda Z^2``, represented by the lexicographically smallest
    offset ``(x, y)`` from the base point ``(l/2, l/2)``.

    Two offsets are equivalent iff ``adj(Lambda) * offset`` agree modulo ``det``.
    """
    lam.require_rhs()
    det = lam.det
    n = abs(det)
    seen: set[tuple[int, int]] = set()
    out: list[SpinCClass] = []
    for x in range(n):
        for y in range(n):
            key = ((lam.d2 * x - lam.l * y) % n, (lam.d1 * y - lam.l * x) % n)
            if key in seen:
                continue
            seen.add(key)
            out.append(SpinCClass((2 * x + lam.l, 2 * y + lam.l), len(out)))
            if len(out) == n:
                return out
    return out


def select_case(lam: SurgeryMatrix) -> int:
    """Truncation case for the surgery matrix.

    Positive determinant gives case 1 or 2.  With negative determinant the
    shape of ``Q`` decides: if ``Lambda1`` and ``Lambda2`` point into opposite
    half-planes on both axes (``d1*d2 <= -l^2``) the box truncations of case 3
    or 4 apply; otherwise case 5 with its two extra cells.
    """
    lam.require_rhs()
    geo = lam.geometry
    if geo == "positive":
        return 1 if lam.d1 > 0 else 2
    if geo in ("untwisted", "degenerate"):
        return 3 if lam.d1 > 0 else 4
    return 5


def quadrant_condition(lam: SurgeryMatrix, i0: int, j0: int, b: tuple[int, int]) -> bool:
    """The four vertices ``(+-i0*Lambda1 +- j0*Lambda2)/2`` sit in four different corners beyond ``b``."""
    b1, b2 = b
    seen = set()
    for a in (1, -1):
        for c in (1, -1):
            x = Fraction(a * i0 * lam.d1 + c * j0 * lam.l, 2)
            y = Fraction(a * i0 * lam.l + c * j0 * lam.d2, 2)
            if abs(x) <= b1 or abs(y) <= b2:
                return False
            seen.add((x > 0, y > 0))
    return len(seen) == 4


def minimal_half_widths(lam: SurgeryMatrix, b: tuple[int, int], cap: int = DEFAULT_CAP) -> tuple[int, int] | None:
    """Smallest ``(i0, j0)`` (by sum, then ``i0``) satisfying the quadrant condition, or ``None``."""
    lo = MIN_HALF_WIDTH
    for total in range(2 * lo, 2 * cap + 1):
        for i0 in range(max(lo, total - cap), min(cap, total - lo) + 1):
            if quadrant_condition(lam, i0, total - i0, b):
                return i0, total - i0
    return None


@dataclass
class TruncatedComplex:
    """Finite complex for one Spin^c class; ``edges`` holds ``(source, target, U-exponent)``."""

    lam: SurgeryMatrix
    spinc: SpinCClass
    case_id: int
    i0: int
    j0: int
    box: tuple[int, int, int, int]
    cells: dict[str, list[tuple[int, int]]]
    edges: list[tuple[Cell, Cell, int]]
    condition7: bool = True
    _index: dict[Cell, int] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if not self._index:
            for lab in LABELS:
                for c in self.cells[lab]:
                    self._index[(lab, c)] = len(self._index)

    def lattice_point(self, i: int, j: int) -> tuple[int, int]:
        return self.lam.point(self.spinc.representative, i, j)

    def counts(self) -> dict[str, int]:
        return {lab: len(self.cells[lab]) for lab in LABELS}

    @property
    def size(self) -> int:
        return len(self._index)


def _box(lam: SurgeryMatrix, u: SpinCClass, i0: int, j0: int) -> tuple[int, int, int, int]:
    th1, th2 = lam.theta(u.representative)
    a, c = Fraction(i0, 2), Fraction(j0, 2)
    return math.ceil(-th1 - a), math.floor(-th1 + a), math.ceil(-th2 - c), math.floor(-th2 + c)


def _cells_for_case(case_id: int, box: tuple[int, int, int, int]) -> dict[str, list[tuple[int, int]]]:
    a1, a2, b1, b2 = box
    dl, dr, eb, et = _CASE_SHAPES[case_id]
    cols = range(a1, a2 + 1)
    rows = range(b1, b2 + 1)
    cells = {
        "00": {(i, j) for i in cols for j in rows},
        "10": {(i, j) for i in range(a1 + dl, a2 + 1 + dr) for j in rows},
        "01": {(i, j) for i in cols for j in range(b1 + eb, b2 + 1 + et)},
        "11": {(i, j) for i in range(a1 + dl, a2 + 1 + dr) for j in range(b1 + eb, b2 + 1 + et)},
    }
    if case_id == 5:
        cells["10"].add((a2 + 1, b1))
        cells["01"].add((a1, b2 + 1))
    return {lab: sorted(cs) for lab, cs in cells.items()}


def _maps(h: HFunction2D, lam: SurgeryMatrix, base: tuple[int, int], lab: str, i: int, j: int):
    s1, s2 = lam.point(base, i, j)
    l = h.linking
    if lab == "00":
        here, there = h.at(s1, s2), h.at(-s1, -s2)
        yield ("10", (i, j)), here - h.inf_h2(s2)
        yield ("10", (i + 1, j)), there - h.inf_h2(-s2)
        yield ("01", (i, j)), here - h.h1_inf(s1)
        yield ("01", (i, j + 1)), there - h.h1_inf(-s1)
    elif lab == "10":
        yield ("11", (i, j)), h.boundary2.at((s2 - l) // 2)
        yield ("11", (i, j + 1)), h.boundary2.at((l - s2) // 2)
    elif lab == "01":
        yield ("11", (i, j)), h.boundary1.at((s1 - l) // 2)
        yield ("11", (i + 1, j)), h.boundary1.at((l - s1) // 2)


def build_truncated_complex(
    h: HFunction2D,
    lam: SurgeryMatrix,
    u: SpinCClass,
    *,
    b: tuple[int, int] | None = None,
    i0: int | None = None,
    j0: int | None = None,
    cap: int = DEFAULT_CAP,
) -> TruncatedComplex:
    """Assemble the truncated complex for class ``u``.

    ``(i0, j0)`` default to the smallest half-widths whose parallelogram
    satisfies the quadrant condition.  On the degenerate boundary
    ``d1*d2 = -l^2`` no parallelogram qualifies; the case 3/4 truncation is
    stable there and runs with the smallest allowed half-widths.
    """
    lam.require_rhs()
    if lam.l != h.l:
        raise InvalidParameters(f"surgery matrix has l = {lam.l} but the link has l = {h.l}")
    if b is None:
        b = compute_b(h)
    case_id = select_case(lam)
    ok = True
    if i0 is None or j0 is None:
        found = minimal_half_widths(lam, b, cap)
        if found is None:
            if lam.geometry != "degenerate":
                raise InconsistencyError(
                    f"no truncation parallelogram with half-widths <= {cap} for ({lam.d1}, {lam.d2})",
                    {"d1": lam.d1, "d2": lam.d2, "l": lam.l, "b": b},
                )
            found = (MIN_HALF_WIDTH, MIN_HALF_WIDTH)
            ok = False
        i0 = found[0] if i0 is None else i0
        j0 = found[1] if j0 is None else j0
    else:
        ok = quadrant_condition(lam, i0, j0, b)
    box = _box(lam, u, i0, j0)
    cells = _cells_for_case(case_id, box)
    tc = TruncatedComplex(lam, u, case_id, i0, j0, box, cells, [], ok)
    index = tc._index
    base = u.representative
    for lab in ("00", "10", "01"):
        for i, j in cells[lab]:
            for tgt, e in _maps(h, lam, base, lab, i, j):
                if e < 0:
                    raise InconsistencyError(
                        f"negative U-exponent {e} on {lab}{(i, j)} -> {tgt[0]}{tgt[1]}",
                        {"d1": lam.d1, "d2": lam.d2, "class": u.index},
                    )
                if tgt in index:
                    tc.edges.append(((lab, (i, j)), tgt, e))
    return tc


# GF(2) linear algebra -------------------------------------------------------


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank of a GF(2) matrix whose rows are Python ints used as bitsets."""
    pivots: dict[int, int] = {}
    rank = 0
    for v in rows:
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = v
                rank += 1
                break
            v ^= p
    return rank


def _boundary_rows(c: TruncatedComplex, hat: bool) -> dict[Cell, int]:
    rows: dict[Cell, int] = {}
    for src, tgt, e in c.edges:
        if hat and e > 0:
            continue
        rows[src] = rows.get(src, 0) ^ (1 << c._index[tgt])
    return rows


def _check_square_zero(c: TruncatedComplex, rows: dict[Cell, int]) -> None:
    by_bit = {c._index[cell]: v for cell, v in rows.items() if cell[0] in ("10", "01")}
    for i, j in c.cells["00"]:
        v = rows.get(("00", (i, j)), 0)
        acc = 0
        while v:
            low = v & -v
            acc ^= by_bit.get(low.bit_length() - 1, 0)
            v ^= low
        if acc:
            raise InconsistencyError(
                f"boundary squared is nonzero at 00{(i, j)}",
                {"d1": c.lam.d1, "d2": c.lam.d2, "class": c.spinc.index, "case": c.case_id},
            )


def homology_dims(c: TruncatedComplex, *, hat: bool = True) -> tuple[int, int, int]:
    """``(dim H(00), dim H(01+10), dim H(11))``; ``hat`` keeps exponent-0 edges, otherwise ``U = 1``."""
    rows = _boundary_rows(c, hat)
    _check_square_zero(c, rows)
    d2_rows = [rows.get(("00", cell), 0) for cell in c.cells["00"]]
    d1_rows = [rows.get((lab, cell), 0) for lab in ("10", "01") for cell in c.cells[lab]]
    r2, r1 = gf2_rank(d2_rows), gf2_rank(d1_rows)
    n2 = len(c.cells["00"])
    n1 = len(c.cells["10"]) + len(c.cells["01"])
    n0 = len(c.cells["11"])
    return n2 - r2, n1 - r1 - r2, n0 - r1


def hat_homology_dim(c: TruncatedComplex) -> int:
    return sum(homology_dims(c, hat=True))


def hfminus_free_rank(c: TruncatedComplex) -> int:
    return sum(homology_dims(c, hat=False))


def locate_generator(c: TruncatedComplex) -> str:
    """Which graded part carries the homology when the hat homology is one-dimensional."""
    dims = homology_dims(c, hat=True)
    if sum(dims) != 1:
        raise NotLSpace(f"hat homology has dimension {sum(dims)}, not 1")
    return (GEN_00, GEN_MID, GEN_11)[dims.index(1)]


# whole-surgery drivers -------------------------------------------------------


def worker_count() -> int:
    try:
        n = int(os.environ.get("LSK_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, n)


@dataclass(frozen=True)
class ClassResult:
    index: int
    representative: tuple[int, int]
    case_id: int
    i0: int
    j0: int
    hat_dim: int
    free_rank: int
    generator: str | None


def _one_class(h, lam, u, b, i0, j0) -> ClassResult:
    c = build_truncated_complex(h, lam, u, b=b, i0=i0, j0=j0)
    hat = hat_homology_dim(c)
    free = hfminus_free_rank(c)
    gen = locate_generator(c) if hat == 1 else None
    return ClassResult(u.index, u.representative, c.case_id, c.i0, c.j0, hat, free, gen)


def surgery_homology(
    h: HFunction2D,
    lam: SurgeryMatrix,
    *,
    b: tuple[int, int] | None = None,
    i0: int | None = None,
    j0: int | None = None,
    workers: int | None = None,
) -> list[ClassResult]:
    """Per-class hat dimension, free rank and generator location, in class order."""
    lam.require_rhs()
    if b is None:
        b = compute_b(h)
    classes = spinc_classes(lam)
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(classes) == 1:
        return [_one_class(h, lam, u, b, i0, j0) for u in classes]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda u: _one_class(h, lam, u, b, i0, j0), classes))


def is_lspace_surgery(h: HFunction2D, lam: SurgeryMatrix | Sequence[int], **kw) -> bool:
    """True iff every Spin^c class has one-dimensional hat homology."""
    if not isinstance(lam, SurgeryMatrix):
        lam = SurgeryMatrix(int(lam[0]), int(lam[1]), h.l)
    return all(r.hat_dim == 1 for r in surgery_homology(h, lam, **kw))

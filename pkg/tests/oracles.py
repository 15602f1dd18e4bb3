"""Reference computations that share no code path with the package.

Each function reaches its answer by a different route than the library:
closed-form sums instead of recursions, dense elimination instead of bitsets,
numeric evaluation instead of polynomial algebra.
"""

from __future__ import annotations

from fractions import Fraction


def knot_h_torsion(coeffs: dict[int, int], s: int) -> int:
    """Knot H via torsion coefficients ``t_s = sum_{j >= 1} j * a_{|s| + j}``.

    ``coeffs`` maps integer exponents to coefficients of a symmetric
    Alexander polynomial; for ``s < 0`` use ``H(s) = H(-s) - s``.
    """
    a = abs(s)
    t = sum(j * coeffs.get(a + j, 0) for j in range(1, max(coeffs, default=0) + 2))
    return t if s >= 0 else t - s


def link_h_closed_form(delta2: dict[tuple[int, int], int], k1: dict[int, int], k2: dict[int, int], l: int, s1: int, s2: int) -> int:
    """``H(s) = H1(s1 - l/2) + H2(s2 - l/2) - sum of coefficients strictly above and right of s``.

    Everything is in doubled units: ``delta2`` keys are doubled exponents and
    ``s1, s2`` doubled lattice coordinates.
    """
    corner = sum(c for (x, y), c in delta2.items() if x > s1 and y > s2)
    return knot_h_torsion(k1, (s1 - l) // 2) + knot_h_torsion(k2, (s2 - l) // 2) - corner


def torus_link_h(l: int, s1: Fraction, s2: Fraction) -> Fraction:
    """Closed form for ``T(2, 2l)`` in real coordinates."""

    def pos(x):
        return max(x, 0)

    half = Fraction(l, 2)
    return pos(half - s1) + pos(half - s2) - min(pos(half - max(s1, s2)), l)


def dense_gf2_rank(matrix: list[list[int]]) -> int:
    rows = [r[:] for r in matrix if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] % 2), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % 2:
                rows[i] = [(x + y) % 2 for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def dense_hat_dims(cells: dict[str, list], edges: list) -> tuple[int, int, int]:
    """Hat homology ``(H(00), H(01+10), H(11))`` from explicit dense boundary matrices."""
    top = [("00", c) for c in cells["00"]]
    mid = [("10", c) for c in cells["10"]] + [("01", c) for c in cells["01"]]
    low = [("11", c) for c in cells["11"]]
    col = {cell: i for group in (mid, low) for i, cell in enumerate(group)}
    d2 = [[0] * len(mid) for _ in top]
    d1 = [[0] * len(low) for _ in mid]
    row2 = {cell: i for i, cell in enumerate(top)}
    row1 = {cell: i for i, cell in enumerate(mid)}
    for src, tgt, e in edges:
        if e:
            continue
        if src in row2:
            d2[row2[src]][col[tgt]] ^= 1
        else:
            d1[row1[src]][col[tgt]] ^= 1
    r2 = dense_gf2_rank(d2) if mid else 0
    r1 = dense_gf2_rank(d1) if low else 0
    return len(top) - r2, len(mid) - r1 - r2, len(low) - r1


def eval_poly(terms: dict[tuple[int, ...], int], point: tuple[Fraction, ...]) -> Fraction:
    """Evaluate a polynomial with doubled exponents at ``t_i = u_i^2`` given the ``u_i``."""
    total = Fraction(0)
    for exps, c in terms.items():
        v = Fraction(c)
        for e, u in zip(exps, point):
            v *= u ** e
        total += v
    return total


def torus_knot_value(p: int, q: int, u: Fraction) -> Fraction:
    """Alexander polynomial of the ``(p, q)`` torus knot at ``t = u^2`` by the quotient formula."""

    def bracket(k):
        return u ** k - u ** -k

    return bracket(p * q) * bracket(1) / (bracket(p) * bracket(q))


def cable_knot_value(coeffs: dict[int, int], p: int, q: int, u: Fraction) -> Fraction:
    """``Delta(t^p) * (t^{pq/2} - t^{-pq/2}) (t^{1/2} - t^{-1/2}) / ((t^{q/2} - t^{-q/2}) (t^{p/2} - t^{-p/2}))``."""

    def bracket(k):
        return u ** k - u ** -k

    base = sum(Fraction(c) * u ** (2 * p * e) for e, c in coeffs.items())
    return base * bracket(p * q) * bracket(1) / (bracket(q) * bracket(p))

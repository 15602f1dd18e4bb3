"""Built-in link descriptors and the JSON link-file format.

Link files store every exponent doubled (``"exponent_scale": 2``) so that
half-integers round-trip exactly::

    {"schema": 1, "name": "whitehead", "linking": 0, "exponent_scale": 2,
     "alexander2": [{"e1": 1, "e2": 1, "c": -1}, ...],
     "component1": [{"e": 0, "c": 1}], "component2": [{"e": 0, "c": 1}]}

An ``"h_table"`` list of ``{"s1", "s2", "h"}`` rows (doubled coordinates)
may replace ``"alexander2"``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any, Mapping

from .errors import InvalidParameters, LatticeMismatch, UnknownLink
from .hfun import HFunction2D, h_from_table, knot_h_from_alexander, link_h_from_alexander
from .poly import LaurentPoly, half_difference, poly1

SCHEMA_VERSION = 1
EXPONENT_SCALE = 2


def unknot() -> LaurentPoly:
    return LaurentPoly.constant(1, 1)


def trefoil() -> LaurentPoly:
    """Right-handed trefoil ``t - 1 + t^{-1}``."""
    return poly1({1: 1, 0: -1, -1: 1})


def torus_knot_2(n: int) -> LaurentPoly:
    """``T(2, n)`` for odd ``n >= 1``: alternating signs from ``t^{(n-1)/2}`` down."""
    if n < 1 or n % 2 == 0:
        raise InvalidParameters(f"T(2, {n}) is not a knot")
    g = (n - 1) // 2
    return LaurentPoly(1, {(2 * e,): (-1) ** (g - e) for e in range(-g, g + 1)})


KNOTS = {"unknot": unknot, "trefoil": trefoil}


@dataclass
class LinkDescriptor:
    name: str
    linking: int
    component_alexander: tuple[LaurentPoly, LaurentPoly]
    alexander2: LaurentPoly | None = None
    h_table_override: dict[tuple[int, int], int] | None = None
    _h: HFunction2D | None = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        if (self.alexander2 is None) == (self.h_table_override is None):
            raise InvalidParameters("give exactly one of alexander2 / h_table_override")
        if self.linking < 0:
            raise InvalidParameters("linking number must be >= 0")
        if self.alexander2 is not None:
            want = (self.linking + 1) % 2
            for e in self.alexander2.terms:
                if e[0] % 2 != want or e[1] % 2 != want:
                    raise LatticeMismatch(
                        f"{self.name}: exponent {e} (doubled) has the wrong parity for linking number {self.linking}"
                    )

    def h_function(self) -> HFunction2D:
        """The validated H-function, built once and cached."""
        if self._h is None:
            c1, c2 = self.component_alexander
            if self.alexander2 is not None:
                self._h = link_h_from_alexander(self.alexander2, c1, c2, self.linking)
            else:
                self._h = h_from_table(
                    self.linking,
                    self.h_table_override,
                    knot_h_from_alexander(c1),
                    knot_h_from_alexander(c2),
                    source="table",
                )
        return self._h

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinkDescriptor):
            return NotImplemented
        return (
            self.name == other.name
            and self.linking == other.linking
            and self.component_alexander == other.component_alexander
            and self.alexander2 == other.alexander2
            and self.h_table_override == other.h_table_override
        )


# catalog entries --------------------------------------------------------------


def _x1x2() -> LaurentPoly:
    return half_difference(2, 0) * half_difference(2, 1)


def hopf() -> LinkDescriptor:
    return LinkDescriptor("hopf", 1, (unknot(), unknot()), alexander2=LaurentPoly.constant(2, 1))


def whitehead() -> LinkDescriptor:
    return LinkDescriptor("whitehead", 0, (unknot(), unknot()), alexander2=-_x1x2())


def l7a3_mirror() -> LinkDescriptor:
    """Mirror of L7a3; the knotted component is the one carrying ``t2 + t2^{-1}``."""
    t2 = LaurentPoly(2, {(0, 2): 1, (0, -2): 1})
    return LinkDescriptor("l7a3m", 0, (unknot(), trefoil()), alexander2=-(_x1x2() * t2))


def t2_2l_h(l: int, doubled_radius: int | None = None) -> dict[tuple[int, int], int]:
    """H of the torus link ``T(2, 2l)`` on a square window (doubled coordinates).

    ``H = (l/2 - s1)^+ + (l/2 - s2)^+ - min((l/2 - max(s1, s2))^+, l)``; in
    doubled units every term picks up a factor 2 that is divided out at the end.
    """
    if l < 1:
        raise InvalidParameters("T(2, 2l) needs l >= 1")
    r = doubled_radius if doubled_radius is not None else 2 * (l + 2) + l % 2
    if (r - l) % 2:
        raise LatticeMismatch("window radius parity must match l")

    def pos(x: int) -> int:
        return max(x, 0)

    out = {}
    for a in range(-r, r + 1, 2):
        for b in range(-r, r + 1, 2):
            twice = pos(l - a) + pos(l - b) - min(pos(l - max(a, b)), 2 * l)
            out[(a, b)] = twice // 2
    return out


def t2_2l_alexander(l: int) -> LaurentPoly:
    """``sum_{k=0}^{l-1} (t1 t2)^{(l-1)/2 - k}``, used only as an independent check of the table."""
    return LaurentPoly(2, {(l - 1 - 2 * k, l - 1 - 2 * k): 1 for k in range(l)})


def torus_link(l: int) -> LinkDescriptor:
    return LinkDescriptor(f"T(2,{2 * l})", l, (unknot(), unknot()), h_table_override=t2_2l_h(l))


_FIXED = {"hopf": hopf, "whitehead": whitehead, "l7a3m": l7a3_mirror}
_ALIASES = {"mirror-l7a3": "l7a3m", "l7a3": "l7a3m", "wh": "whitehead"}
_TORUS = re.compile(r"^t\(?2,\s*(\d+)\)?$")

CATALOG_NAMES = ("hopf", "whitehead", "l7a3m", "T(2,4)", "T(2,6)", "T(2,8)")


def catalog_get(name: str) -> LinkDescriptor:
    """Look up a built-in link; ``T(2,2l)`` accepts any even second index."""
    key = name.strip().lower()
    key = _ALIASES.get(key, key)
    if key in _FIXED:
        return _FIXED[key]()
    m = _TORUS.match(key.replace(" ", ""))
    if m:
        n = int(m.group(1))
        if n % 2 or n < 2:
            raise UnknownLink(f"T(2,{n}) is not a two-component link")
        if n == 2:
            return hopf()
        return torus_link(n // 2)
    raise UnknownLink(f"unknown link {name!r}; known: {', '.join(CATALOG_NAMES)}")


def catalog_names() -> tuple[str, ...]:
    return CATALOG_NAMES


# JSON ---------------------------------------------------------------------------


def _poly1_rows(p: LaurentPoly) -> list[dict[str, int]]:
    return [{"e": e[0], "c": c} for e, c in sorted(p.terms.items())]


def _poly2_rows(p: LaurentPoly) -> list[dict[str, int]]:
    return [{"e1": e[0], "e2": e[1], "c": c} for e, c in sorted(p.terms.items())]


def _rows_poly1(rows: Any, what: str) -> LaurentPoly:
    terms = {}
    for row in _as_list(rows, what):
        e, c = _int(row, "e", what), _int(row, "c", what)
        if c == 0:
            raise InvalidParameters(f"{what}: zero coefficient at e={e}")
        if (e,) in terms:
            raise InvalidParameters(f"{what}: duplicate exponent {e}")
        terms[(e,)] = c
    p = LaurentPoly(1, terms)
    if not p.is_symmetric():
        raise InvalidParameters(f"{what}: support is not symmetric")
    return p


def _rows_poly2(rows: Any, what: str) -> LaurentPoly:
    terms = {}
    for row in _as_list(rows, what):
        e = (_int(row, "e1", what), _int(row, "e2", what))
        c = _int(row, "c", what)
        if c == 0:
            raise InvalidParameters(f"{what}: zero coefficient at {e}")
        if e in terms:
            raise InvalidParameters(f"{what}: duplicate exponent {e}")
        terms[e] = c
    p = LaurentPoly(2, terms)
    if not p.is_symmetric():
        raise InvalidParameters(f"{what}: support is not symmetric")
    return p


def _as_list(rows: Any, what: str) -> list:
    if not isinstance(rows, list):
        raise InvalidParameters(f"{what} must be a list")
    return rows


def _int(row: Any, key: str, what: str) -> int:
    if not isinstance(row, Mapping) or key not in row:
        raise InvalidParameters(f"{what}: every entry needs {key!r}")
    v = row[key]
    if not isinstance(v, int) or isinstance(v, bool):
        raise InvalidParameters(f"{what}: {key!r} must be an integer, got {v!r}")
    return v


def descriptor_to_dict(desc: LinkDescriptor) -> dict:
    out: dict[str, Any] = {
        "schema": SCHEMA_VERSION,
        "name": desc.name,
        "linking": desc.linking,
        "exponent_scale": EXPONENT_SCALE,
    }
    if desc.alexander2 is not None:
        out["alexander2"] = _poly2_rows(desc.alexander2)
    else:
        out["h_table"] = [{"s1": a, "s2": b, "h": v} for (a, b), v in sorted(desc.h_table_override.items())]
    out["component1"] = _poly1_rows(desc.component_alexander[0])
    out["component2"] = _poly1_rows(desc.component_alexander[1])
    return out


def descriptor_from_dict(doc: Any) -> LinkDescriptor:
    if not isinstance(doc, Mapping):
        raise InvalidParameters("link file must hold a JSON object")
    schema = doc.get("schema", SCHEMA_VERSION)
    if schema != SCHEMA_VERSION:
        raise InvalidParameters(f"unsupported schema {schema!r}; expected {SCHEMA_VERSION}")
    if doc.get("exponent_scale") != EXPONENT_SCALE:
        raise InvalidParameters(f"exponent_scale must be {EXPONENT_SCALE}")
    linking = doc.get("linking")
    if not isinstance(linking, int) or isinstance(linking, bool):
        raise InvalidParameters("linking must be an integer")
    name = str(doc.get("name", "link"))
    comps = (
        _rows_poly1(doc.get("component1", [{"e": 0, "c": 1}]), "component1"),
        _rows_poly1(doc.get("component2", [{"e": 0, "c": 1}]), "component2"),
    )
    has_a, has_h = "alexander2" in doc, "h_table" in doc
    if has_a == has_h:
        raise InvalidParameters("give exactly one of 'alexander2' and 'h_table'")
    if has_a:
        return LinkDescriptor(name, linking, comps, alexander2=_rows_poly2(doc["alexander2"], "alexander2"))
    table = {}
    for row in _as_list(doc["h_table"], "h_table"):
        table[(_int(row, "s1", "h_table"), _int(row, "s2", "h_table"))] = _int(row, "h", "h_table")
    return LinkDescriptor(name, linking, comps, h_table_override=table)


def dumps(desc: LinkDescriptor) -> str:
    return json.dumps(descriptor_to_dict(desc), indent=1)


def loads(text: str) -> LinkDescriptor:
    """Parse a link file; malformed JSON raises ``json.JSONDecodeError`` with line and column."""
    return descriptor_from_dict(json.loads(text))


def load_link(source: str) -> LinkDescriptor:
    """A catalog name or a path to a link file."""
    try:
        return catalog_get(source)
    except UnknownLink:
        pass
    try:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    except FileNotFoundError:
        raise UnknownLink(f"{source!r} is neither a catalog name nor a readable file") from None
    return loads(text)

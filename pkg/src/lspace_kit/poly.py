"""Sparse Laurent polynomials with half-integer exponents.

Exponents are stored doubled, so ``t^{1/2}`` is the key ``(1,)`` and
``t1 t2^{-1/2}`` is ``(2, -1)``.  Coefficients are Python ints.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .errors import InvalidParameters, NotLSpaceKnot

Number = Union[int, Fraction, "HalfInt"]


class HalfInt:
    """An exact element of ``(1/2)Z`` stored as twice its value."""

    __slots__ = ("doubled",)

    def __init__(self, doubled: int):
        self.doubled = int(doubled)

    @classmethod
    def of(cls, value: Number | str | float) -> "HalfInt":
        return cls(to_doubled(value))

    @property
    def value(self) -> Fraction:
        return Fraction(self.doubled, 2)

    def is_integer(self) -> bool:
        return self.doubled % 2 == 0

    def __add__(self, other: Number) -> "HalfInt":
        return HalfInt(self.doubled + to_doubled(other))

    __radd__ = __add__

    def __sub__(self, other: Number) -> "HalfInt":
        return HalfInt(self.doubled - to_doubled(other))

    def __rsub__(self, other: Number) -> "HalfInt":
        return HalfInt(to_doubled(other) - self.doubled)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.doubled)

    def __eq__(self, other: object) -> bool:
        try:
            return self.doubled == to_doubled(other)  # type: ignore[arg-type]
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other: Number) -> bool:
        return self.doubled < to_doubled(other)

    def __le__(self, other: Number) -> bool:
        return self.doubled <= to_doubled(other)

    def __gt__(self, other: Number) -> bool:
        return self.doubled > to_doubled(other)

    def __ge__(self, other: Number) -> bool:
        return self.doubled >= to_doubled(other)

    def __hash__(self) -> int:
        return hash(self.value)

    def __repr__(self) -> str:
        return f"HalfInt({fmt_doubled(self.doubled)})"

    def __str__(self) -> str:
        return fmt_doubled(self.doubled)


def to_doubled(value: Number | str | float) -> int:
    """Return ``2*value`` as an int, rejecting anything outside ``(1/2)Z``."""
    if isinstance(value, HalfInt):
        return value.doubled
    if isinstance(value, bool):
        raise TypeError("bool is not a half-integer")
    if isinstance(value, int):
        return 2 * value
    if isinstance(value, str):
        value = Fraction(value.strip())
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"{value} is not a half-integer")
        value = Fraction(value)
    if isinstance(value, Fraction):
        twice = 2 * value
        if twice.denominator != 1:
            raise ValueError(f"{value} is not a half-integer")
        return int(twice)
    raise TypeError(f"cannot read {value!r} as a half-integer")


def fmt_doubled(d: int) -> str:
    """Render a doubled exponent as ``3``, ``-1/2`` and so on."""
    return str(d // 2) if d % 2 == 0 else f"{d}/2"


class LaurentPoly:
    """Immutable sparse Laurent polynomial in ``nvars`` variables.

    >>> t = LaurentPoly.var(0, 1)
    >>> (t - 1) * (t + 1)
    LaurentPoly1('t^2 - 1')
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], int] | Iterable[tuple[tuple[int, ...], int]] = ()):
        if nvars not in (1, 2):
            raise InvalidParameters("only one or two variables are supported")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, ...], int] = {}
        for exps, coeff in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise InvalidParameters(f"exponent {exps} does not have {nvars} entries")
            acc[exps] = acc.get(exps, 0) + int(coeff)
        self.nvars = nvars
        self._terms = {e: c for e, c in acc.items() if c != 0}
        self._hash: int | None = None

    # construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps: Iterable[Number], c: int = 1) -> "LaurentPoly":
        """Monomial with real (not doubled) exponents."""
        doubled = tuple(to_doubled(e) for e in exps)
        return cls(len(doubled), {doubled: c})

    @classmethod
    def var(cls, index: int, nvars: int) -> "LaurentPoly":
        exps = [0] * nvars
        exps[index] = 2
        return cls(nvars, {tuple(exps): 1})

    # inspection ------------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        """Copy of the doubled-exponent term map."""
        return dict(self._terms)

    def items(self) -> Iterator[tuple[tuple[int, ...], int]]:
        return iter(sorted(self._terms.items()))

    def coeff(self, exps: tuple[int, ...]) -> int:
        """Coefficient at a doubled exponent tuple."""
        return self._terms.get(tuple(exps), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def top_degree(self, var: int = 0) -> Fraction:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return Fraction(max(e[var] for e in self._terms), 2)

    def bottom_degree(self, var: int = 0) -> Fraction:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return Fraction(min(e[var] for e in self._terms), 2)

    def radius(self) -> int:
        """Largest absolute doubled exponent in any variable (0 for zero)."""
        return max((abs(x) for e in self._terms for x in e), default=0)

    def at_one(self) -> int:
        return sum(self._terms.values())

    def is_symmetric(self) -> bool:
        return all(self._terms.get(tuple(-x for x in e), 0) == c for e, c in self._terms.items())

    def parities(self) -> set[tuple[int, ...]]:
        return {tuple(x % 2 for x in e) for e in self._terms}

    # ring operations -------------------------------------------------------

    def _check(self, other: "LaurentPoly") -> None:
        if self.nvars != other.nvars:
            raise InvalidParameters("variable counts differ")

    def _coerce(self, other: object) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return LaurentPoly.constant(self.nvars, other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other: object) -> "LaurentPoly":
        o = self._coerce(other)
        acc = dict(self._terms)
        for e, c in o._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(self.nvars, acc)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: object) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: object) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other: object) -> "LaurentPoly":
        o = self._coerce(other)
        acc: dict[tuple[int, ...], int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPoly(self.nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._terms) == 1:
                (e, c), = self._terms.items()
                if c in (1, -1):
                    return LaurentPoly(self.nvars, {tuple(-x * -n for x in e): c ** -n})
            raise InvalidParameters("only unit monomials can be inverted")
        out = LaurentPoly.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, doubled: Iterable[int]) -> "LaurentPoly":
        """Multiply by the monomial with the given doubled exponents."""
        d = tuple(doubled)
        return LaurentPoly(self.nvars, {tuple(a + b for a, b in zip(e, d)): c for e, c in self._terms.items()})

    def substitute_power(self, p: int, var: int = 0) -> "LaurentPoly":
        """Replace ``t_var`` by ``t_var^p``."""
        if p < 1:
            raise InvalidParameters("power must be positive")
        out = {}
        for e, c in self._terms.items():
            e2 = list(e)
            e2[var] *= p
            out[tuple(e2)] = c
        return LaurentPoly(self.nvars, out)

    def swap(self) -> "LaurentPoly":
        if self.nvars != 2:
            raise InvalidParameters("swap needs two variables")
        return LaurentPoly(2, {(e[1], e[0]): c for e, c in self._terms.items()})

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division by a one-variable polynomial; a nonzero remainder raises."""
        self._check(other)
        if self.nvars != 1:
            raise InvalidParameters("exact_div is implemented for one variable")
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero(1)
        a_lo = min(self._terms)[0]
        b_lo = min(other._terms)[0]
        a = [0] * (max(self._terms)[0] - a_lo + 1)
        b = [0] * (max(other._terms)[0] - b_lo + 1)
        for (e,), c in self._terms.items():
            a[e - a_lo] = c
        for (e,), c in other._terms.items():
            b[e - b_lo] = c
        nq = len(a) - len(b) + 1
        if nq <= 0:
            raise ArithmeticError("division is not exact")
        q = [0] * nq
        for k in range(nq - 1, -1, -1):
            top = a[k + len(b) - 1]
            if top % b[-1]:
                raise ArithmeticError("division is not exact")
            q[k] = top // b[-1]
            if q[k]:
                for i, bc in enumerate(b):
                    a[k + i] -= q[k] * bc
        if any(a):
            raise ArithmeticError("division is not exact")
        return LaurentPoly(1, {(a_lo - b_lo + k,): c for k, c in enumerate(q)})

    # comparison ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = LaurentPoly.constant(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # display ---------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        names = ("t",) if self.nvars == 1 else ("t1", "t2")
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            mono = []
            for name, d in zip(names, e):
                if d == 0:
                    continue
                if d == 2:
                    mono.append(name)
                else:
                    p = fmt_doubled(d)
                    mono.append(f"{name}^{p}" if "/" not in p and not p.startswith("-") else f"{name}^({p})")
            body = "*".join(mono)
            mag = abs(c)
            if body:
                term = body if mag == 1 else f"{mag}*{body}"
            else:
                term = str(mag)
            parts.append(("-" if c < 0 else "+", term))
        sign, first = parts[0]
        out = ("-" if sign == "-" else "") + first
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out

    def __repr__(self) -> str:
        return f"LaurentPoly{self.nvars}('{self}')"


def poly1(coeffs: Mapping[Number, int]) -> LaurentPoly:
    """One-variable polynomial from ``{exponent: coefficient}`` with real exponents."""
    return LaurentPoly(1, {(to_doubled(e),): c for e, c in coeffs.items()})


def poly2(coeffs: Mapping[tuple[Number, Number], int]) -> LaurentPoly:
    """Two-variable polynomial from ``{(e1, e2): coefficient}`` with real exponents."""
    return LaurentPoly(2, {(to_doubled(a), to_doubled(b)): c for (a, b), c in coeffs.items()})


def half_difference(nvars: int = 1, var: int = 0, k: int = 1) -> LaurentPoly:
    """``t^{k/2} - t^{-k/2}`` in the chosen variable."""
    plus = [0] * nvars
    plus[var] = k
    minus = [0] * nvars
    minus[var] = -k
    return LaurentPoly(nvars, {tuple(plus): 1, tuple(minus): -1})


def quantum_factor(p: int, q: int) -> LaurentPoly:
    """``sum_{k=0}^{p-1} t^{q(p-1-2k)/2}``, the quotient of ``t^{pq/2}-t^{-pq/2}`` by ``t^{q/2}-t^{-q/2}``."""
    if p < 1 or q < 1 or math.gcd(p, q) != 1:
        raise InvalidParameters(f"(p, q) = ({p}, {q}) must be coprime positive integers")
    return LaurentPoly(1, {(q * (p - 1 - 2 * k),): 1 for k in range(p)})


def check_knot_polynomial(delta: LaurentPoly) -> None:
    """Raise unless ``delta`` is a symmetric one-variable polynomial with ``delta(1) = 1``."""
    if delta.nvars != 1:
        raise NotLSpaceKnot("knot polynomial must have one variable")
    if not delta.is_symmetric():
        raise NotLSpaceKnot(f"{delta} is not symmetric")
    if delta.at_one() != 1:
        raise NotLSpaceKnot(f"{delta} evaluates to {delta.at_one()} at t = 1")
    if any(e[0] % 2 for e in delta._terms):
        raise NotLSpaceKnot(f"{delta} has half-integer exponents")


def tilde_coeff_knot(delta: LaurentPoly, s: Number) -> int:
    """Coefficient of ``t^s`` in the expansion of ``delta / (1 - t^{-1})``.

    >>> tilde_coeff_knot(poly1({1: 1, 0: -1, -1: 1}), -1)
    1
    """
    check_knot_polynomial(delta)
    sd = to_doubled(s)
    return sum(c for (e,), c in delta._terms.items() if e >= sd)

"""Exact rationals and sparse bivariate polynomials over them.

Rationals are plain :class:`fractions.Fraction` values. :class:`BiPoly` maps
degree pairs ``(i, j)`` to nonzero coefficients of ``x**i * y**j``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

Number = Union[int, Fraction]

__all__ = [
    "BiPoly",
    "format_rational",
    "parse_rational",
    "poly_add",
    "poly_coeff",
    "poly_eval",
    "poly_mul",
]


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a finite decimal like ``"2.9243"``."""
    text = text.strip()
    if not text:
        raise ValueError("empty rational literal")
    return Fraction(text)


def format_rational(value: Number) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class BiPoly:
    """Immutable sparse polynomial in ``x`` and ``y`` with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], Number] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in items:
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in term ({i}, {j})")
            c = Fraction(c)
            if c:
                key = (int(i), int(j))
                total = clean.get(key, 0) + c
                if total:
                    clean[key] = total
                else:
                    clean.pop(key, None)
        self._terms = clean
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def constant(cls, c: Number) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c: Number = 1) -> "BiPoly":
        return cls({(i, j): c})

    @classmethod
    def _trusted(cls, terms: dict) -> "BiPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # mapping-ish access -------------------------------------------------
    @property
    def terms(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[tuple[int, int], Fraction]]:
        return iter(self._terms.items())

    def coeff(self, i: int, j: int) -> Fraction:
        return self._terms.get((i, j), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degree(self) -> tuple[int, int]:
        """Maximum x-degree and maximum y-degree (``(0, 0)`` for constants and zero)."""
        if not self._terms:
            return (0, 0)
        return (max(i for i, _ in self._terms), max(j for _, j in self._terms))

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            total = out.get(k, 0) + c
            if total:
                out[k] = total
            else:
                del out[k]
        return BiPoly._trusted(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._trusted({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return BiPoly._trusted({})
            return BiPoly._trusted({k: c * other for k, c in self._terms.items()})
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return BiPoly._trusted({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = BiPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == BiPoly.constant(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def swap(self) -> "BiPoly":
        """Exchange the roles of ``x`` and ``y``."""
        return BiPoly._trusted({(j, i): c for (i, j), c in self._terms.items()})

    def __call__(self, x: Number, y: Number) -> Fraction:
        return poly_eval(self, x, y)

    # text ---------------------------------------------------------------
    def sorted_terms(self) -> list[tuple[int, int, Fraction]]:
        return sorted(
            ((i, j, c) for (i, j), c in self._terms.items()),
            key=lambda t: (-(t[0] + t[1]), -t[0]),
        )

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"BiPoly({format_poly(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "BiPoly":
        return parse_poly(text)


def _coerce(value) -> BiPoly:
    if isinstance(value, BiPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return BiPoly.constant(value)
    return NotImplemented


def poly_add(p: BiPoly, q: BiPoly) -> BiPoly:
    return p + q


def poly_mul(p: BiPoly, q: BiPoly) -> BiPoly:
    return p * q


def poly_coeff(p: BiPoly, i: int, j: int) -> Fraction:
    if i < 0 or j < 0:
        raise ValueError("coefficient index must be nonnegative")
    return p.coeff(i, j)


def poly_eval(p: BiPoly, x: Number, y: Number) -> Fraction:
    x = Fraction(x)
    y = Fraction(y)
    xpow: dict[int, Fraction] = {}
    ypow: dict[int, Fraction] = {}
    total = Fraction(0)
    for (i, j), c in p.items():
        if i not in xpow:
            xpow[i] = x**i
        if j not in ypow:
            ypow[j] = y**j
        total += c * xpow[i] * ypow[j]
    return total


def _format_monomial(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    return "*".join(parts)


def format_poly(p: BiPoly) -> str:
    """Render as ``"2/15*x^3 + 1/3*x*y + 1/15*y"``; the zero polynomial is ``"0"``."""
    chunks = []
    for i, j, c in p.sorted_terms():
        mono = _format_monomial(i, j)
        if not mono:
            chunks.append(format_rational(c))
        elif c == 1:
            chunks.append(mono)
        elif c == -1:
            chunks.append("-" + mono)
        else:
            chunks.append(f"{format_rational(c)}*{mono}")
    return " + ".join(chunks) if chunks else "0"


_FACTOR = re.compile(r"^(?:(x|y)(?:\^(\d+))?|(-?\d+(?:/\d+)?))$")


def parse_poly(text: str) -> BiPoly:
    """Inverse of :func:`format_poly`; also tolerates ``" - "`` separators."""
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial")
    text = re.sub(r"\s+-\s+", " + -", text)
    terms: dict[tuple[int, int], Fraction] = {}
    for raw in text.split("+"):
        raw = raw.strip()
        if not raw:
            raise ValueError(f"malformed polynomial: {text!r}")
        sign = 1
        if raw.startswith("-") and not re.match(r"^-\d", raw):
            sign, raw = -1, raw[1:]
        coeff = Fraction(sign)
        i = j = 0
        for factor in raw.split("*"):
            m = _FACTOR.match(factor.strip())
            if m is None:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            var, exp, num = m.groups()
            if num is not None:
                coeff *= Fraction(num)
            elif var == "x":
                i += int(exp) if exp else 1
            else:
                j += int(exp) if exp else 1
        terms[(i, j)] = terms.get((i, j), 0) + coeff
    return BiPoly(terms)

"""Exact rationals, the p-adic valuation on Q, and value groups (1/d)Z."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Union


@total_ordering
class _Infinity:
    """The value of zero: larger than every rational, absorbing under +."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("INFINITY")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __mul__(self, other):
        if other == 0:
            raise ArithmeticError("0 * INFINITY is undefined")
        if other < 0:
            raise ArithmeticError("negative multiple of INFINITY")
        return self

    __rmul__ = __mul__

    def __repr__(self):
        return "INFINITY"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

ExtRat = Union[Fraction, _Infinity]


def is_finite(value) -> bool:
    return value is not INFINITY


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and rational literals "a/b" to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"not an exact rational: {value!r}")


_RATIONAL = re.compile(r"(-?)(\d+)(?:/(\d+))?")


def parse_rational(text: str) -> Fraction:
    """Parse "a/b" or "a" (optional leading minus, b > 0)."""
    m = _RATIONAL.fullmatch(text.strip())
    if m is None:
        raise ValueError(f"malformed rational literal {text!r}")
    sign, num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    q = Fraction(int(num), int(den or 1))
    return -q if sign else q


def format_rational(value) -> str:
    if value is INFINITY:
        return "inf"
    return str(Fraction(value))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class GroundContext:
    """The p-adic rationals, normalized so that v(p) = 1."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"p must be a prime, got {self.p!r}")


def _ord(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def vp(q, ctx: GroundContext) -> ExtRat:
    """p-adic valuation of a rational; INFINITY at zero."""
    q = to_fraction(q)
    if q == 0:
        return INFINITY
    return Fraction(_ord(abs(q.numerator), ctx.p) - _ord(q.denominator, ctx.p))


@dataclass(frozen=True)
class ValueGroup:
    """The subgroup (1/d)Z of Q."""

    d: int = 1

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("value group denominator must be >= 1")

    def __contains__(self, q) -> bool:
        return (to_fraction(q) * self.d).denominator == 1

    def __str__(self):
        return "Z" if self.d == 1 else f"(1/{self.d})Z"


def group_join(g: ValueGroup, other) -> ValueGroup:
    """Smallest (1/d)Z containing g and ``other`` (a group or a finite rational)."""
    if isinstance(other, ValueGroup):
        d = other.d
    else:
        if other is INFINITY:
            raise ValueError("cannot join INFINITY into a value group")
        d = to_fraction(other).denominator
    return ValueGroup(math.lcm(g.d, d))


def group_index(sub: ValueGroup, sup: ValueGroup) -> int:
    """Index (sup : sub); raises ValueError unless sub is contained in sup."""
    if sup.d % sub.d:
        raise ValueError(f"{sub} is not contained in {sup}")
    return sup.d // sub.d

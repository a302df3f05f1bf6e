"""Dense univariate polynomials over Q.

Coefficients are stored in ascending degree as a tuple of Fractions with
trailing zeros stripped, so two equal polynomials always compare equal.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence


class Polynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c=1) -> "Polynomial":
        return cls([0] * degree + [c])

    @property
    def degree(self) -> int | None:
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = Polynomial((1,)), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, r):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * r + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def scale(self, c) -> "Polynomial":
        return Polynomial(c * a for a in self.coeffs)

    def __repr__(self):
        return f"Polynomial({to_string(self)!r})"

    def __str__(self):
        return to_string(self)


def to_string(f: Polynomial, var: str = "x") -> str:
    """Print in the sub-language accepted by :func:`parse` (round-trips)."""
    if f.is_zero():
        return "0"
    parts = []
    for k in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[k]
        if c == 0:
            continue
        mag = abs(c) if parts else c
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            term = str(mag)
        elif mag == 1:
            term = mono
        else:
            term = f"{mag}*{mono}"
        if parts:
            parts.append(("-" if c < 0 else "+") + term)
        else:
            parts.append(term)
    return "".join(parts)


def divrem(f: Polynomial, g: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Exact division by a monic, nonconstant g: f = q*g + r, deg r < deg g."""
    if not g.is_monic() or g.degree < 1:
        raise ValueError("divisor must be monic and nonconstant")
    m = g.degree
    rem = list(f.coeffs)
    if len(rem) <= m:
        return Polynomial(), f
    quo = [Fraction(0)] * (len(rem) - m)
    gc = g.coeffs
    for k in range(len(rem) - 1, m - 1, -1):
        c = rem[k]
        if c:
            quo[k - m] = c
            for j in range(m):
                rem[k - m + j] -= c * gc[j]
        rem[k] = Fraction(0)
    return Polynomial(quo), Polynomial(rem[:m])


def phi_expansion(f: Polynomial, phi: Polynomial) -> list[Polynomial]:
    """Coefficients [a_0, a_1, ...] with f = sum a_s phi^s, deg a_s < deg phi."""
    if not phi.is_monic() or phi.degree < 1:
        raise ValueError("phi must be monic and nonconstant")
    if f.is_zero():
        return [Polynomial()]
    out = []
    while not f.is_zero():
        f, a = divrem(f, phi)
        out.append(a)
    return out


def taylor_shift_coeffs(F: Polynomial, modF: Polynomial | None = None) -> list[Polynomial]:
    """Residues mod F of F^(j)/j!, j = 1..n.

    These are the coefficients of x^j in F(x + y) taken modulo F(y); the
    j = 0 term vanishes and is omitted.
    """
    modF = F if modF is None else modF
    if modF != F:
        raise ValueError("the shift is reduced modulo F itself")
    n = F.degree
    if n is None or n < 2 or not F.is_monic():
        raise ValueError("F must be monic of degree >= 2")
    return [divrem(c, F)[1] for c in taylor_shift_unreduced(F)[1:]]


def taylor_shift_unreduced(F: Polynomial) -> list[Polynomial]:
    """F^(j)/j! for j = 0..deg F, so that F(x + y) = sum_j c_j(y) x^j."""
    out = []
    d = F
    for j in range(len(F.coeffs)):
        out.append(d.scale(Fraction(1, factorial(j))))
        d = d.derivative()
    return out


# ---------------------------------------------------------------------------
# expression parser
#
#   expr   := term (('+'|'-') term)*
#   term   := factor ('*' factor)*
#   factor := atom ('^' natural)?
#   atom   := rational | 'x' | '(' expr ')'
#   rational := ['-'] natural ['/' natural]
#
# A leading '-' before a non-numeric first term negates that term, so
# "-x^2+1" is read as -(x^2)+1.


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset
        self.text = text


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg, pos=None):
        raise ParseError(msg, self.pos if pos is None else pos, self.text)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def natural(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a natural number")
        return int(self.text[start:self.pos])

    def parse(self) -> Polynomial:
        f = self.expr()
        if self.peek():
            self.error(f"unexpected character {self.peek()!r}")
        return f

    def expr(self) -> Polynomial:
        negate = False
        if self.peek() == "-":
            save = self.pos
            self.pos += 1
            if self.peek().isdigit():
                self.pos = save
            else:
                negate = True
        f = self.term()
        if negate:
            f = -f
        while self.peek() in ("+", "-") and self.peek():
            op = self.text[self.pos]
            self.pos += 1
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self) -> Polynomial:
        f = self.factor()
        while self.peek() == "*":
            self.pos += 1
            f = f * self.factor()
        return f

    def factor(self) -> Polynomial:
        f = self.atom()
        if self.peek() == "^":
            self.pos += 1
            f = f ** self.natural()
        return f

    def atom(self) -> Polynomial:
        ch = self.peek()
        start = self.pos
        if ch == "x":
            self.pos += 1
            nxt = self.text[self.pos:self.pos + 1]
            if nxt.isalnum() or nxt == "_":
                self.error("unknown identifier", start)
            return Polynomial.x()
        if ch == "(":
            self.pos += 1
            f = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return f
        if ch == "-" or ch.isdigit():
            sign = 1
            if ch == "-":
                sign = -1
                self.pos += 1
                if not self.text[self.pos:self.pos + 1].isdigit():
                    self.error("expected digits after '-'")
            num = self.natural()
            den = 1
            if self.peek() == "/":
                self.pos += 1
                den_pos = self.pos
                den = self.natural()
                if den == 0:
                    raise ParseError("division by zero in coefficient", den_pos, self.text)
            if self.peek().isalpha() or self.peek() == "(":
                self.error("implicit multiplication is not allowed; use '*'")
            return Polynomial.constant(sign * Fraction(num, den))
        if not ch:
            self.error("unexpected end of input")
        self.error(f"unexpected character {ch!r}")


def parse(text: str) -> Polynomial:
    """Parse a polynomial expression in x with rational coefficients."""
    return _Parser(text).parse()


def poly(value) -> Polynomial:
    """Accept a Polynomial, an expression string or a coefficient sequence."""
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, str):
        return parse(value)
    if isinstance(value, (int, Fraction)):
        return Polynomial.constant(value)
    if isinstance(value, Sequence):
        return Polynomial(value)
    raise TypeError(f"cannot make a polynomial from {value!r}")

"""Exact rational arithmetic and univariate polynomials over the rationals.

Rationals are stdlib ``fractions.Fraction`` values, which already guarantee
the normal form used throughout this package: lowest terms, denominator >= 1,
zero stored as 0/1.  ``rational_make`` is the checked constructor; building a
Fraction directly is fine anywhere a zero denominator cannot occur.

Polynomials are dense coefficient tuples, index i holding the coefficient of
t^i.  Trailing zeros are stripped on construction, so the zero polynomial has
an empty tuple and its degree is reported as None.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


class DegenerateRationalError(ValueError):
    """Zero denominator."""


class PolynomialSyntaxError(ValueError):
    """Unparseable polynomial text; carries the offending offset."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (position {position})")
        self.position = position


def rational_make(numerator: int, denominator: int = 1) -> Fraction:
    """Build numerator/denominator in normal form.

    Raises DegenerateRationalError when the denominator is zero.
    """
    if denominator == 0:
        raise DegenerateRationalError("degenerate rational: zero denominator")
    return Fraction(numerator, denominator)


_RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(-?\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse 'a/b' or a bare integer 'a'."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational: {text!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    return rational_make(int(m.group(1)), den)


def format_rational(q: Fraction) -> str:
    """Render 'a/b', or just 'a' for integers."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class PolynomialQ:
    """Univariate polynomial with rational coefficients, dense form."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int] = ()) -> None:
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @property
    def degree(self) -> int | None:
        """Highest exponent with a nonzero coefficient, None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def constant_term(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    @property
    def has_zero_constant_term(self) -> bool:
        return self.constant_term == 0

    def eval(self, t: Fraction | int) -> Fraction:
        """Evaluate by Horner's rule, exactly."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other: "PolynomialQ") -> "PolynomialQ":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolynomialQ(out)

    def __sub__(self, other: "PolynomialQ") -> "PolynomialQ":
        return self + (-other)

    def __neg__(self) -> "PolynomialQ":
        return PolynomialQ([-c for c in self.coeffs])

    def scale(self, factor: Fraction | int) -> "PolynomialQ":
        return PolynomialQ([c * factor for c in self.coeffs])

    def scale_argument(self, factor: Fraction | int) -> "PolynomialQ":
        """The polynomial t -> p(factor * t)."""
        f = Fraction(factor)
        return PolynomialQ([c * f**i for i, c in enumerate(self.coeffs)])

    def shift_argument(self, offset: Fraction | int) -> "PolynomialQ":
        """The polynomial t -> p(t + offset), expanded binomially."""
        g = Fraction(offset)
        out = [Fraction(0)] * len(self.coeffs)
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            for j in range(i + 1):
                out[j] += c * math.comb(i, j) * g ** (i - j)
        return PolynomialQ(out)

    def difference(self, shift: Fraction | int) -> "PolynomialQ":
        """The forward difference t -> p(t + shift) - p(t)."""
        return self.shift_argument(shift) - self

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolynomialQ) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("PolynomialQ", self.coeffs))

    def __repr__(self) -> str:
        return f"PolynomialQ({list(self.coeffs)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)


def format_polynomial(p: PolynomialQ, var: str = "t") -> str:
    """Render as a sum of c*var^k monomials, highest exponent first."""
    if not p.coeffs:
        return "0"
    parts: list[str] = []
    for exp in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[exp]
        if c == 0:
            continue
        if exp == 0:
            body = format_rational(abs(c))
        else:
            head = var if exp == 1 else f"{var}^{exp}"
            body = head if abs(c) == 1 else f"{format_rational(abs(c))}*{head}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


_MONOMIAL_RE = re.compile(
    r"""^\s*
    (?:(?P<coef>\d+(?:\s*/\s*\d+)?)\s*(?:\*\s*)?)?   # optional unsigned coefficient
    (?:(?P<var>[A-Za-z]\w*)\s*(?:\^\s*(?P<exp>\d+))?)?  # optional variable power
    \s*$""",
    re.VERBOSE,
)


def parse_polynomial(text: str, var: str = "t") -> PolynomialQ:
    """Parse polynomial text such as 't^2 - 3/2*t'.

    Accepted monomials: 'c', 'c*t^k', 'c*t', 't^k', 't' with c a nonnegative
    rational; signs come from the joining + and - operators.  Repeated
    exponents accumulate.
    """
    s = text.rstrip()
    if not s.strip():
        raise PolynomialSyntaxError("empty polynomial", 0)
    coeffs: dict[int, Fraction] = {}
    pos = 0
    n = len(s)
    while pos < n:
        while pos < n and s[pos].isspace():
            pos += 1
        sign = 1
        if pos < n and s[pos] in "+-":
            if s[pos] == "-":
                sign = -1
            pos += 1
        start = pos
        while pos < n and s[pos] not in "+-":
            pos += 1
        chunk = s[start:pos]
        m = _MONOMIAL_RE.match(chunk)
        if m is None or (m.group("coef") is None and m.group("var") is None):
            raise PolynomialSyntaxError(f"bad monomial {chunk.strip()!r}", start)
        if m.group("var") is not None and m.group("var") != var:
            raise PolynomialSyntaxError(
                f"unknown variable {m.group('var')!r}, expected {var!r}", start
            )
        coef = Fraction(1)
        if m.group("coef") is not None:
            coef = parse_rational(m.group("coef"))
        exp = 0
        if m.group("var") is not None:
            exp = int(m.group("exp")) if m.group("exp") is not None else 1
        coeffs[exp] = coeffs.get(exp, Fraction(0)) + sign * coef
    out = [Fraction(0)] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return PolynomialQ(out)


def difference_degree_check(
    p: PolynomialQ,
    d: int,
    samples: Sequence[tuple[Sequence[Fraction | int], Fraction | int]],
) -> bool:
    """Check that p behaves like a polynomial of degree at most d.

    Each sample supplies d+1 nonzero shifts and an evaluation point.  The
    shifts are applied as iterated forward differences; the check passes when
    every iterated difference evaluates to zero at its sample point.  For a
    genuine polynomial of degree <= d this is true for every choice of
    shifts, and for degree exactly d+1 or more it fails on generic samples.
    """
    if d < 0:
        raise ValueError("degree bound must be nonnegative")
    if not samples:
        raise ValueError("samples must be nonempty")
    for shifts, point in samples:
        shifts = tuple(Fraction(g) for g in shifts)
        if len(shifts) != d + 1:
            raise ValueError(f"expected {d + 1} shifts per sample, got {len(shifts)}")
        if any(g == 0 for g in shifts):
            raise ValueError("shifts must be nonzero")
        q = p
        for g in shifts:
            q = q.difference(g)
        if q.eval(point) != 0:
            return False
    return True

"""Two-variable pattern families and their text DSL.

A family is a finite set of terms in the variables x and y.  Term shapes:

* ``x`` and ``y`` themselves;
* affine terms ``c1*x + P(c2*y)`` with c1 nonzero and P a polynomial with
  zero constant term (written in ``t`` or ``y``, e.g. ``x + t^2 - t``);
* power terms ``x * y^a`` / ``x / y^a`` with nonzero integer exponent;
* offset terms ``x + c`` with c a nonzero constant.  These sit outside the
  affine grammar on purpose and parse only when explicitly enabled; they
  exist so that deliberately non-partition-regular families like
  ``{x, x + 3}`` can be expressed.

Instantiating a family at a point (x, y) requires y nonzero, and x nonzero
whenever a power term is present (or the family is marked strict).

Family text is terms joined by ';', e.g. ``"x; y; x + t"`` or
``"x; x / y^1; x + t"``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arith import (
    PolynomialQ,
    format_polynomial,
    format_rational,
    parse_polynomial,
    parse_rational,
)


class PatternSyntaxError(ValueError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (position {position})")
        self.position = position


class InvalidInstantiationError(ValueError):
    pass


@dataclass(frozen=True)
class VarX:
    def value(self, x: Fraction, y: Fraction) -> Fraction:
        return x

    uses_y = False

    def text(self) -> str:
        return "x"


@dataclass(frozen=True)
class VarY:
    def value(self, x: Fraction, y: Fraction) -> Fraction:
        return y

    uses_y = True

    def text(self) -> str:
        return "y"


@dataclass(frozen=True)
class PowerTerm:
    """x * y^exponent; negative exponents divide."""

    exponent: int

    def __post_init__(self) -> None:
        if self.exponent == 0:
            raise ValueError("power term exponent must be nonzero")

    def value(self, x: Fraction, y: Fraction) -> Fraction:
        return x * y**self.exponent

    uses_y = True

    def text(self) -> str:
        if self.exponent > 0:
            return f"x * y^{self.exponent}"
        return f"x / y^{-self.exponent}"


@dataclass(frozen=True)
class AffineTerm:
    """x_coef * x + poly(y_coef * y), with poly constant-free."""

    x_coef: Fraction
    poly: PolynomialQ
    y_coef: Fraction = field(default=Fraction(1))

    def __post_init__(self) -> None:
        object.__setattr__(self, "x_coef", Fraction(self.x_coef))
        object.__setattr__(self, "y_coef", Fraction(self.y_coef))
        if self.x_coef == 0:
            raise ValueError("affine term needs a nonzero x coefficient")
        if not self.poly.has_zero_constant_term:
            raise ValueError("affine term polynomial must have zero constant term")

    def value(self, x: Fraction, y: Fraction) -> Fraction:
        return self.x_coef * x + self.poly.eval(self.y_coef * y)

    @property
    def uses_y(self) -> bool:
        return bool(self.poly.coeffs)

    def text(self) -> str:
        xpart = "x" if self.x_coef == 1 else f"{format_rational(self.x_coef)}*x"
        var = "t" if self.y_coef == 1 else f"({format_rational(self.y_coef)}*y)"
        ptext = format_polynomial(self.poly, var)
        if ptext.startswith("-"):
            return f"{xpart} - {ptext[1:].lstrip()}"
        return f"{xpart} + {ptext}"


@dataclass(frozen=True)
class OffsetTerm:
    """x + offset, the gated constant-offset variant."""

    offset: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "offset", Fraction(self.offset))
        if self.offset == 0:
            raise ValueError("offset must be nonzero")

    def value(self, x: Fraction, y: Fraction) -> Fraction:
        return x + self.offset

    uses_y = False

    def text(self) -> str:
        if self.offset > 0:
            return f"x + {format_rational(self.offset)}"
        return f"x - {format_rational(-self.offset)}"


PatternTerm = VarX | VarY | PowerTerm | AffineTerm | OffsetTerm


@dataclass(frozen=True)
class Family:
    terms: tuple[PatternTerm, ...]
    require_distinct_values: bool = False
    strict_nonzero_x: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise ValueError("family needs at least one term")
        if len(set(self.terms)) != len(self.terms):
            raise ValueError("duplicate terms in family")

    @property
    def requires_nonzero_x(self) -> bool:
        return self.strict_nonzero_x or any(
            isinstance(t, PowerTerm) for t in self.terms
        )

    @property
    def uses_y(self) -> bool:
        return any(t.uses_y for t in self.terms)

    def power_exponents(self) -> tuple[int, ...]:
        return tuple(t.exponent for t in self.terms if isinstance(t, PowerTerm))

    def additive_polynomials(self) -> tuple[PolynomialQ, ...]:
        return tuple(t.poly for t in self.terms if isinstance(t, AffineTerm))

    def has_offsets(self) -> bool:
        return any(isinstance(t, OffsetTerm) for t in self.terms)

    def serialize(self) -> str:
        return "; ".join(t.text() for t in self.terms)

    def __str__(self) -> str:
        return self.serialize()


@dataclass(frozen=True)
class Witness:
    """A monochromatic instantiation: values in term order, all one color."""

    x: Fraction
    y: Fraction
    color: int
    values: tuple[Fraction, ...]


def instantiate(family: Family, x: Fraction | int, y: Fraction | int) -> tuple[Fraction, ...]:
    """Evaluate every term at (x, y), in term order."""
    x, y = Fraction(x), Fraction(y)
    if y == 0:
        raise InvalidInstantiationError("invalid instantiation point: y must be nonzero")
    if x == 0 and family.requires_nonzero_x:
        raise InvalidInstantiationError(
            "invalid instantiation point: x must be nonzero for this family"
        )
    return tuple(t.value(x, y) for t in family.terms)


_RAT = r"-?\d+(?:/\d+)?"
_POWER_RE = re.compile(rf"^x\s*(?P<op>[*/])\s*y\s*(?:\^\s*(?P<exp>-?\d+))?$")
_AFFINE_RE = re.compile(rf"^(?:(?P<c1>{_RAT})\s*\*\s*)?x\s*(?P<op>[+-])\s*(?P<rest>.+)$")
_Y_ATOM_RE = re.compile(rf"\(\s*(?P<c2>{_RAT})\s*\*\s*y\s*\)")


def _parse_term(chunk: str, offset: int, allow_offsets: bool) -> PatternTerm:
    s = chunk.strip()
    offset += len(chunk) - len(chunk.lstrip())
    if not s:
        raise PatternSyntaxError("empty term", offset)
    if s == "x":
        return VarX()
    if s == "y":
        return VarY()
    m = _POWER_RE.match(s)
    if m:
        exp = int(m.group("exp")) if m.group("exp") is not None else 1
        if m.group("op") == "/":
            exp = -exp
        if exp == 0:
            raise PatternSyntaxError("exponent must be nonzero", offset)
        return PowerTerm(exp)
    m = _AFFINE_RE.match(s)
    if m:
        c1 = parse_rational(m.group("c1")) if m.group("c1") else Fraction(1)
        if c1 == 0:
            raise PatternSyntaxError("x coefficient must be nonzero", offset)
        rest = m.group("rest").strip()
        if m.group("op") == "-":
            rest = "-" + rest
        atoms = {a.group("c2") for a in _Y_ATOM_RE.finditer(rest)}
        if len(atoms) > 1:
            raise PatternSyntaxError("mixed y scalings in one term", offset)
        if atoms:
            y_coef = parse_rational(atoms.pop())
            body = _Y_ATOM_RE.sub("u", rest)
            if re.search(r"\b[ty]\b", body):
                raise PatternSyntaxError("mix of scaled and bare variables", offset)
            var = "u"
        else:
            y_coef = Fraction(1)
            has_t = re.search(r"\bt\b", rest)
            has_y = re.search(r"\by\b", rest)
            if has_t and has_y:
                raise PatternSyntaxError("mix of t and y in polynomial part", offset)
            body = re.sub(r"\by\b", "t", rest) if has_y else rest
            var = "t"
        try:
            poly = parse_polynomial(body, var=var)
        except ValueError as exc:
            raise PatternSyntaxError(f"bad polynomial part: {exc}", offset) from None
        if poly.has_zero_constant_term:
            return AffineTerm(c1, poly, y_coef)
        if poly.degree == 0 and c1 == 1 and y_coef == 1:
            if allow_offsets:
                return OffsetTerm(poly.constant_term)
            raise PatternSyntaxError(
                "constant term must be zero (offset terms are disabled)", offset
            )
        raise PatternSyntaxError("constant term must be zero", offset)
    raise PatternSyntaxError(f"unrecognized term {s!r}", offset)


def parse_family(
    text: str,
    *,
    allow_offsets: bool = False,
    require_distinct_values: bool = False,
    strict_nonzero_x: bool = False,
) -> Family:
    """Parse ';'-separated term text into a Family."""
    terms: list[PatternTerm] = []
    offset = 0
    for chunk in text.split(";"):
        terms.append(_parse_term(chunk, offset, allow_offsets))
        offset += len(chunk) + 1
    return Family(
        tuple(terms),
        require_distinct_values=require_distinct_values,
        strict_nonzero_x=strict_nonzero_x,
    )


def serialize_family(family: Family) -> str:
    return family.serialize()


# ---------------------------------------------------------------------------
# Built-in catalog


def _linear(k: int) -> PolynomialQ:
    return PolynomialQ([0, k])


def _affine(p: PolynomialQ) -> AffineTerm:
    return AffineTerm(Fraction(1), p, Fraction(1))


def schur_family() -> Family:
    return Family((VarX(), VarY(), _affine(_linear(1))))


def vdw_family(k: int) -> Family:
    if k < 1:
        raise ValueError("vdw needs k >= 1")
    return Family((VarX(),) + tuple(_affine(_linear(i)) for i in range(1, k + 1)))


def moreira_family(k: int, polys: Sequence[PolynomialQ] | None = None) -> Family:
    polys = _poly_args("moreira", k, polys)
    return Family((VarX(), PowerTerm(1)) + tuple(_affine(p) for p in polys))


def bowen_sabok_family(k: int) -> Family:
    if k < 1:
        raise ValueError("bowen-sabok needs k >= 1")
    return Family(
        (VarX(), VarY(), PowerTerm(1))
        + tuple(_affine(_linear(i)) for i in range(1, k + 1))
    )


def quotient_poly_family(a: int, polys: Sequence[PolynomialQ] | None = None) -> Family:
    if a < 1:
        raise ValueError("quotient-poly needs a >= 1")
    polys = polys if polys is not None else [_linear(1)]
    return Family((VarX(), PowerTerm(-a)) + tuple(_affine(p) for p in polys))


def product_poly_family(a: int, polys: Sequence[PolynomialQ] | None = None) -> Family:
    if a < 1:
        raise ValueError("product-poly needs a >= 1")
    polys = polys if polys is not None else [_linear(1)]
    return Family((VarX(), PowerTerm(a)) + tuple(_affine(p) for p in polys))


def question_hs_family() -> Family:
    return Family((VarX(), VarY(), PowerTerm(1), _affine(_linear(1))))


def _poly_args(name: str, k: int, polys: Sequence[PolynomialQ] | None) -> list[PolynomialQ]:
    if k < 1:
        raise ValueError(f"{name} needs k >= 1")
    if polys is None:
        return [_linear(i) for i in range(1, k + 1)]
    polys = list(polys)
    if len(polys) != k:
        raise ValueError(f"{name} got k={k} but {len(polys)} polynomials")
    return polys


_KEY_RE = re.compile(r"^(?P<name>[a-z-]+)(?:\((?P<args>.*)\))?$")


def builtin_family(key: str) -> Family:
    """Look up a catalog family by key text.

    Keys: schur, vdw(k), moreira(k[,[p;...]]), bowen-sabok(k),
    quotient-poly(a[,[p;...]]), product-poly(a[,[p;...]]), question-hs.
    Polynomial lists are ';'-separated polynomial texts in brackets, e.g.
    ``quotient-poly(2,[t;t^2])``.
    """
    m = _KEY_RE.match(key.strip())
    if not m:
        raise KeyError(f"bad catalog key {key!r}")
    name = m.group("name")
    args = m.group("args")
    try:
        ints, polys = _split_key_args(args)
        if name == "schur":
            _expect_args(key, ints, 0, polys, False)
            return schur_family()
        if name == "question-hs":
            _expect_args(key, ints, 0, polys, False)
            return question_hs_family()
        if name == "vdw":
            _expect_args(key, ints, 1, polys, False)
            return vdw_family(ints[0])
        if name == "bowen-sabok":
            _expect_args(key, ints, 1, polys, False)
            return bowen_sabok_family(ints[0])
        if name == "moreira":
            _expect_args(key, ints, 1, polys, True)
            return moreira_family(ints[0], polys)
        if name == "quotient-poly":
            _expect_args(key, ints, 1, polys, True)
            return quotient_poly_family(ints[0], polys)
        if name == "product-poly":
            _expect_args(key, ints, 1, polys, True)
            return product_poly_family(ints[0], polys)
    except ValueError as exc:
        raise KeyError(f"bad catalog key {key!r}: {exc}") from None
    raise KeyError(f"unknown catalog family {name!r}")


def _split_key_args(args: str | None) -> tuple[list[int], list[PolynomialQ] | None]:
    if args is None or not args.strip():
        return [], None
    ints: list[int] = []
    polys: list[PolynomialQ] | None = None
    rest = args.strip()
    while rest:
        if rest.startswith("["):
            close = rest.index("]")
            texts = rest[1:close].split(";")
            polys = [parse_polynomial(t) for t in texts]
            rest = rest[close + 1 :].lstrip().lstrip(",").lstrip()
        else:
            head, _, tail = rest.partition(",")
            ints.append(int(head.strip()))
            rest = tail.strip()
    return ints, polys


def _expect_args(
    key: str, ints: list[int], n_ints: int, polys: list[PolynomialQ] | None, list_ok: bool
) -> None:
    if len(ints) != n_ints or (polys is not None and not list_ok):
        raise KeyError(f"bad arguments in catalog key {key!r}")


def default_catalog() -> dict[str, Family]:
    """The stock instances exercised by the test suite, keyed by catalog text."""
    keys = [
        "schur",
        "vdw(2)",
        "moreira(1)",
        "bowen-sabok(1)",
        "quotient-poly(1,[t])",
        "product-poly(1,[t])",
        "question-hs",
    ]
    return {k: builtin_family(k) for k in keys}

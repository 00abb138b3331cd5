"""Coefficient fields: binary floats, exact rationals and rational functions of ``s``.

Rationals are :class:`fractions.Fraction`.  Polynomials are tuples of
Fractions in ascending powers of ``s`` with no trailing zeros (the zero
polynomial is ``()``).
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import lcm
from numbers import Rational

Poly = tuple  # tuple[Fraction, ...], ascending powers


# -- polynomial helpers -------------------------------------------------------

def poly(coeffs) -> Poly:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    return poly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])


def poly_neg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def poly_sub(a: Poly, b: Poly) -> Poly:
    return poly_add(a, poly_neg(b))


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly(out)


def poly_scale(a: Poly, c) -> Poly:
    return poly([x * c for x in a])


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quot = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(rem) >= len(b) and rem:
        c = rem[-1] / lead
        shift = len(rem) - len(b)
        quot[shift] = c
        for i, y in enumerate(b):
            rem[shift + i] -= c * y
        rem.pop()
        while rem and rem[-1] == 0:
            rem.pop()
    return poly(quot), tuple(rem)


def monic(a: Poly) -> Poly:
    if not a:
        return a
    return poly_scale(a, 1 / a[-1])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm over the rationals."""
    a, b = poly(a), poly(b)
    if not a and not b:
        raise ZeroDivisionError("gcd of two zero polynomials")
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return monic(a)


def poly_eval(a: Poly, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def poly_to_text(a: Poly, var: str = "s") -> str:
    """Ascending rendering, e.g. ``15052095 + 2552384*s + 136080*s^2``."""
    if not a:
        return "0"
    terms = []
    for k, c in enumerate(a):
        if c == 0:
            continue
        mag = abs(c)
        coef = _fraction_text(mag)
        if k == 0:
            body = coef
        else:
            power = var if k == 1 else f"{var}^{k}"
            body = power if mag == 1 else f"{coef}*{power}"
        if not terms:
            terms.append(("-" if c < 0 else "") + body)
        else:
            terms.append(("- " if c < 0 else "+ ") + body)
    return " ".join(terms)


def clear_denominators(*polys: Poly) -> tuple[list[int], ...]:
    """Scale polynomials by the lcm of every coefficient denominator.

    All inputs share the same factor, so ratios between them are preserved.
    """
    dens = [c.denominator for p in polys for c in p] or [1]
    factor = reduce(lcm, dens)
    return tuple([int(c * factor) for c in p] for p in polys)


def _fraction_text(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- rational functions --------------------------------------------------------

class RationalFunction:
    """Reduced quotient ``num(s)/den(s)`` with monic denominator.

    Supports the arithmetic operators with ints, Fractions and other
    rational functions; results are always canonical so ``==`` compares
    coefficients.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=(), den=(1,)):
        num, den = poly(num), poly(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = (), (Fraction(1),)
            return
        g = poly_gcd(num, den)
        if len(g) > 1:
            num = poly_divmod(num, g)[0]
            den = poly_divmod(den, g)[0]
        lead = den[-1]
        self.num = poly_scale(num, 1 / lead)
        self.den = poly_scale(den, 1 / lead)

    @classmethod
    def s(cls) -> "RationalFunction":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "RationalFunction":
        return cls((c,))

    @staticmethod
    def _coerce(x):
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, (int, Rational)):
            return RationalFunction((x,))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RationalFunction(poly_add(self.num, o.num), self.den)
        return RationalFunction(
            poly_add(poly_mul(self.num, o.den), poly_mul(o.num, self.den)),
            poly_mul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self):
        r = object.__new__(RationalFunction)
        r.num, r.den = poly_neg(self.num), self.den
        return r

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.num or not o.num:
            return RationalFunction()
        return RationalFunction(poly_mul(self.num, o.num), poly_mul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.num:
            raise ZeroDivisionError("rational function division by zero")
        return RationalFunction(poly_mul(self.num, o.den), poly_mul(self.den, o.num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def __abs__(self):
        raise TypeError("abs() is not defined for rational functions")

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def __call__(self, x):
        return poly_eval(self.num, x) / poly_eval(self.den, x)

    def to_text(self) -> str:
        if self.den == (1,):
            return poly_to_text(self.num)
        return f"({poly_to_text(self.num)})/({poly_to_text(self.den)})"

    __str__ = to_text

    def __repr__(self):
        return f"RationalFunction({self.to_text()})"

    def to_json(self) -> dict:
        return {"num": [_fraction_text(c) for c in self.num] or ["0"],
                "den": [_fraction_text(c) for c in self.den]}

    @classmethod
    def from_json(cls, obj) -> "RationalFunction":
        if isinstance(obj, dict):
            return cls([parse_exact(c) for c in obj["num"]],
                       [parse_exact(c) for c in obj.get("den", [1])])
        return cls.const(parse_exact(obj))


def parse_exact(value) -> Fraction:
    """Exact rational from an int, ``"a/b"`` string or decimal text (``"0.0289"``)."""
    if isinstance(value, float):
        value = repr(value)
    return Fraction(value)


# -- domain descriptors --------------------------------------------------------

class ScalarDomain:
    """Field operations needed by the kernel, by name."""

    name = "abstract"
    exact = True

    def from_integer(self, n: int):
        raise NotImplementedError

    def from_decimal_text(self, text: str):
        raise NotImplementedError

    @property
    def zero(self):
        return self.from_integer(0)

    @property
    def one(self):
        return self.from_integer(1)

    def is_zero(self, x, tol: float | None = None) -> bool:
        return x == 0

    def dtype(self):
        return object


class FloatDomain(ScalarDomain):
    name = "float"
    exact = False
    default_tol = 1e-12

    def from_integer(self, n):
        return float(n)

    def from_decimal_text(self, text):
        return float(text)

    def is_zero(self, x, tol=None):
        return abs(x) < (self.default_tol if tol is None else tol)

    def dtype(self):
        return float


class RationalDomain(ScalarDomain):
    name = "rational"

    def from_integer(self, n):
        return Fraction(n)

    def from_decimal_text(self, text):
        return Fraction(text)


class RationalFunctionDomain(ScalarDomain):
    name = "ratfun"

    def from_integer(self, n):
        return RationalFunction.const(n)

    def from_decimal_text(self, text):
        return RationalFunction.const(Fraction(text))


FLOAT = FloatDomain()
RATIONAL = RationalDomain()
RATFUN = RationalFunctionDomain()

DOMAINS = {d.name: d for d in (FLOAT, RATIONAL, RATFUN)}


def scalar_text(c) -> str:
    """Coefficient text as printed inside ``( c )``."""
    if isinstance(c, Fraction):
        return _fraction_text(c)
    if isinstance(c, RationalFunction):
        return c.to_text()
    if isinstance(c, int):
        return str(c)
    c = float(c)
    if c == int(c) and abs(c) < 1e15:
        return str(int(c))
    return format(c, ".5g")


def scalar_json(c):
    if isinstance(c, Fraction):
        return _fraction_text(c)
    if isinstance(c, RationalFunction):
        return c.to_json()
    return float(c)


def scalar_from_json(obj):
    if isinstance(obj, dict):
        return RationalFunction.from_json(obj)
    if isinstance(obj, str):
        return Fraction(obj)
    return float(obj)

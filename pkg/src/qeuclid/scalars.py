"""Exact scalars: the field Q(s) of rational functions in s = q^(1/2).

Numerator and denominator are integer polynomials (``flint.fmpz_poly``),
kept coprime with a positive leading denominator coefficient, so two
scalars are equal iff their representations are equal.

A :class:`NumericField` offers the same interface over ``Fraction`` for a
fixed rational value of s; the algebra code is written against either.
"""
from __future__ import annotations

import threading
from fractions import Fraction

from flint import fmpz_poly

__all__ = [
    "PoleError",
    "Scalar",
    "RationalFunctionField",
    "NumericField",
    "QS",
    "numeric_field",
    "scalar_normalize",
    "scalar_arith",
    "scalar_eval",
    "parse_scalar",
]


class PoleError(ZeroDivisionError):
    """A denominator vanishes at the requested value of s."""


def _poly(p) -> fmpz_poly:
    if isinstance(p, fmpz_poly):
        return p
    if isinstance(p, int):
        return fmpz_poly([p])
    return fmpz_poly(list(p))


def _horner(p: fmpz_poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p.coeffs()):
        acc = acc * x + int(c)
    return acc


def _poly_str(p: fmpz_poly, var: str = "s") -> str:
    coeffs = [int(c) for c in p.coeffs()]
    if not coeffs:
        return "0"
    out = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        out.append((sign, body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f"{sign}{body}"
    return text


class Scalar:
    """An element of Q(s) in canonical reduced form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1, *, _canonical=False):
        num = _poly(num)
        den = _poly(den)
        if not _canonical:
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            if num == 0:
                den = fmpz_poly([1])
            elif den.degree() > 0 or abs(int(den[0])) != 1:
                g = num.gcd(den)
                if g != 1:
                    num = num // g
                    den = den // g
            if den[den.degree()] < 0:
                num, den = -num, -den
        self.num = num
        self.den = den
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, int):
            return cls(fmpz_poly([x]), _ONE_POLY, _canonical=True)
        if isinstance(x, Fraction):
            return cls(x.numerator, x.denominator)
        return NotImplemented

    @classmethod
    def s_power(cls, k: int) -> "Scalar":
        mono = fmpz_poly([0] * abs(k) + [1])
        if k >= 0:
            return cls(mono, _ONE_POLY, _canonical=True)
        return cls(_ONE_POLY, mono, _canonical=True)

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num == 0

    def is_one(self) -> bool:
        return self.num == 1 and self.den == 1

    def is_polynomial(self) -> bool:
        return self.den == 1

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num == 0:
            return self
        if self.num == 0:
            return other
        if self.den == other.den:
            return Scalar(self.num + other.num, self.den)
        return Scalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num == 0 or other.num == 0:
            return _ZERO
        if self.den == 1 and other.den == 1:
            return Scalar(self.num * other.num, _ONE_POLY, _canonical=True)
        return Scalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.num == 0:
            raise ZeroDivisionError("division by zero scalar")
        if self.num[self.num.degree()] > 0:
            return Scalar(self.den, self.num, _canonical=True)
        return Scalar(-self.den, -self.num, _canonical=True)

    def __truediv__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Scalar(self.num**k, self.den**k, _canonical=True)

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(int(c) for c in self.num.coeffs()),
                               tuple(int(c) for c in self.den.coeffs())))
        return self._hash

    def __bool__(self):
        return self.num != 0

    # numeric ------------------------------------------------------------
    def evaluate(self, s0) -> Fraction:
        s0 = Fraction(s0)
        d = _horner(self.den, s0)
        if d == 0:
            raise PoleError(f"pole of {self} at s={s0}")
        return _horner(self.num, s0) / d

    def sqrt(self) -> "Scalar":
        """Square root with positive leading coefficients; ValueError if not a square."""
        try:
            n = self.num.sqrt()
            d = self.den.sqrt()
        except Exception as exc:  # flint raises DomainError
            raise ValueError(f"{self} is not a perfect square in Q(s)") from exc
        if n is None or d is None:
            raise ValueError(f"{self} is not a perfect square in Q(s)")
        if n != 0 and n[n.degree()] < 0:
            n = -n
        return Scalar(n, d)

    # display ------------------------------------------------------------
    def __str__(self):
        if self.den == 1:
            return _poly_str(self.num)
        num = _poly_str(self.num)
        if len([c for c in self.num.coeffs() if c != 0]) > 1:
            num = f"({num})"
        den = _poly_str(self.den)
        if len([c for c in self.den.coeffs() if c != 0]) > 1 or den.startswith("-") or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"Scalar({self})"

    def laurent_terms(self):
        """``[(exponent, Fraction)]`` if the denominator is c*s^k, else None."""
        dc = [int(c) for c in self.den.coeffs()]
        nz = [k for k, c in enumerate(dc) if c]
        if len(nz) != 1:
            return None
        k = nz[0]
        c = dc[k]
        return [(e - k, Fraction(int(a), c)) for e, a in enumerate(self.num.coeffs()) if a != 0]

    def display(self) -> str:
        """Laurent-style text when possible (``s - s^-1``), else ``(num)/(den)``."""
        terms = self.laurent_terms()
        if terms is None:
            return str(self)
        pieces = []
        for e, c in sorted(terms, key=lambda t: -t[0]):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if e == 0 else ("s" if e == 1 else f"s^{e}")
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            pieces.append((sign, body))
        if not pieces:
            return "0"
        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text


_ONE_POLY = fmpz_poly([1])
_ZERO = Scalar(0, 1, _canonical=True)


def scalar_normalize(n, d) -> Scalar:
    """Canonical scalar ``n/d`` from integer coefficient lists (constant term first)."""
    return Scalar(n, d)


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def scalar_eval(a: Scalar, s0) -> Fraction:
    return a.evaluate(s0)


# --- fields ---------------------------------------------------------------


class _FieldBase:
    """Shared helpers; subclasses set ``one``, ``zero``, ``s``."""

    symbolic: bool

    def __init__(self):
        self._qpow: dict[int, object] = {}
        self._lock = threading.Lock()
        self.q = self.s * self.s
        self.h = self.s - self.one / self.s
        # per-field memo tables used by the algebra module
        self.cache: dict = {}

    def s_pow(self, k: int):
        v = self._qpow.get(k)
        if v is None:
            v = self.s_power_uncached(k)
            self._qpow[k] = v
        return v

    def q_pow(self, k: int):
        return self.s_pow(2 * k)

    def qint(self, n: int):
        """sum_{m<n} q^(-2m), the coefficient in x+ (x-)^n reordering."""
        acc = self.zero
        for m in range(n):
            acc = acc + self.q_pow(-2 * m)
        return acc


class RationalFunctionField(_FieldBase):
    """Q(s), the symbolic coefficient field."""

    symbolic = True

    def __init__(self):
        self.one = Scalar.coerce(1)
        self.zero = _ZERO
        self.s = Scalar.s_power(1)
        super().__init__()

    def s_power_uncached(self, k):
        return Scalar.s_power(k)

    def coerce(self, x):
        if isinstance(x, Scalar):
            return x
        return Scalar.coerce(Fraction(x) if not isinstance(x, int) else x)

    def sqrt(self, x: Scalar) -> Scalar:
        return x.sqrt()

    def to_fraction(self, x: Scalar, s0) -> Fraction:
        return x.evaluate(s0)

    def describe(self) -> str:
        return "symbolic"

    def fmt(self, x: Scalar) -> str:
        return x.display()


class NumericField(_FieldBase):
    """Q with s fixed to a rational value; elements are ``Fraction``."""

    symbolic = False

    def __init__(self, s0):
        self.s0 = Fraction(s0)
        if self.s0 == 0:
            raise ValueError("s must be nonzero")
        self.one = Fraction(1)
        self.zero = Fraction(0)
        self.s = self.s0
        super().__init__()

    def s_power_uncached(self, k):
        return self.s0**k

    def coerce(self, x):
        if isinstance(x, Scalar):
            return x.evaluate(self.s0)
        return Fraction(x)

    def sqrt(self, x: Fraction) -> Fraction:
        if x < 0:
            raise ValueError(f"{x} has no rational square root")
        n, d = x.numerator, x.denominator
        rn, rd = _isqrt_exact(n), _isqrt_exact(d)
        if rn is None or rd is None:
            raise ValueError(f"{x} is not a rational square")
        return Fraction(rn, rd)

    def describe(self) -> str:
        return f"numeric s={self.s0}"

    def fmt(self, x: Fraction) -> str:
        return str(x)


def _isqrt_exact(n: int):
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


QS = RationalFunctionField()
_numeric_fields: dict[Fraction, NumericField] = {}
_numeric_lock = threading.Lock()


def numeric_field(s0) -> NumericField:
    s0 = Fraction(s0)
    with _numeric_lock:
        f = _numeric_fields.get(s0)
        if f is None:
            f = _numeric_fields[s0] = NumericField(s0)
        return f


# --- parsing ----------------------------------------------------------------

def parse_scalar(text: str) -> Scalar:
    """Parse a rational expression in ``s`` (``q`` means ``s^2``)."""
    from .dsl import parse, evaluate

    value = evaluate(parse(text))
    if not hasattr(value, "constant_value"):
        raise ValueError(f"{text!r} is not a scalar")
    c = value.constant_value()
    if c is None:
        raise ValueError(f"{text!r} is not a scalar")
    return c

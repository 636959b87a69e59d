"""Exact rational and complex-rational scalars, Pochhammer symbols,
binomials and terminating hypergeometric sums.

Every quantity here is a ``fractions.Fraction`` (or a :class:`CRational`
pair of them); nothing in this module ever rounds.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Rational = Fraction

RationalLike = Union[int, Fraction]


class NonTerminatingError(ValueError):
    """Raised when a hypergeometric series has no terminating parameter."""


class CRational:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def of(x) -> "CRational":
        if isinstance(x, CRational):
            return x
        return CRational(x)

    def conj(self) -> "CRational":
        return CRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __add__(self, other):
        o = CRational.of(other)
        return CRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = CRational.of(other)
        return CRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return CRational.of(other).__sub__(self)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = CRational(1)
        for _ in range(n):
            out = out * self
        return out

    def __mul__(self, other):
        o = CRational.of(other)
        return CRational(self.re * o.re - self.im * o.im,
                         self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = CRational.of(other)
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("division by zero CRational")
        return CRational((self.re * o.re + self.im * o.im) / d,
                         (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        return CRational.of(other).__truediv__(self)

    def __neg__(self):
        return CRational(-self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, CRational):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"CRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return f"{self.re}+{self.im}j"


def binomial(n: int, k: int) -> Fraction:
    """C(n, k) with the out-of-range convention C(n, k) = 0.

    Requires n >= 0; k may be any integer.
    """
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return Fraction(0)
    return Fraction(math.comb(n, k))


def factorial(n: int) -> Fraction:
    if n < 0:
        raise ValueError(f"factorial requires n >= 0, got n={n}")
    return Fraction(math.factorial(n))


def rising_pochhammer(a: RationalLike, n: int) -> Fraction:
    """(a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1."""
    if n < 0:
        raise ValueError(f"rising_pochhammer requires n >= 0, got n={n}")
    a = Fraction(a)
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out


def falling_pochhammer(a: RationalLike, n: int) -> Fraction:
    """a (a-1) ... (a-n+1), with the empty product equal to 1."""
    if n < 0:
        raise ValueError(f"falling_pochhammer requires n >= 0, got n={n}")
    a = Fraction(a)
    out = Fraction(1)
    for i in range(n):
        out *= a - i
    return out


def hyp2f1_terminating(n: int, b: RationalLike, c: RationalLike) -> Fraction:
    """2F1(-n, b; c; 1) summed term by term in exact arithmetic.

    The first parameter -n makes the series terminate after n+1 terms.
    A vanishing denominator factor (c)_i is only an error when the
    corresponding numerator is nonzero.
    """
    if n < 0:
        raise ValueError(f"hyp2f1_terminating requires n >= 0, got n={n}")
    b = Fraction(b)
    c = Fraction(c)
    total = Fraction(0)
    num = Fraction(1)    # (-n)_i (b)_i / i!
    den = Fraction(1)    # (c)_i
    for i in range(n + 1):
        if den == 0:
            if num != 0:
                raise ZeroDivisionError(
                    f"2F1(-{n},{b};{c};1): denominator Pochhammer ({c})_{i} = 0 "
                    "with nonzero numerator")
        else:
            total += num / den
        num *= Fraction(-n + i) * (b + i) / (i + 1)
        den *= c + i
    return total


def _termination_index(a1: Fraction, a2: Fraction, a3: Fraction) -> int:
    """Smallest n with some a_j = -n a nonpositive integer."""
    candidates = [int(-a) for a in (a1, a2, a3)
                  if a <= 0 and a.denominator == 1]
    if not candidates:
        raise NonTerminatingError(
            f"3F2({a1},{a2},{a3};...;1) has no nonpositive-integer "
            "numerator parameter")
    return min(candidates)


def hyp3f2_terminating(a1: RationalLike, a2: RationalLike, a3: RationalLike,
                       b1: RationalLike, b2: RationalLike) -> Fraction:
    """3F2(a1, a2, a3; b1, b2; 1) for terminating parameter sets.

    At least one numerator parameter must be a nonpositive integer.
    """
    a1, a2, a3 = Fraction(a1), Fraction(a2), Fraction(a3)
    b1, b2 = Fraction(b1), Fraction(b2)
    n = _termination_index(a1, a2, a3)
    total = Fraction(0)
    num = Fraction(1)    # (a1)_i (a2)_i (a3)_i / i!
    den = Fraction(1)    # (b1)_i (b2)_i
    for i in range(n + 1):
        if den == 0:
            if num != 0:
                raise ZeroDivisionError(
                    f"3F2: denominator Pochhammer vanished at i={i} "
                    "with nonzero numerator")
        else:
            total += num / den
        num *= (a1 + i) * (a2 + i) * (a3 + i) / (i + 1)
        den *= (b1 + i) * (b2 + i)
    return total

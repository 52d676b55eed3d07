"""Exact scalar arithmetic: rationals, Gaussian rationals, small helpers.

All published coefficients handled by this package (1/72, 5/432, 1/864, ...)
are carried as ``fractions.Fraction``, which already guarantees lowest terms
and a positive denominator.  Complex values with rational real/imaginary
parts appear only in intermediate residue computations; they are represented
by :class:`QI` and must cancel to real numbers before results are reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

Rat = Fraction


def rat(x, y=None) -> Fraction:
    """Shorthand Fraction constructor."""
    return Fraction(x) if y is None else Fraction(x, y)


def ser_rat(q: Fraction) -> str:
    """Serialize an exact scalar as ``"p/q"`` (bare integer when q == 1)."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rat(s: str) -> Fraction:
    """Parse the ``"p/q"`` serialization back into a Fraction."""
    return Fraction(s)


def double_factorial(n: int) -> int:
    """(n)!! for n >= -1, with (-1)!! = 0!! = 1."""
    if n <= 0:
        return 1
    result = 1
    while n > 1:
        result *= n
        n -= 2
    return result


def gaussian_moment(power: int, variance: Fraction) -> Fraction:
    """<x^power> for centered Gaussian x with the given variance.

    Odd powers give exactly 0; <x^(2m)> = (2m-1)!! * variance^m.
    """
    if power < 0:
        raise ValueError("power must be non-negative")
    if power % 2:
        return Fraction(0)
    m = power // 2
    return double_factorial(2 * m - 1) * Fraction(variance) ** m


def binomial(n: int, k: int) -> int:
    return comb(n, k)


def fact(n: int) -> int:
    return factorial(n)


def rising_product(start: Fraction, count: int) -> Fraction:
    """prod_{r=0}^{count-1} (start + r), exact.

    This is the Gamma-function recurrence Gamma(start+count)/Gamma(start)
    evaluated without any floating-point Gamma.
    """
    result = Fraction(1)
    for r in range(count):
        result *= Fraction(start) + r
    return result


@dataclass(frozen=True)
class QI:
    """Gaussian rational a + b*i with exact Fraction parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(x) -> "QI":
        if isinstance(x, QI):
            return x
        return QI(Fraction(x), Fraction(0))

    def __add__(self, other):
        o = QI.of(other)
        return QI(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-QI.of(other))

    def __rsub__(self, other):
        return QI.of(other) + (-self)

    def __mul__(self, other):
        o = QI.of(other)
        return QI(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QI.of(other)
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by complex zero")
        return QI((self.re * o.re + self.im * o.im) / d,
                  (self.im * o.re - self.re * o.im) / d)

    def __pow__(self, n: int) -> "QI":
        if n < 0:
            return QI.of(1) / self ** (-n)
        result = QI.of(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            base = base * base
        return result

    def conj(self) -> "QI":
        return QI(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return not self.is_zero()


I_UNIT = QI(Fraction(0), Fraction(1))

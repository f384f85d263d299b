"""Coefficient fields for the algebra engine.

Two modes: exact rationals (flint ``fmpq``) and univariate rational functions
in q with rational coefficients (:class:`RatFunc`).  Both expose the usual
field operators and ``bool(c)`` as the zero test.
"""
from __future__ import annotations

from fractions import Fraction

import flint

fmpq = flint.fmpq
fmpq_poly = flint.fmpq_poly


def to_fmpq(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    if isinstance(x, int):
        return fmpq(x)
    if isinstance(x, str):
        x = Fraction(x)
        return fmpq(x.numerator, x.denominator)
    raise TypeError(f"cannot convert {x!r} to a rational")


def fmpq_to_fraction(x: flint.fmpq) -> Fraction:
    return Fraction(int(x.p), int(x.q))


class RatFunc:
    """num/den with fmpq_poly parts, gcd-reduced, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if not isinstance(num, fmpq_poly):
            num = fmpq_poly([to_fmpq(num)])
        if den is None:
            self.num, self.den = num, fmpq_poly([1])
            return
        if not isinstance(den, fmpq_poly):
            den = fmpq_poly([to_fmpq(den)])
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                num, den = num, fmpq_poly([1])
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num, den = num / g, den / g
                    # fmpq_poly '/' is exact division here
                lc = den.leading_coefficient()
                if lc != 1:
                    num, den = num / lc, den / lc
        self.num, self.den = num, den

    @classmethod
    def q(cls) -> "RatFunc":
        return cls(fmpq_poly([0, 1]))

    @classmethod
    def q_pow(cls, k: int) -> "RatFunc":
        mono = fmpq_poly([0] * abs(k) + [1])
        return cls(mono) if k >= 0 else cls(fmpq_poly([1]), mono, _reduced=True)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction, flint.fmpq, fmpq_poly)):
            return RatFunc(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc(1) / (self ** -k)
        return RatFunc(self.num ** k, self.den ** k, _reduced=True)

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def evaluate(self, q0) -> flint.fmpq:
        q0 = to_fmpq(q0)
        d = self.den(q0)
        if d == 0:
            raise ZeroDivisionError("pole of rational function")
        return self.num(q0) / d

    def __str__(self):
        n = self.num.str(var="q")
        if self.den.is_one():
            return n
        return f"({n})/({self.den.str(var='q')})"

    __repr__ = __str__

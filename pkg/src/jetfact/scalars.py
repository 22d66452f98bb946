"""Exact Gaussian-rational scalars.

Every coefficient in the symbolic layer is an element of the field of
Gaussian rationals: a pair of arbitrary-precision rationals (real and
imaginary part).  The field is closed under the four arithmetic operations
and has decidable, exact equality, which is what makes the axiom checkers
meaningful.  Floating-point coefficients never appear here; the numeric
layer converts at its own boundary.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["Scalar", "ZERO", "ONE", "I", "frac"]


def frac(value) -> Fraction:
    """Coerce ints, Fractions, or strings like "3/5" to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class Scalar:
    """An element re + im*i of the Gaussian rationals.

    Instances are immutable by convention; all operators return new values.
    Mixed arithmetic with ints and Fractions coerces exactly.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = frac(re)
        self.im = frac(im)

    # -- coercion ----------------------------------------------------------

    @staticmethod
    def coerce(value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        return Scalar(frac(value))

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = Scalar.coerce(other)
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = Scalar.coerce(other)
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __mul__(self, other):
        other = Scalar.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return Scalar(a * c)
        return Scalar(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Scalar.coerce(other)
        n = other.abs2()
        if not n:
            raise ZeroDivisionError("division by zero scalar")
        a, b, c, d = self.re, self.im, other.re, other.im
        return Scalar((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("scalar powers must be integers")
        if n < 0:
            return ONE / (self ** (-n))
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- field structure ---------------------------------------------------

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Exact squared modulus re**2 + im**2."""
        return self.re * self.re + self.im * self.im

    def is_unit(self) -> bool:
        """True when the scalar lies exactly on the unit circle."""
        return self.abs2() == 1

    def is_real(self) -> bool:
        return not self.im

    # -- comparisons and hashing -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    # -- conversion and display ----------------------------------------------

    def __complex__(self):
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        return f"Scalar({self.re!r}, {self.im!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return _imag_str(self.im)
        im_part = _imag_str(self.im)
        if not im_part.startswith("-"):
            im_part = "+" + im_part
        return f"{self.re}{im_part}"


def _imag_str(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}i"


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)

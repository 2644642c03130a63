"""Exact arithmetic in the field Q(i).

GaussianRational holds two Fractions, so every operation stays exact and
canonical (both parts are reduced by Fraction itself).  Instances mix freely
with int and Fraction operands, which keeps the polynomial layer agnostic of
the coefficient field.
"""

from __future__ import annotations

from fractions import Fraction


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return None


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- conversions ------------------------------------------------------

    @staticmethod
    def coerce(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        f = _as_fraction(x)
        if f is None:
            raise TypeError(f"cannot coerce {x!r} to GaussianRational")
        return GaussianRational(f)

    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = _as_fraction(other)
        if o is not None:
            return GaussianRational(self.re + o, self.im)
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = _as_fraction(other)
        if o is not None:
            return GaussianRational(self.re - o, self.im)
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re - other.re, self.im - other.im)
        return NotImplemented

    def __rsub__(self, other):
        o = _as_fraction(other)
        if o is not None:
            return GaussianRational(o - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        o = _as_fraction(other)
        if o is not None:
            return GaussianRational(self.re * o, self.im * o)
        if isinstance(other, GaussianRational):
            return GaussianRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_fraction(other)
        if o is not None:
            if o == 0:
                raise ZeroDivisionError("division by zero")
            return GaussianRational(self.re / o, self.im / o)
        if isinstance(other, GaussianRational):
            n2 = other.norm2()
            if n2 == 0:
                raise ZeroDivisionError("division by zero")
            num = self * other.conjugate()
            return GaussianRational(num.re / n2, num.im / n2)
        return NotImplemented

    def __rtruediv__(self, other):
        o = _as_fraction(other)
        if o is not None:
            return GaussianRational(o) / self
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return GaussianRational(1) / self ** (-k)
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparisons ------------------------------------------------------

    def __eq__(self, other):
        o = _as_fraction(other)
        if o is not None:
            return self.im == 0 and self.re == o
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        from .scalar import coeff_to_str

        return coeff_to_str(self)

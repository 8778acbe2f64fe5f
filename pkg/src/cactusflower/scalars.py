"""Exact scalar arithmetic: rationals, Gaussian rationals, dual numbers.

Every module in this package computes over an exact field.  The two fields
supported are Q (python Fractions) and Q(i) (GaussianRational below); a value
whose imaginary part is zero is always normalised back down to a Fraction, so
equality and hashing are field-independent.

Dual numbers (a + b*d with d^2 = 0) are used for exact Jacobian ranks of
rational parameterizations; they are a testing device, not part of the
geometry.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to Fraction")


@dataclass(frozen=True)
class GaussianRational:
    """An element a + b*i of Q(i), with exact Fraction parts."""

    re: Fraction
    im: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", _as_fraction(self.re))
        object.__setattr__(self, "im", _as_fraction(self.im))

    @staticmethod
    def _coerce(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(_as_fraction(x), Fraction(0))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return canon_scalar(GaussianRational(self.re + o.re, self.im + o.im))

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return canon_scalar(GaussianRational(self.re - o.re, self.im - o.im))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return canon_scalar(GaussianRational(o.re - self.re, o.im - self.im))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return canon_scalar(
            GaussianRational(
                self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
            )
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return canon_scalar(
            GaussianRational(
                (self.re * o.re + self.im * o.im) / n,
                (self.im * o.re - self.re * o.im) / n,
            )
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return 1 / (self ** (-k))
        result = GaussianRational(Fraction(1), Fraction(0))
        base = self
        while k:
            if k & 1:
                result = GaussianRational._coerce(result * base)
            base = GaussianRational._coerce(base * base)
            k >>= 1
        return canon_scalar(result)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


Scalar = Union[Fraction, GaussianRational]

I = GaussianRational(Fraction(0), Fraction(1))
ZERO = Fraction(0)
ONE = Fraction(1)


def canon_scalar(x: Scalar) -> Scalar:
    """Normalise: Gaussian rationals with zero imaginary part become Fractions."""
    if isinstance(x, GaussianRational) and x.im == 0:
        return x.re
    if isinstance(x, int):
        return Fraction(x)
    return x


def conjugate(x: Scalar) -> Scalar:
    if isinstance(x, GaussianRational):
        return canon_scalar(x.conjugate())
    return _as_fraction(x)


def parse_scalar(s: str) -> Scalar:
    """Parse "3/4", "-2", "1/2+3/4i", "i", "-i", "2-i", "1i"."""
    s = s.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    if not s.endswith("i"):
        return Fraction(s)
    body = s[:-1]
    re_part, im_part = None, body
    for pos in range(len(body) - 1, 0, -1):
        if body[pos] in "+-" and body[pos - 1] not in "+-/":
            re_part, im_part = body[:pos], body[pos:]
            break
    re_f = Fraction(re_part) if re_part else Fraction(0)
    if im_part in ("", "+"):
        im_f = Fraction(1)
    elif im_part == "-":
        im_f = Fraction(-1)
    else:
        im_f = Fraction(im_part)
    return canon_scalar(GaussianRational(re_f, im_f))


def format_scalar(x: Scalar) -> str:
    return str(canon_scalar(x))


def scalar_is_real(x: Scalar) -> bool:
    return not isinstance(canon_scalar(x), GaussianRational)


def sqrt_fraction(y: Fraction):
    """Exact square root of a nonnegative rational, or None if irrational."""
    if y < 0:
        return None
    n, d = y.numerator, y.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class Dual:
    """Dual number a + b*d, d^2 = 0, over any of the exact scalars."""

    a: Scalar
    b: Scalar

    @staticmethod
    def _coerce(x):
        if isinstance(x, Dual):
            return x
        if isinstance(x, (int, Fraction, GaussianRational)):
            return Dual(canon_scalar(x), ZERO)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Dual(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Dual(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Dual(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Dual(self.a / o.a, (self.b * o.a - self.a * o.b) / (o.a * o.a))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b


def matrix_rank(rows) -> int:
    """Rank of a matrix of exact scalars by fraction-free Gaussian elimination."""
    m = [list(r) for r in rows]
    rank = 0
    n_cols = len(m[0]) if m else 0
    col = 0
    while rank < len(m) and col < n_cols:
        pivot = None
        for r in range(rank, len(m)):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            col += 1
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        for r in range(rank + 1, len(m)):
            if m[r][col] != 0:
                factor = m[r][col] / pv
                m[r] = [x - factor * y for x, y in zip(m[r], m[rank])]
        rank += 1
        col += 1
    return rank

"""Exact arithmetic in Q(i), the lattice Z[i] and the inverse different (i/2)Z[i].

Elements of Q(i) are :class:`GaussRat`, stored as a reduced integer triple
``(x, y, d)`` meaning ``(x + y i) / d``.  Elements of the inverse different
are :class:`HalfLattice` pairs ``(a, b)`` meaning ``(a + b i) / 2``; residue
classes modulo ``m Z[i]`` are :class:`Rep` pairs with ``0 <= a, b < 2m``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import NamedTuple, Union


class GaussRat:
    """An exact element ``(x + y i) / d`` of Q(i), kept in lowest terms."""

    __slots__ = ("x", "y", "d")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        self._set(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    def _set(self, x, y, d):
        g = gcd(gcd(x, y), d)
        if g != 1:
            x //= g
            y //= g
            d //= g
        self.x = x
        self.y = y
        self.d = d

    @classmethod
    def _raw(cls, x: int, y: int, d: int) -> "GaussRat":
        # d > 0 required; reduces
        obj = object.__new__(cls)
        obj._set(x, y, d)
        return obj

    @classmethod
    def coerce(cls, v) -> "GaussRat":
        if isinstance(v, GaussRat):
            return v
        if isinstance(v, int):
            return cls._raw(v, 0, 1)
        if isinstance(v, Rational):
            return cls._raw(v.numerator, 0, v.denominator)
        if isinstance(v, complex):
            if v.real != int(v.real) or v.imag != int(v.imag):
                raise TypeError("only Gaussian integers may be given as complex literals")
            return cls._raw(int(v.real), int(v.imag), 1)
        if isinstance(v, (tuple, list)) and len(v) == 2:
            return cls(v[0], v[1])
        raise TypeError(f"cannot convert {v!r} to GaussRat")

    @property
    def re(self) -> Fraction:
        return Fraction(self.x, self.d)

    @property
    def im(self) -> Fraction:
        return Fraction(self.y, self.d)

    def is_real(self) -> bool:
        return self.y == 0

    def __bool__(self):
        return self.x != 0 or self.y != 0

    def __hash__(self):
        if self.y == 0:
            return hash(Fraction(self.x, self.d))
        return hash((self.x, self.y, self.d))

    def __eq__(self, other):
        if not isinstance(other, GaussRat):
            try:
                other = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
        return self.x == other.x and self.y == other.y and self.d == other.d

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"

    def __str__(self):
        re, im = self.re, self.im
        if im == 0:
            return str(re)
        if re == 0:
            return f"{im}*i"
        return f"({re}{'+' if im > 0 else '-'}{abs(im)}*i)"

    def __neg__(self):
        return GaussRat._raw(-self.x, -self.y, self.d)

    def __pos__(self):
        return self

    def __add__(self, other):
        if not isinstance(other, GaussRat):
            try:
                other = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
        if self.d == other.d:
            return GaussRat._raw(self.x + other.x, self.y + other.y, self.d)
        return GaussRat._raw(self.x * other.d + other.x * self.d,
                             self.y * other.d + other.y * self.d, self.d * other.d)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussRat):
            try:
                other = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GaussRat):
            try:
                other = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
        if self.y == 0 and other.y == 0:
            return GaussRat._raw(self.x * other.x, 0, self.d * other.d)
        return GaussRat._raw(self.x * other.x - self.y * other.y,
                             self.x * other.y + self.y * other.x, self.d * other.d)

    __rmul__ = __mul__

    def inverse(self) -> "GaussRat":
        n = self.x * self.x + self.y * self.y
        if n == 0:
            raise ZeroDivisionError("GaussRat division by zero")
        # d/(x+iy) = d(x-iy)/n
        x, y = self.d * self.x, -self.d * self.y
        if n < 0:
            x, y, n = -x, -y, -n
        return GaussRat._raw(x, y, n)

    def __truediv__(self, other):
        if not isinstance(other, GaussRat):
            try:
                other = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self) -> "GaussRat":
        return GaussRat._raw(self.x, -self.y, self.d)

    def norm(self) -> Fraction:
        return Fraction(self.x * self.x + self.y * self.y, self.d * self.d)


ZERO = GaussRat._raw(0, 0, 1)
ONE = GaussRat._raw(1, 0, 1)
I = GaussRat._raw(0, 1, 1)

#: the unit group of Z[i] in the order 1, i, -1, -i
UNITS = (ONE, I, -ONE, -I)


class HalfLattice(NamedTuple):
    """The element ``(a + b i)/2`` of the inverse different (i/2)Z[i]."""

    a: int
    b: int

    def norm(self) -> Fraction:
        return Fraction(self.a * self.a + self.b * self.b, 4)

    def conj(self) -> "HalfLattice":
        return HalfLattice(self.a, -self.b)

    def times(self, c: int, d: int) -> "HalfLattice":
        """Multiply by the Gaussian integer ``c + d i``."""
        a, b = self.a, self.b
        return HalfLattice(a * c - b * d, a * d + b * c)

    def to_gauss(self) -> GaussRat:
        return GaussRat._raw(self.a, self.b, 2)


class Rep(NamedTuple):
    """Canonical representative ``(a + b i)/2`` of a class in (i/2)Z[i] / mZ[i]."""

    a: int
    b: int

    def __str__(self):
        return f"{self.a},{self.b}"

    def norm(self) -> Fraction:
        return Fraction(self.a * self.a + self.b * self.b, 4)

    @classmethod
    def parse(cls, text: str) -> "Rep":
        a, b = text.split(",")
        return cls(int(a), int(b))


Number = Union[int, Fraction, GaussRat]


def norm(x) -> Fraction:
    """The field norm ``re^2 + im^2``."""
    if isinstance(x, (HalfLattice, Rep)):
        return x.norm()
    return GaussRat.coerce(x).norm()


def conj(x):
    if isinstance(x, HalfLattice):
        return x.conj()
    return GaussRat.coerce(x).conj()


def representatives(m: int) -> list[Rep]:
    """The residue system S_m, lexicographic in ``(a, b)``."""
    if m < 1:
        raise ValueError("index must be positive")
    return [Rep(a, b) for a in range(2 * m) for b in range(2 * m)]


def reduce(r, m: int) -> Rep:
    """The unique ``s`` in S_m with ``r - s`` in ``m Z[i]``."""
    a, b = r
    return Rep(a % (2 * m), b % (2 * m))


def _unit_pair(eps) -> tuple[int, int]:
    e = GaussRat.coerce(eps)
    if e.d != 1 or (e.x * e.x + e.y * e.y) != 1:
        raise ValueError(f"{eps!r} is not a unit of Z[i]")
    return e.x, e.y


def unit_index(eps, s, m: int) -> Rep:
    """``reduce(eps * s, m)`` for a unit ``eps`` of Z[i]."""
    c, d = _unit_pair(eps)
    return reduce(HalfLattice(*s).times(c, d), m)


def lattice_points(s, m: int, bound: Fraction) -> list[tuple[Fraction, int, int]]:
    """All ``r = (a + b i)/2`` with ``r = s (mod m Z[i])`` and ``N(r)/m < bound``.

    Returned as ``(N(r)/m, a, b)`` sorted by norm, then ``(a, b)``.
    """
    a0, b0 = s
    step = 2 * m
    # N(r)/m < bound  <=>  a^2 + b^2 < 4 m bound
    lim = 4 * m * Fraction(bound)
    out = []
    if lim <= 0:
        return out
    R = int(lim ** 0.5) + 2
    a_steps = range(-((R + a0) // step) - 1, (R - a0) // step + 2)
    b_steps = range(-((R + b0) // step) - 1, (R - b0) // step + 2)
    for j in a_steps:
        a = a0 + step * j
        a2 = a * a
        if a2 >= lim:
            continue
        for l in b_steps:
            b = b0 + step * l
            if a2 + b * b < lim:
                out.append((Fraction(a2 + b * b, 4 * m), a, b))
    out.sort()
    return out

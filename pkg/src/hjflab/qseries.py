"""Truncated q-series with rational exponents and exact Q(i) coefficients.

A :class:`QSeries` stores ``{n: c}`` meaning ``sum c q^(n/den)`` together with
a rational precision ``prec``: every exponent below ``prec`` is determined.
Exact (untruncated) series carry ``prec = INF``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, inf as INF
from typing import Iterable, Optional

from ._kron import gauss_poly_mul
from .gaussian import GaussRat, ZERO

#: default q-exponent bound used throughout the package
DEFAULT_PREC = Fraction(40)


def as_prec(p) -> Fraction | float:
    if p is None or p == INF:
        return INF
    return Fraction(p)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class QSeries:
    """Sparse truncated series ``sum_n c_n q^(n/den) + O(q^prec)``."""

    __slots__ = ("den", "coeffs", "prec")

    def __init__(self, coeffs: Optional[dict] = None, den: int = 1, prec=INF):
        if den < 1:
            raise ValueError("exponent denominator must be positive")
        prec = as_prec(prec)
        clean: dict[int, GaussRat] = {}
        if coeffs:
            bound = None if prec == INF else prec * den
            for n, c in coeffs.items():
                if bound is not None and n >= bound:
                    continue
                c = GaussRat.coerce(c)
                if c:
                    clean[n] = c
        g = den
        for n in clean:
            g = gcd(g, n)
            if g == 1:
                break
        if g > 1:
            clean = {n // g: c for n, c in clean.items()}
            den //= g
        self.den = den
        self.coeffs = clean
        self.prec = prec

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_terms(cls, terms, prec=INF) -> "QSeries":
        """Build from ``{exponent: coeff}`` or ``[(exponent, coeff), ...]``."""
        items = list(terms.items()) if isinstance(terms, dict) else list(terms)
        den = 1
        exps = [Fraction(e) for e, _ in items]
        for e in exps:
            den = _lcm(den, e.denominator)
        acc: dict[int, GaussRat] = {}
        for e, (_, c) in zip(exps, items):
            n = int(e * den)
            acc[n] = acc.get(n, ZERO) + GaussRat.coerce(c)
        return cls(acc, den, prec)

    @classmethod
    def constant(cls, c, prec=INF) -> "QSeries":
        return cls({0: c}, 1, prec)

    @classmethod
    def monomial(cls, exponent, c=1, prec=INF) -> "QSeries":
        return cls.from_terms({Fraction(exponent): c}, prec)

    @classmethod
    def zero(cls, prec=INF) -> "QSeries":
        return cls({}, 1, prec)

    # -- inspection -----------------------------------------------------------

    def items(self) -> list[tuple[Fraction, GaussRat]]:
        return [(Fraction(n, self.den), c) for n, c in sorted(self.coeffs.items())]

    def exponents(self) -> list[Fraction]:
        return [Fraction(n, self.den) for n in sorted(self.coeffs)]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.items())

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, e) -> GaussRat:
        e = Fraction(e)
        if e >= self.prec:
            raise IndexError(f"q^{e} lies beyond precision {self.prec}")
        n = e * self.den
        if n.denominator != 1:
            return ZERO
        return self.coeffs.get(int(n), ZERO)

    def valuation(self):
        """Smallest exponent present; ``prec`` for the zero series."""
        if not self.coeffs:
            return self.prec
        return Fraction(min(self.coeffs), self.den)

    def leading(self) -> tuple[Fraction, GaussRat]:
        if not self.coeffs:
            raise ValueError("zero series has no leading term")
        n = min(self.coeffs)
        return Fraction(n, self.den), self.coeffs[n]

    def rescaled(self, den: int) -> dict[int, GaussRat]:
        """Coefficient map re-expressed over exponent denominator ``den``."""
        f, r = divmod(den, self.den)
        if r:
            raise ValueError(f"{den} is not a multiple of {self.den}")
        if f == 1:
            return dict(self.coeffs)
        return {n * f: c for n, c in self.coeffs.items()}

    # -- comparison -------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.den == other.den and self.prec == other.prec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.den, self.prec, frozenset(self.coeffs.items())))

    def first_mismatch(self, other: "QSeries", prec=None):
        """First exponent below the common precision where the series differ.

        Returns ``(exponent, self_coeff, other_coeff)`` or ``None``.
        """
        bound = min(self.prec, other.prec)
        if prec is not None:
            bound = min(bound, as_prec(prec))
        d = _lcm(self.den, other.den)
        a = self.rescaled(d)
        b = other.rescaled(d)
        for n in sorted(set(a) | set(b)):
            e = Fraction(n, d)
            if e >= bound:
                break
            ca, cb = a.get(n, ZERO), b.get(n, ZERO)
            if ca != cb:
                return e, ca, cb
        return None

    def agrees(self, other: "QSeries", prec=None) -> bool:
        return self.first_mismatch(other, prec) is None

    # -- arithmetic ---------------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "QSeries":
        if isinstance(x, QSeries):
            return x
        return QSeries.constant(x)

    def __neg__(self):
        return QSeries({n: -c for n, c in self.coeffs.items()}, self.den, self.prec)

    def __pos__(self):
        return self

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        d = _lcm(self.den, other.den)
        out = self.rescaled(d)
        for n, c in other.rescaled(d).items():
            prev = out.get(n)
            out[n] = c if prev is None else prev + c
        return QSeries(out, d, min(self.prec, other.prec))

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QSeries":
        c = GaussRat.coerce(c)
        if not c:
            return QSeries.zero(self.prec if self.prec != INF else INF)
        return QSeries({n: c * v for n, v in self.coeffs.items()}, self.den, self.prec)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        va, vb = self.valuation(), other.valuation()
        prec = min(self.prec + vb, other.prec + va)
        d = _lcm(self.den, other.den)
        a = self.rescaled(d)
        b = other.rescaled(d)
        if prec != INF:
            # drop input terms that cannot reach below the result precision
            if other.coeffs:
                ca = (prec - vb) * d
                a = {n: c for n, c in a.items() if n < ca}
            if self.coeffs:
                cb = (prec - va) * d
                b = {n: c for n, c in b.items() if n < cb}
        if not a or not b:
            return QSeries.zero(prec)
        sa, sb = min(a), min(b)
        prod = gauss_poly_mul({n - sa: c for n, c in a.items()}, {n - sb: c for n, c in b.items()})
        return QSeries({n + sa + sb: c for n, c in prod.items()}, d, prec)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers are supported")
        out = QSeries.constant(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return divide(self, other)
        return self.scale(GaussRat.coerce(other).inverse())

    def __rtruediv__(self, other):
        return divide(QSeries.constant(other), self)

    def shift(self, e) -> "QSeries":
        """Multiply by ``q^e``."""
        e = Fraction(e)
        d = _lcm(self.den, e.denominator)
        k = int(e * d)
        return QSeries({n + k: c for n, c in self.rescaled(d).items()}, d, self.prec + e)

    def truncate(self, prec) -> "QSeries":
        return QSeries(self.coeffs, self.den, min(self.prec, as_prec(prec)))

    def derive(self) -> "QSeries":
        return qderive(self)

    def conj(self) -> "QSeries":
        return QSeries({n: c.conj() for n, c in self.coeffs.items()}, self.den, self.prec)

    # -- display --------------------------------------------------------------------

    def __repr__(self):
        terms = []
        for e, c in self.items()[:8]:
            if e == 0:
                terms.append(str(c))
            else:
                terms.append(f"{c}*q^{e}")
        if len(self.coeffs) > 8:
            terms.append("...")
        tail = f"O(q^{self.prec})" if self.prec != INF else None
        body = " + ".join(terms) if terms else "0"
        return f"QSeries({body}{' + ' + tail if tail else ''})"


def qderive(a: QSeries) -> QSeries:
    """The normalized derivative ``D = q d/dq``."""
    return QSeries({n: c * Fraction(n, a.den) for n, c in a.coeffs.items()}, a.den, a.prec)


def divide(a: QSeries, b: QSeries) -> QSeries:
    """Series quotient ``c`` with ``b c = a``.

    The result is determined below ``min(P_a - v_b, P_b + v_a - 2 v_b)``.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by a series with no known nonzero term")
    vb, b0 = b.leading()
    va = a.valuation()
    prec = min(a.prec - vb, b.prec + va - 2 * vb)
    if a.is_zero():
        return QSeries.zero(prec)
    if prec == INF:
        # exact quotient only when b is a monomial
        if len(b.coeffs) != 1:
            raise ValueError("exact division by a non-monomial needs a finite precision")
        inv = b0.inverse()
        return QSeries({n: c * inv for n, c in a.coeffs.items()}, a.den).shift(-vb)
    d = _lcm(a.den, b.den)
    A = a.rescaled(d)
    B = b.rescaled(d)
    nb = int(vb * d)
    tail = sorted((t - nb, c) for t, c in B.items() if t != nb)
    inv0 = b0.inverse()
    start = int(va * d) - nb
    stop = prec * d
    stop = int(stop) if stop == int(stop) else int(stop) + 1
    out: dict[int, GaussRat] = {}
    for n in range(start, stop):
        acc = A.get(n + nb, ZERO)
        for t, c in tail:
            prev = out.get(n - t)
            if prev is not None:
                acc = acc - c * prev
            elif n - t < start:
                break
        if acc:
            out[n] = acc * inv0
    return QSeries(out, d, prec)


def eta_power(n: int, prec=DEFAULT_PREC) -> QSeries:
    """``eta^n = q^(n/24) prod_k (1 - q^k)^n`` truncated below ``prec``."""
    if n < 1:
        raise ValueError("eta power must be positive")
    prec = as_prec(prec)
    lead = Fraction(n, 24)
    span = prec - lead
    N = max(0, int(span) + (0 if span == int(span) else 1))
    # P = prod (1 - q^k) through degree N-1
    P = [0] * N
    if N:
        P[0] = 1
    for k in range(1, N):
        for j in range(N - 1, k - 1, -1):
            P[j] -= P[j - k]
    # f = P^n via the power recurrence j f_j = sum_i ((n+1) i - j) p_i f_{j-i}
    f = [0] * N
    if N:
        f[0] = 1
    nz = [(i, P[i]) for i in range(1, N) if P[i]]
    for j in range(1, N):
        s = 0
        for i, p in nz:
            if i > j:
                break
            s += ((n + 1) * i - j) * p * f[j - i]
        f[j] = s // j
    return QSeries({j: c for j, c in enumerate(f) if c}, 1, span).shift(lead)

"""Classical Jacobi forms: two-variable expansions, theta functions and
development coefficients.

A :class:`JacobiExpansion` stores ``{(n, r): c}`` for the term
``c q^(n/den) zeta^r`` with ``zeta = e(z)``.  Development coefficients are
normalized by ``u = 2 pi i z``, so the ``z^nu`` Taylor coefficient divided by
``(2 pi i)^nu`` is ``sum_r c r^nu / nu!`` and stays in Q(i).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, gcd, isqrt
from typing import Optional

from ._kron import flat_mul
from .errors import DecompositionError
from .gaussian import GaussRat, ZERO
from .qseries import DEFAULT_PREC, INF, QSeries, as_prec, qderive


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class JacobiExpansion:
    """Truncated expansion ``sum c(n, r) q^(n/den) zeta^r + O(q^prec)``."""

    __slots__ = ("weight", "index", "den", "coeffs", "prec")

    def __init__(self, weight, index: int, coeffs: Optional[dict] = None, den: int = 1, prec=INF):
        if index < 0:
            raise ValueError("index must be nonnegative")
        prec = as_prec(prec)
        clean = {}
        if coeffs:
            bound = None if prec == INF else prec * den
            for (n, r), c in coeffs.items():
                if bound is not None and n >= bound:
                    continue
                c = GaussRat.coerce(c)
                if c:
                    clean[(n, r)] = c
        g = den
        for n, _ in clean:
            g = gcd(g, n)
            if g == 1:
                break
        if g > 1:
            clean = {(n // g, r): c for (n, r), c in clean.items()}
            den //= g
        self.weight = Fraction(weight) if weight is not None else None
        self.index = index
        self.den = den
        self.coeffs = clean
        self.prec = prec

    def _new(self, coeffs, den, prec, weight=None, index=None):
        return JacobiExpansion(self.weight if weight is None else weight,
                               self.index if index is None else index, coeffs, den, prec)

    # -- inspection -----------------------------------------------------------

    def items(self):
        return [((Fraction(n, self.den), r), c) for (n, r), c in sorted(self.coeffs.items())]

    def coeff(self, n, r) -> GaussRat:
        n = Fraction(n)
        if n >= self.prec:
            raise IndexError(f"q^{n} lies beyond precision {self.prec}")
        k = n * self.den
        if k.denominator != 1:
            return ZERO
        return self.coeffs.get((int(k), r), ZERO)

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self):
        if not self.coeffs:
            return self.prec
        return Fraction(min(n for n, _ in self.coeffs), self.den)

    def rescaled(self, den: int) -> dict:
        f, rem = divmod(den, self.den)
        if rem:
            raise ValueError(f"{den} is not a multiple of {self.den}")
        if f == 1:
            return dict(self.coeffs)
        return {(n * f, r): c for (n, r), c in self.coeffs.items()}

    def __eq__(self, other):
        if not isinstance(other, JacobiExpansion):
            return NotImplemented
        return (self.weight == other.weight and self.index == other.index and self.den == other.den
                and self.prec == other.prec and self.coeffs == other.coeffs)

    def first_mismatch(self, other: "JacobiExpansion", prec=None):
        """First ``((n, r), mine, theirs)`` below the common precision, or ``None``."""
        bound = min(self.prec, other.prec)
        if prec is not None:
            bound = min(bound, as_prec(prec))
        d = _lcm(self.den, other.den)
        a, b = self.rescaled(d), other.rescaled(d)
        for key in sorted(set(a) | set(b)):
            n = Fraction(key[0], d)
            if n >= bound:
                break
            ca, cb = a.get(key, ZERO), b.get(key, ZERO)
            if ca != cb:
                return (n, key[1]), ca, cb
        return None

    def agrees(self, other, prec=None) -> bool:
        return self.first_mismatch(other, prec) is None

    # -- arithmetic -------------------------------------------------------------

    def __neg__(self):
        return self._new({k: -c for k, c in self.coeffs.items()}, self.den, self.prec)

    def __add__(self, other):
        if not isinstance(other, JacobiExpansion):
            return NotImplemented
        if other.index != self.index:
            raise ValueError("cannot add Jacobi expansions of different index")
        d = _lcm(self.den, other.den)
        out = self.rescaled(d)
        for k, c in other.rescaled(d).items():
            prev = out.get(k)
            out[k] = c if prev is None else prev + c
        return self._new(out, d, min(self.prec, other.prec))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "JacobiExpansion":
        c = GaussRat.coerce(c)
        return self._new({k: c * v for k, v in self.coeffs.items()}, self.den, self.prec)

    def __mul__(self, other):
        if isinstance(other, JacobiExpansion):
            return _mul(self, other, self.index + other.index,
                        _wsum(self.weight, other.weight))
        if isinstance(other, QSeries):
            lifted = JacobiExpansion(0, 0, {(n, 0): c for n, c in other.coeffs.items()},
                                     other.den, other.prec)
            return _mul(self, lifted, self.index, self.weight)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def truncate(self, prec) -> "JacobiExpansion":
        return self._new(self.coeffs, self.den, min(self.prec, as_prec(prec)))

    def with_weight(self, weight) -> "JacobiExpansion":
        return self._new(self.coeffs, self.den, self.prec, weight=weight)

    def __repr__(self):
        return (f"JacobiExpansion(weight={self.weight}, index={self.index}, "
                f"terms={len(self.coeffs)}, prec={self.prec})")


def _wsum(a, b):
    if a is None or b is None:
        return None
    return a + b


def _mul(a: JacobiExpansion, b: JacobiExpansion, index, weight) -> JacobiExpansion:
    va, vb = a.valuation(), b.valuation()
    prec = min(a.prec + vb, b.prec + va)
    d = _lcm(a.den, b.den)
    A, B = a.rescaled(d), b.rescaled(d)
    if prec != INF:
        if B:
            A = {k: c for k, c in A.items() if k[0] < (prec - vb) * d}
        if A:
            B = {k: c for k, c in B.items() if k[0] < (prec - va) * d}
    if not A or not B:
        return JacobiExpansion(weight, index, {}, 1, prec)
    bound = None if prec == INF else prec * d
    keep = None if bound is None else (lambda key: key[0] < bound)
    return JacobiExpansion(weight, index, flat_mul(A, B, keep), d, prec)


# -- theta functions -------------------------------------------------------------


def theta_classical(m: int, mu: int, prec=DEFAULT_PREC) -> JacobiExpansion:
    """``theta_{m,mu} = sum_{r = mu (2m)} q^(r^2/4m) zeta^r`` below ``prec``."""
    if m < 1:
        raise ValueError("index must be positive")
    prec = as_prec(prec)
    den = 4 * m
    mu %= 2 * m
    bound = prec * den  # r^2 < 4 m prec
    R = isqrt(int(bound)) + 1
    coeffs = {}
    for r in range(-R - 2 * m, R + 2 * m + 1):
        if (r - mu) % (2 * m) == 0 and r * r < bound:
            coeffs[(r * r, r)] = 1
    return JacobiExpansion(Fraction(1, 2), m, coeffs, den, prec)


def _theta_sum(step: int, res: int, scale: int, prec, alternate: bool = False, shift=Fraction(0)) -> QSeries:
    """``sum_{t = res (step)} (+-1)^t q^((t+shift)^2/scale)`` by direct summation."""
    prec = as_prec(prec)
    out = {}
    R = isqrt(int(prec * scale)) + step + 2
    for t in range(-R, R + 1):
        if (t - res) % step:
            continue
        e = (t + shift) ** 2 / scale
        if e >= prec:
            continue
        c = -1 if alternate and t % 2 else 1
        out[Fraction(e)] = out.get(Fraction(e), 0) + c
    return QSeries.from_terms(out, prec)


class ThetaConstants:
    """The theta constants ``a_mu``, ``b_mu``, ``vartheta_0``, ``vartheta_1``, ``x``, ``y``, ``z``.

    Each one is an independent direct lattice summation.
    """

    def __init__(self, prec=DEFAULT_PREC):
        self.prec = as_prec(prec)
        p = self.prec
        self.a = [_theta_sum(4, mu, 8, p) for mu in range(4)]
        self.b = [_theta_sum(8, mu, 16, p) for mu in range(8)]
        self.vartheta0 = _theta_sum(1, 0, 1, p)
        self.vartheta1 = _theta_sum(2, 1, 4, p)
        self.x = _theta_sum(1, 0, 2, p)
        self.y = _theta_sum(1, 0, 2, p, alternate=True)
        self.z = _theta_sum(1, 0, 2, p, shift=Fraction(1, 2))

    def as_dict(self) -> dict[str, QSeries]:
        out = {f"a{i}": s for i, s in enumerate(self.a)}
        out.update({f"b{i}": s for i, s in enumerate(self.b)})
        out.update(vartheta0=self.vartheta0, vartheta1=self.vartheta1, x=self.x, y=self.y, z=self.z)
        return out


_TC_CACHE: dict = {}


def theta_constants(prec=DEFAULT_PREC) -> ThetaConstants:
    prec = as_prec(prec)
    tc = _TC_CACHE.get(prec)
    if tc is None:
        tc = _TC_CACHE[prec] = ThetaConstants(prec)
    return tc


# -- development coefficients ---------------------------------------------------


def taylor_psi(phi: JacobiExpansion, nu: int) -> QSeries:
    """Normalized Taylor coefficient ``psi_nu / (2 pi i)^nu = sum_r c r^nu / nu!``."""
    out: dict[int, GaussRat] = {}
    for (n, r), c in phi.coeffs.items():
        w = r ** nu
        if w:
            prev = out.get(n)
            out[n] = c * w if prev is None else prev + c * w
    f = factorial(nu)
    return QSeries({n: v / f for n, v in out.items()}, phi.den, phi.prec)


def specialize_z0(phi: JacobiExpansion) -> QSeries:
    """The map ``D_0``: set ``z = 0``."""
    return taylor_psi(phi, 0)


def dev2(phi: JacobiExpansion, weight=None) -> QSeries:
    """Normalized second development coefficient ``2k psi_2 - 2m D psi_0``.

    For ``phi`` in ``J_{k,m}`` this is a cusp form of weight ``k + 2``.
    """
    k = phi.weight if weight is None else Fraction(weight)
    if k is None:
        raise ValueError("weight is required")
    return taylor_psi(phi, 2).scale(2 * k) - qderive(specialize_z0(phi)).scale(2 * phi.index)


def Lambda(phi: JacobiExpansion, weight=None) -> tuple[QSeries, QSeries]:
    """``Lambda(m) = D_0 + (2/m) D_2`` as the pair of its two parts."""
    return specialize_z0(phi), dev2(phi, weight).scale(Fraction(2, phi.index))


# -- classical theta decomposition ---------------------------------------------------


def _min_rep(mu: int, m: int) -> int:
    mu %= 2 * m
    return mu if mu <= m else mu - 2 * m


def assemble_classical(components: dict[int, QSeries], m: int, weight=None) -> JacobiExpansion:
    """``sum_mu H_mu theta_{m,mu}``."""
    prec = INF
    for mu, h in components.items():
        r0 = _min_rep(mu, m)
        prec = min(prec, h.prec + Fraction(r0 * r0, 4 * m))
    den = 4 * m
    for h in components.values():
        den = _lcm(den, h.den)
    if prec == INF:
        raise ValueError("assembly needs at least one finite-precision component")
    out: dict = {}
    for mu, h in components.items():
        if h.is_zero():
            continue
        prod = theta_classical(m, mu, prec - h.valuation()) * h
        for key, c in prod.rescaled(den).items():
            prev = out.get(key)
            out[key] = c if prev is None else prev + c
    return JacobiExpansion(weight, m, out, den, prec)


def theta_decompose_classical(phi: JacobiExpansion) -> dict[int, QSeries]:
    """Components ``H_mu`` with ``phi = sum H_mu theta_{m,mu}``.

    Raises :class:`DecompositionError` when the coefficients do not depend
    only on ``(4mn - r^2, r mod 2m)``.
    """
    m = phi.index
    if m < 1:
        raise ValueError("index must be positive")
    P = phi.prec
    den = _lcm(phi.den, 4 * m)
    coeffs = phi.rescaled(den)
    comps: dict[int, QSeries] = {}
    for mu in range(2 * m):
        r0 = _min_rep(mu, m)
        shift = Fraction(r0 * r0, 4 * m)
        terms = {}
        for (n, r), c in coeffs.items():
            if r == r0:
                terms[Fraction(n, den) - shift] = c
        comps[mu] = QSeries.from_terms(terms, P - shift if P != INF else INF)
    rebuilt = assemble_classical(comps, m, phi.weight)
    bad = phi.first_mismatch(rebuilt)
    if bad is not None:
        (n, r), have, want = bad
        raise DecompositionError(
            f"coefficient at q^{n} zeta^{r} is {have}, theta decomposition predicts {want}",
            witness={"n": n, "r": r, "have": have, "expected": want})
    return comps

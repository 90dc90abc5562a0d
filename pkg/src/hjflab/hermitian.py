"""Hermitian Jacobi forms over Z[i].

A :class:`HermitianExpansion` stores ``{(n, a, b): c}`` for the term
``c q^(n/den) e(r z1 + conj(r) z2)`` with ``r = (a + b i)/2``.  Theta
components live in a :class:`ComponentVector` keyed by :class:`Rep`.
Taylor coefficients are normalized by ``u_j = 2 pi i z_j``:
``chi_hat_{alpha,beta} = sum c r^alpha conj(r)^beta / (alpha! beta!)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd, inf
from typing import Iterable, Optional

from ._kron import flat_mul
from .errors import DecompositionError, SupportError
from .gaussian import GaussRat, HalfLattice, Rep, ZERO, I, ONE, UNITS, lattice_points, reduce, representatives
from .jacobi import JacobiExpansion, theta_constants
from .qseries import DEFAULT_PREC, INF, QSeries, as_prec, eta_power, qderive


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _rep(s, m: int) -> Rep:
    if isinstance(s, str):
        s = Rep.parse(s)
    return reduce(tuple(s), m)


def min_norm_rep(s, m: int) -> HalfLattice:
    """A representative of the class ``s`` of smallest norm."""
    a0, b0 = _rep(s, m)
    a = a0 if a0 <= m else a0 - 2 * m
    b = b0 if b0 <= m else b0 - 2 * m
    return HalfLattice(a, b)


# -- component vectors --------------------------------------------------------


class ComponentVector:
    """Theta components ``h_s`` of a form of weight ``k`` and index ``m``.

    Missing entries are exact zeros.
    """

    __slots__ = ("weight", "index", "comps")

    def __init__(self, weight, index: int, comps: Optional[dict] = None):
        self.weight = weight
        self.index = index
        self.comps: dict[Rep, QSeries] = {}
        for s, h in (comps or {}).items():
            s = _rep(s, index)
            if s in self.comps:
                raise ValueError(f"duplicate component for class {s}")
            self.comps[s] = h

    def __getitem__(self, s) -> QSeries:
        return self.comps.get(_rep(s, self.index), QSeries.zero())

    def items(self):
        return [(s, self[s]) for s in representatives(self.index)]

    def prec(self):
        """Precision of the assembled expansion."""
        m = self.index
        p = INF
        for s, h in self.comps.items():
            p = min(p, h.prec + min_norm_rep(s, m).norm() / m)
        return p

    def first_mismatch(self, other: "ComponentVector"):
        for s in representatives(self.index):
            bad = self[s].first_mismatch(other[s])
            if bad is not None:
                return (s,) + bad
        return None

    def agrees(self, other) -> bool:
        return self.first_mismatch(other) is None

    def __repr__(self):
        nz = [str(s) for s, h in sorted(self.comps.items()) if not h.is_zero()]
        return f"ComponentVector(weight={self.weight}, index={self.index}, nonzero={nz})"


def support_violations(cv: ComponentVector) -> list[dict]:
    """Terms of ``h_s`` at ``q^e`` with ``N(s)/m + e`` not an integer."""
    m = cv.index
    out = []
    for s, h in sorted(cv.comps.items()):
        base = s.norm() / m
        for e, c in h.items():
            if (base + e).denominator != 1:
                out.append({"component": str(s), "exponent": e, "coefficient": c})
                break
    return out


def unit_law_violations(cv: ComponentVector) -> list[dict]:
    """Check ``h_{a,b} = i^k h_{-b,a}`` and ``h_{a,b} = (-1)^k h_{-a,-b}``."""
    k, m = cv.weight, cv.index
    out = []
    for eps, name in ((I, "i"), (-ONE, "-1")):
        factor = eps ** k  # h_s = eps^k h_{eps s}
        for s in representatives(m):
            t = reduce(HalfLattice(*s).times(eps.x, eps.y), m)
            bad = cv[s].first_mismatch(cv[t].scale(factor))
            if bad is not None:
                e, have, want = bad
                out.append({"law": f"unit {name}", "component": str(s), "partner": str(t),
                            "exponent": e, "have": have, "expected": want})
    return out


def fill_by_units(base: dict, weight: int, m: int) -> ComponentVector:
    """Extend components to their unit orbits via ``h_{eps s} = eps^(-k) h_s``.

    Raises :class:`SupportError` if a stabilizer forces a nonzero component
    to vanish or two given components contradict the law.
    """
    out: dict[Rep, QSeries] = {}
    for s, h in base.items():
        s = _rep(s, m)
        for eps in UNITS:
            t = reduce(HalfLattice(*s).times(eps.x, eps.y), m)
            val = h.scale(eps ** (-weight))
            prev = out.get(t)
            if prev is None:
                out[t] = val
            elif not prev.agrees(val):
                raise SupportError(f"unit law contradiction at class {t}",
                                   witness=prev.first_mismatch(val))
    return ComponentVector(weight, m, {s: h for s, h in out.items()})


# -- character relation tables for index 2 ---------------------------------------

# (target, factor, source): h_target = factor * h_source
_T = {
    1: {"zero": [(0, 0), (2, 2), (0, 2), (2, 0)],
        "rel": [((0, 3), -1, (0, 1)), ((1, 0), -I, (0, 1)), ((1, 3), -I, (1, 1)),
                ((2, 1), I, (1, 2)), ((2, 3), -I, (1, 2)), ((3, 0), I, (0, 1)),
                ((3, 1), I, (1, 1)), ((3, 2), -1, (1, 2)), ((3, 3), -1, (1, 1))]},
    2: {"zero": [(0, 0), (2, 2)],
        "rel": [((0, 3), 1, (0, 1)), ((1, 0), -1, (0, 1)), ((1, 3), -1, (1, 1)),
                ((2, 1), -1, (1, 2)), ((2, 3), -1, (1, 2)), ((3, 0), -1, (0, 1)),
                ((3, 1), -1, (1, 1)), ((3, 2), 1, (1, 2)), ((3, 3), 1, (1, 1))]},
    3: {"zero": [(0, 0), (2, 2), (0, 2), (2, 0)],
        "rel": [((0, 3), -1, (0, 1)), ((1, 0), I, (0, 1)), ((1, 3), I, (1, 1)),
                ((2, 1), -I, (1, 2)), ((2, 3), I, (1, 2)), ((3, 0), -I, (0, 1)),
                ((3, 1), -I, (1, 1)), ((3, 2), -1, (1, 2)), ((3, 3), -1, (1, 1))]},
    0: {"zero": [],
        "rel": [((0, 3), 1, (0, 1)), ((1, 0), 1, (0, 1)), ((3, 0), 1, (0, 1)),
                ((2, 0), 1, (0, 2)),
                ((2, 1), 1, (1, 2)), ((2, 3), 1, (1, 2)), ((3, 2), 1, (1, 2)),
                ((1, 3), 1, (1, 1)), ((3, 1), 1, (1, 1)), ((3, 3), 1, (1, 1))]},
}

#: relation tables of the eigenspaces of the index-2 unit action, keyed by alpha
CHARACTER_TABLES = _T


def character_relations(cv: ComponentVector, alpha: int) -> list[dict]:
    """Violations of the index-2 relation table for the character ``eta_alpha``."""
    if cv.index != 2:
        raise ValueError("character tables are defined for index 2")
    table = _T[alpha % 4]
    out = []
    for s in table["zero"]:
        h = cv[s]
        if not h.is_zero():
            e, c = h.leading()
            out.append({"relation": f"h_{s[0]},{s[1]} = 0", "exponent": e, "have": c, "expected": ZERO})
    for t, f, s in table["rel"]:
        bad = cv[t].first_mismatch(cv[s].scale(f))
        if bad is not None:
            e, have, want = bad
            out.append({"relation": f"h_{t[0]},{t[1]} = {GaussRat.coerce(f)} h_{s[0]},{s[1]}",
                        "exponent": e, "have": have, "expected": want})
    return out


@dataclass
class SymmetryReport:
    weight: int
    index: int
    support: list = field(default_factory=list)
    units: list = field(default_factory=list)
    characters: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.support and not self.units

    def character(self) -> Optional[int]:
        """The unique ``alpha`` whose relation table holds, if any."""
        good = [a for a, v in sorted(self.characters.items()) if not v]
        return good[0] if len(good) == 1 else None


def check_symmetries(cv: ComponentVector) -> SymmetryReport:
    rep = SymmetryReport(cv.weight, cv.index, support_violations(cv), unit_law_violations(cv))
    if cv.index == 2:
        rep.characters = {a: character_relations(cv, a) for a in range(4)}
    return rep


# -- expansions ------------------------------------------------------------------


class HermitianExpansion:
    """Truncated expansion ``sum c(n, r) q^(n/den) e(r z1 + conj(r) z2) + O(q^prec)``."""

    __slots__ = ("weight", "index", "den", "coeffs", "prec")

    def __init__(self, weight, index: int, coeffs: Optional[dict] = None, den: int = 1, prec=INF):
        prec = as_prec(prec)
        clean = {}
        if coeffs:
            bound = None if prec == INF else prec * den
            for key, c in coeffs.items():
                if bound is not None and key[0] >= bound:
                    continue
                c = GaussRat.coerce(c)
                if c:
                    clean[key] = c
        g = den
        for key in clean:
            g = gcd(g, key[0])
            if g == 1:
                break
        if g > 1:
            clean = {(n // g, a, b): c for (n, a, b), c in clean.items()}
            den //= g
        self.weight = weight
        self.index = index
        self.den = den
        self.coeffs = clean
        self.prec = prec

    def _new(self, coeffs, den=None, prec=None, weight=None, index=None):
        return HermitianExpansion(self.weight if weight is None else weight,
                                  self.index if index is None else index, coeffs,
                                  self.den if den is None else den,
                                  self.prec if prec is None else prec)

    def items(self):
        return [((Fraction(n, self.den), HalfLattice(a, b)), c)
                for (n, a, b), c in sorted(self.coeffs.items())]

    def coeff(self, n, r) -> GaussRat:
        n = Fraction(n)
        if n >= self.prec:
            raise IndexError(f"q^{n} lies beyond precision {self.prec}")
        k = n * self.den
        if k.denominator != 1:
            return ZERO
        a, b = r
        return self.coeffs.get((int(k), a, b), ZERO)

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self):
        if not self.coeffs:
            return self.prec
        return Fraction(min(k[0] for k in self.coeffs), self.den)

    def rescaled(self, den: int) -> dict:
        f, rem = divmod(den, self.den)
        if rem:
            raise ValueError(f"{den} is not a multiple of {self.den}")
        if f == 1:
            return dict(self.coeffs)
        return {(n * f, a, b): c for (n, a, b), c in self.coeffs.items()}

    def __eq__(self, other):
        if not isinstance(other, HermitianExpansion):
            return NotImplemented
        return (self.weight == other.weight and self.index == other.index and self.den == other.den
                and self.prec == other.prec and self.coeffs == other.coeffs)

    def first_mismatch(self, other: "HermitianExpansion", prec=None):
        bound = min(self.prec, other.prec)
        if prec is not None:
            bound = min(bound, as_prec(prec))
        d = _lcm(self.den, other.den)
        A, B = self.rescaled(d), other.rescaled(d)
        for key in sorted(set(A) | set(B)):
            n = Fraction(key[0], d)
            if n >= bound:
                break
            ca, cb = A.get(key, ZERO), B.get(key, ZERO)
            if ca != cb:
                return (n, HalfLattice(key[1], key[2])), ca, cb
        return None

    def agrees(self, other, prec=None) -> bool:
        return self.first_mismatch(other, prec) is None

    def __neg__(self):
        return self._new({k: -c for k, c in self.coeffs.items()})

    def __add__(self, other):
        if not isinstance(other, HermitianExpansion):
            return NotImplemented
        if other.index != self.index:
            raise ValueError("cannot add forms of different index")
        d = _lcm(self.den, other.den)
        out = self.rescaled(d)
        for k, c in other.rescaled(d).items():
            prev = out.get(k)
            out[k] = c if prev is None else prev + c
        return self._new(out, d, min(self.prec, other.prec))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HermitianExpansion":
        c = GaussRat.coerce(c)
        return self._new({k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, HermitianExpansion):
            return mul_hjf(self, other)
        if isinstance(other, QSeries):
            return scalar_mul(other, self)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def truncate(self, prec) -> "HermitianExpansion":
        return self._new(self.coeffs, prec=min(self.prec, as_prec(prec)))

    def __repr__(self):
        return (f"HermitianExpansion(weight={self.weight}, index={self.index}, "
                f"terms={len(self.coeffs)}, prec={self.prec})")


def _hmul(A: dict, B: dict, da: int, db: int, pa, pb, va, vb, weight, index) -> HermitianExpansion:
    prec = min(pa + vb, pb + va)
    d = _lcm(da, db)
    fa, fb = d // da, d // db
    A = {(n * fa, a, b): c for (n, a, b), c in A.items()}
    B = {(n * fb, a, b): c for (n, a, b), c in B.items()}
    if prec != INF:
        if B:
            A = {k: c for k, c in A.items() if k[0] < (prec - vb) * d}
        if A:
            B = {k: c for k, c in B.items() if k[0] < (prec - va) * d}
    if not A or not B:
        return HermitianExpansion(weight, index, {}, 1, prec)
    bound = None if prec == INF else prec * d
    keep = None if bound is None else (lambda key: key[0] < bound)
    return HermitianExpansion(weight, index, flat_mul(A, B, keep), d, prec)


def mul_hjf(phi: HermitianExpansion, psi: HermitianExpansion) -> HermitianExpansion:
    """Product of two forms: weights and indices add."""
    return _hmul(phi.coeffs, psi.coeffs, phi.den, psi.den, phi.prec, psi.prec,
                 phi.valuation(), psi.valuation(), phi.weight + psi.weight, phi.index + psi.index)


def scalar_mul(f: QSeries, phi: HermitianExpansion, weight: Optional[int] = None) -> HermitianExpansion:
    """Multiply by an elliptic modular form ``f`` of weight ``weight``."""
    w = phi.weight if weight is None else phi.weight + weight
    lifted = {(n, 0, 0): c for n, c in f.coeffs.items()}
    return _hmul(phi.coeffs, lifted, phi.den, f.den, phi.prec, f.prec,
                 phi.valuation(), f.valuation(), w, phi.index)


# -- theta series and the theta decomposition ------------------------------------


def theta_hermitian(m: int, s, prec=DEFAULT_PREC) -> HermitianExpansion:
    """``theta^H_{m,s} = sum_{r = s (m Z[i])} e(N(r) tau / m + r z1 + conj(r) z2)``."""
    if m < 1:
        raise ValueError("index must be positive")
    prec = as_prec(prec)
    s = _rep(s, m)
    den = 4 * m
    coeffs = {}
    for nrm, a, b in lattice_points(s, m, prec):
        coeffs[(int(nrm * den), a, b)] = 1
    return HermitianExpansion(1, m, coeffs, den, prec)


def assemble(cv: ComponentVector, prec=None, check: bool = True) -> HermitianExpansion:
    """``sum_s h_s theta^H_{m,s}`` to the precision the components allow."""
    m = cv.index
    if check:
        bad = support_violations(cv)
        if bad:
            raise SupportError(f"component {bad[0]['component']} violates the support law", bad[0])
    P = cv.prec()
    if prec is not None:
        P = min(P, as_prec(prec))
    if P == INF:
        raise ValueError("assembly needs a finite precision")
    den = 4 * m
    for h in cv.comps.values():
        den = _lcm(den, h.den)
    bound = P * den
    out: dict = {}
    for s, h in sorted(cv.comps.items()):
        if h.is_zero():
            continue
        terms = sorted(h.rescaled(den).items())
        v = Fraction(terms[0][0], den)
        for nrm, a, b in lattice_points(s, m, P - v):
            base = nrm * den  # integral since 4m divides den
            base = int(base)
            for e, c in terms:
                n = base + e
                if n >= bound:
                    break
                key = (n, a, b)
                prev = out.get(key)
                out[key] = c if prev is None else prev + c
    return HermitianExpansion(cv.weight, m, out, den, P)


def extract(phi: HermitianExpansion) -> ComponentVector:
    """Theta components of ``phi``; verified by re-assembly.

    Raises :class:`DecompositionError` with the first offending coefficient
    when the expansion is not of theta-decomposition shape.
    """
    m = phi.index
    P = phi.prec
    if P == INF:
        raise ValueError("extraction needs a finite precision")
    den = _lcm(phi.den, 4 * m)
    coeffs = phi.rescaled(den)
    reps = {s: min_norm_rep(s, m) for s in representatives(m)}
    by_r: dict[tuple, dict[int, GaussRat]] = {}
    wanted = {(r.a, r.b) for r in reps.values()}
    for (n, a, b), c in coeffs.items():
        if (a, b) in wanted:
            by_r.setdefault((a, b), {})[n] = c
    comps = {}
    for s, r in reps.items():
        shift = r.norm() / m
        k = int(shift * den)
        terms = {n - k: c for n, c in by_r.get((r.a, r.b), {}).items()}
        comps[s] = QSeries(terms, den, P - shift)
    cv = ComponentVector(phi.weight, m, comps)
    rebuilt = assemble(cv, P, check=False)
    bad = phi.first_mismatch(rebuilt)
    if bad is not None:
        (n, r), have, want = bad
        raise DecompositionError(
            f"coefficient at q^{n}, r=({r.a}+{r.b}i)/2 is {have}, theta decomposition predicts {want}",
            witness={"n": n, "r": (r.a, r.b), "have": have, "expected": want})
    return cv


# -- restrictions and index raising ------------------------------------------------


def parse_rho(rho) -> tuple[int, int]:
    """Accept ``1``, ``"1+i"``, ``(c, d)`` or a Gaussian integer :class:`GaussRat`."""
    if isinstance(rho, str):
        t = rho.replace(" ", "").replace("j", "i")
        table = {"1": (1, 0), "i": (0, 1), "-1": (-1, 0), "-i": (0, -1), "1+i": (1, 1),
                 "1-i": (1, -1), "-1+i": (-1, 1), "-1-i": (-1, -1), "2": (2, 0)}
        if t not in table:
            raise ValueError(f"unsupported restriction parameter {rho!r}")
        return table[t]
    if isinstance(rho, tuple):
        return int(rho[0]), int(rho[1])
    g = GaussRat.coerce(rho)
    if g.d != 1:
        raise ValueError("restriction parameter must be a Gaussian integer")
    return g.x, g.y


def restrict(phi: HermitianExpansion, rho=1) -> JacobiExpansion:
    """``pi_rho phi (tau, z) = phi(tau, rho z, conj(rho) z)``; index ``N(rho) m``."""
    c, d = parse_rho(rho)
    if c == 0 and d == 0:
        raise ValueError("restriction parameter must be nonzero")
    out: dict = {}
    for (n, a, b), v in phi.coeffs.items():
        key = (n, a * c - b * d)  # 2 Re(r rho)
        prev = out.get(key)
        out[key] = v if prev is None else prev + v
    return JacobiExpansion(phi.weight, (c * c + d * d) * phi.index, out, phi.den, phi.prec)


def u_raise(phi: HermitianExpansion) -> HermitianExpansion:
    """``U_{1+i}``: ``(z1, z2) -> ((1+i) z1, (1-i) z2)``, index ``m -> 2m``."""
    out = {(n, a - b, a + b): c for (n, a, b), c in phi.coeffs.items()}
    return HermitianExpansion(phi.weight, 2 * phi.index, out, phi.den, phi.prec)


# -- Taylor coefficients and differential operators ---------------------------------


def taylor_chi(phi: HermitianExpansion, alpha: int, beta: int) -> QSeries:
    """Normalized ``chi_hat_{alpha,beta} = sum c r^alpha conj(r)^beta / (alpha! beta!)``."""
    wcache: dict[tuple, GaussRat] = {}
    out: dict[int, GaussRat] = {}
    for (n, a, b), c in phi.coeffs.items():
        w = wcache.get((a, b))
        if w is None:
            # (a+bi)^alpha (a-bi)^beta as a Gaussian integer
            x, y = 1, 0
            for _ in range(alpha):
                x, y = x * a - y * b, x * b + y * a
            for _ in range(beta):
                x, y = x * a + y * b, y * a - x * b
            w = wcache[(a, b)] = GaussRat._raw(x, y, 1)
        if not w:
            continue
        prev = out.get(n)
        out[n] = c * w if prev is None else prev + c * w
    scale = GaussRat._raw(1, 0, 2 ** (alpha + beta) * factorial(alpha) * factorial(beta))
    return QSeries({n: v * scale for n, v in out.items()}, phi.den, phi.prec)


def xi_ops(phi: HermitianExpansion) -> tuple[QSeries, QSeries]:
    """``(xi_hat_{1,1}, xi_hat_{2,2})`` of an index-1 form."""
    k = Fraction(phi.weight)
    if k < 1:
        raise ValueError("weight must be at least 1")
    c00 = taylor_chi(phi, 0, 0)
    c11 = taylor_chi(phi, 1, 1)
    c22 = taylor_chi(phi, 2, 2)
    d00 = qderive(c00)
    xi11 = c11 - d00.scale(1 / k)
    xi22 = c22 - qderive(c11).scale(1 / (k + 2)) + qderive(d00).scale(1 / (2 * (k + 1) * (k + 2)))
    return xi11, xi22


def xi_map(phi: HermitianExpansion) -> tuple[QSeries, QSeries, QSeries]:
    """``(chi_00, xi_11, xi_22 - 6(chi_40 + chi_04))`` in normalized form."""
    xi11, xi22 = xi_ops(phi)
    corr = taylor_chi(phi, 4, 0) + taylor_chi(phi, 0, 4)
    return taylor_chi(phi, 0, 0), xi11, xi22 - corr.scale(6)


def d06(phi: HermitianExpansion) -> QSeries:
    """The normalized pure sixth coefficient ``chi_hat_{6,0}``."""
    return taylor_chi(phi, 6, 0)


def order_vanishing(phi: HermitianExpansion, depth: Optional[int] = None):
    """``min{alpha + beta : chi_hat_{alpha,beta} != 0}``; ``inf`` for the zero form.

    Scans ``alpha + beta <= 2m + 4`` unless ``depth`` is given.
    """
    if phi.is_zero():
        return inf
    cap = 2 * phi.index + 4 if depth is None else depth
    for total in range(cap + 1):
        for alpha in range(total + 1):
            if not taylor_chi(phi, alpha, total - alpha).is_zero():
                return total
    raise ValueError(f"no nonzero Taylor coefficient with alpha + beta <= {cap}")


def char_project(phi: HermitianExpansion, alpha: int) -> HermitianExpansion:
    """Projection onto the ``eta_alpha`` eigenspace of the index-2 unit action.

    ``W_mu phi (n, r) = phi(n, mu r)`` and
    ``P_alpha = (1/4) sum_x conj(eta_alpha(x)) W_{i^x}``.
    """
    if phi.index != 2:
        raise ValueError("character projection is defined for index 2")
    out: dict = {}
    for x in range(4):
        w = I ** (-alpha * x) * GaussRat._raw(1, 0, 4)
        for (n, a, b), c in phi.coeffs.items():
            # W_{i^x} phi at r takes the coefficient of phi at i^x r; build it pointwise
            ra, rb = a, b
            for _ in range(x):
                ra, rb = -rb, ra
            src = phi.coeffs.get((n, ra, rb))
            if src is None:
                continue
            key = (n, a, b)
            prev = out.get(key)
            out[key] = w * src if prev is None else prev + w * src
    return phi._new(out)


# -- constructors ---------------------------------------------------------------------


def xi_hat(prec=DEFAULT_PREC) -> QSeries:
    """``vartheta_1 D vartheta_0 - vartheta_0 D vartheta_1``."""
    tc = theta_constants(prec)
    t0, t1 = tc.vartheta0, tc.vartheta1
    return t1 * qderive(t0) - t0 * qderive(t1)


def _first_coeff(f: QSeries) -> GaussRat:
    if f.is_zero():
        raise ValueError("input series vanishes to its precision")
    return f.leading()[1]


def build_index1_2mod4(k: int, f: QSeries, prec=None, check_membership: bool = True) -> HermitianExpansion:
    """The index-1 form with ``h_{0,1} = f/xi_hat`` for ``f`` in ``S_{k+2}``, ``k = 2 (mod 4)``.

    ``f`` is first normalized by its leading coefficient.
    """
    from .modular import SpaceBasis, membership

    if k % 4 != 2:
        raise ValueError("weight must be 2 mod 4")
    P = f.prec if prec is None else min(f.prec, as_prec(prec))
    if check_membership:
        res = membership(f.truncate(P), SpaceBasis(k + 2, cusp=True, prec=P))
        if not res.ok:
            raise ValueError(f"input is not a cusp form of weight {k + 2}: {res.describe()}")
    fn = f.truncate(P).scale(_first_coeff(f).inverse())
    h = fn / xi_hat(P)
    cv = ComponentVector(k, 1, {(0, 1): h, (1, 0): -h})
    return assemble(cv)


def build_ker_pi1_2mod4(k: int, f: Optional[QSeries], g: Optional[QSeries] = None, prec=None,
                        check_membership: bool = True) -> HermitianExpansion:
    """Index-2 form in the kernel of ``pi_1`` for ``k = 2 (mod 4)``.

    With ``psi = f / eta^15`` (``f`` in ``S_{k+6}``) the components are
    ``h_{0,1} = psi a_2``, ``h_{0,2} = -2 psi a_1``, ``h_{1,2} = psi a_0`` and
    ``h_{1,1} = g / xi_hat`` (``g`` in ``S_{k+2}``); the rest follow from the
    unit law.
    """
    from .modular import SpaceBasis, membership

    if k % 4 != 2:
        raise ValueError("weight must be 2 mod 4")
    precs = [s.prec for s in (f, g) if s is not None]
    P = min(precs) if precs else DEFAULT_PREC
    if prec is not None:
        P = min(P, as_prec(prec))
    base = {}
    if f is not None and not f.is_zero():
        if check_membership:
            res = membership(f.truncate(P), SpaceBasis(k + 6, cusp=True, prec=P))
            if not res.ok:
                raise ValueError(f"f is not a cusp form of weight {k + 6}: {res.describe()}")
        tc = theta_constants(P)
        psi = f.truncate(P) / eta_power(15, P)
        base[(0, 1)] = psi * tc.a[2]
        base[(0, 2)] = (psi * tc.a[1]).scale(-2)
        base[(1, 2)] = psi * tc.a[0]
    if g is not None and not g.is_zero():
        if check_membership:
            res = membership(g.truncate(P), SpaceBasis(k + 2, cusp=True, prec=P))
            if not res.ok:
                raise ValueError(f"g is not a cusp form of weight {k + 2}: {res.describe()}")
        base[(1, 1)] = g.truncate(P) / xi_hat(P)
    if not base:
        return HermitianExpansion(k, 2, {}, 1, P)
    cv = fill_by_units(base, k, 2)
    return assemble(cv)


def named_components(name: str, prec=DEFAULT_PREC) -> ComponentVector:
    tc = theta_constants(prec)
    x, y, z = tc.x, tc.y, tc.z
    if name == "phi41":
        x6, y6, z6 = x ** 6, y ** 6, z ** 6
        return ComponentVector(4, 1, {(0, 0): x6 + y6, (1, 0): z6, (0, 1): z6, (1, 1): x6 - y6})
    if name == "phi42":
        x6, y6, z6 = x ** 6, y ** 6, z ** 6
        comps = {(0, 0): x6 + y6, (2, 2): x6 + y6, (0, 2): x6 - y6, (2, 0): x6 - y6}
        for s in ((1, 1), (3, 3), (1, 3), (3, 1)):
            comps[s] = z6
        return ComponentVector(4, 2, comps)
    if name == "phi42tilde":
        x3, y3, z3 = x ** 3, y ** 3, z ** 3
        t = (x3 * y3).scale(2)
        u, v = z3 * (x3 - y3), z3 * (x3 + y3)
        comps = {(0, 0): t, (2, 2): -t}
        for s in ((0, 1), (1, 0), (0, 3), (3, 0)):
            comps[s] = u
        for s in ((1, 2), (2, 1), (2, 3), (3, 2)):
            comps[s] = v
        return ComponentVector(4, 2, comps)
    raise ValueError(f"unknown form {name!r}")


NAMED_FORMS = ("phi41", "phi42", "phi42tilde")


def build_named(name: str, prec=DEFAULT_PREC) -> HermitianExpansion:
    """``phi41`` from its components, ``phi42 = U_{1+i} phi41``, ``phi42tilde`` from its components."""
    prec = as_prec(prec)
    if name == "phi42":
        return u_raise(build_named("phi41", prec))
    return assemble(named_components(name, prec), prec)

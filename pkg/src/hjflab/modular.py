"""Elliptic modular forms for SL(2, Z), bases, membership and dimension audits."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil, comb
from typing import Optional

from .errors import InsufficientPrecision, UnsupportedRange
from .gaussian import GaussRat, ZERO
from .qseries import DEFAULT_PREC, INF, QSeries, as_prec, eta_power


# -- Eisenstein series and the discriminant -------------------------------------


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli numbers with ``B_1 = -1/2``."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return B[n]


def _int_bound(prec) -> int:
    """Number of integral exponents below ``prec``."""
    p = as_prec(prec)
    n = int(p)
    return n if n == p else n + 1


def eisenstein(k: int, prec=DEFAULT_PREC) -> QSeries:
    """``E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n`` for even ``k >= 4``."""
    if k < 4 or k % 2:
        raise ValueError("Eisenstein series need even weight >= 4")
    N = _int_bound(prec)
    sigma = [0] * N
    for d in range(1, N):
        p = d ** (k - 1)
        for n in range(d, N, d):
            sigma[n] += p
    c = -Fraction(2 * k) / bernoulli(k)
    coeffs = {0: 1} if N else {}
    for n in range(1, N):
        coeffs[n] = c * sigma[n]
    return QSeries(coeffs, 1, prec)


def delta(prec=DEFAULT_PREC) -> QSeries:
    """The discriminant ``eta^24``."""
    return eta_power(24, prec)


# -- dimensions --------------------------------------------------------------------


def dim_M(k: int) -> int:
    if k < 0 or k % 2:
        return 0
    return k // 12 if k % 12 == 2 else k // 12 + 1


def dim_S(k: int) -> int:
    return max(dim_M(k) - 1, 0) if k != 0 else 0


def dim_J(k: int, m: int) -> int:
    """Classical ``dim J_{k,m}`` for ``1 <= m <= 4`` (Eichler-Zagier closed form)."""
    if not 1 <= m <= 4:
        raise UnsupportedRange(f"classical index {m} outside 1..4")
    if k < 1:
        raise UnsupportedRange(f"weight {k} must be positive")
    if k % 2 == 0:
        return sum(dim_M(k + 2 * j) - ceil(Fraction(j * j, 4 * m)) for j in range(m + 1))
    return max(0, sum(dim_M(k + 2 * j - 1) - ceil(Fraction(j * j, 4 * m)) for j in range(1, m)))


def dim_hjf1(k: int) -> int:
    """``dim J_{k,1}(Z[i])`` for even ``k``."""
    if k < 2 or k % 2:
        raise UnsupportedRange(f"no quoted index-1 dimension for weight {k}")
    if k % 4 == 2:
        return 0 if k == 2 else (k + 2) // 12
    return k // 4


def dim_hjf2(k: int) -> int:
    """``dim J_{k,2}(Z[i])`` by weight class mod 4."""
    if k < 1:
        raise UnsupportedRange(f"weight {k} must be positive")
    r = k % 4
    if r == 2:
        return (k - 1) // 3
    if r == 3:
        return (k - 3) // 4
    if r == 1:
        return 0 if k == 1 else (k - 5) // 4
    return k // 2


#: dimension tags understood by :func:`dims`
SPACES = ("M", "S", "J1", "J2", "J3", "J4", "hjf1", "hjf2")


def dims(k: int, space: str) -> int:
    if space == "M":
        return dim_M(k)
    if space == "S":
        return dim_S(k)
    if space.startswith("J") and space[1:].isdigit():
        return dim_J(k, int(space[1:]))
    if space == "hjf1":
        return dim_hjf1(k)
    if space == "hjf2":
        return dim_hjf2(k)
    raise ValueError(f"unknown space tag {space!r}; expected one of {', '.join(SPACES)}")


def rank(n: int, m: int) -> int:
    """Rank of ``J_{n*,m}(Z[i])`` over ``M_*``."""
    if m < 1:
        raise ValueError("index must be positive")
    if n == 4:
        return m * m + 2
    if n == 2:
        return 2 * (m * m + 1)
    raise ValueError("n must be 2 or 4")


# -- bases and membership ------------------------------------------------------------


def _monomials(k: int, cusp: bool) -> list[tuple[int, int, int]]:
    """``(j, a, b)`` for ``Delta^j E4^a E6^b`` with ``b`` in ``{0, 1}``, by ``j``."""
    out = []
    start = 1 if cusp else 0
    for j in range(start, dim_M(k)):
        w = k - 12 * j
        b = 1 if w % 4 == 2 else 0
        a = (w - 6 * b) // 4
        out.append((j, a, b))
    return out


class SpaceBasis:
    """Echelon basis ``Delta^j E4^a E6^b`` of ``M_k`` or ``S_k``; leading term ``q^j``."""

    def __init__(self, k: int, cusp: bool = False, prec=DEFAULT_PREC):
        self.weight = k
        self.cusp = cusp
        self.prec = as_prec(prec)
        self.monomials = _monomials(k, cusp) if k >= 0 and k % 2 == 0 else []
        E4, E6, D = eisenstein(4, self.prec), eisenstein(6, self.prec), delta(self.prec)
        self.basis = [D ** j * E4 ** a * E6 ** b for j, a, b in self.monomials]

    def __len__(self):
        return len(self.basis)

    def labels(self) -> list[str]:
        out = []
        for j, a, b in self.monomials:
            parts = [p for p, e in (("Delta", j), ("E4", a), ("E6", b)) if e]
            out.append("*".join(f"{p}^{e}" if e > 1 else p for p, e in zip(
                parts, [e for e in (j, a, b) if e])) or "1")
        return out


@dataclass
class MembershipResult:
    coords: Optional[list] = None
    residual_exponent: Optional[Fraction] = None
    residual_coeff: Optional[GaussRat] = None

    @property
    def ok(self) -> bool:
        return self.coords is not None

    def describe(self) -> str:
        if self.ok:
            return "coordinates " + ", ".join(str(c) for c in self.coords)
        return f"nonzero residual {self.residual_coeff} at q^{self.residual_exponent}"


def sturm_margin(k: int) -> int:
    return k // 12 + 2


def membership(f: QSeries, space: SpaceBasis) -> MembershipResult:
    """Coordinates of ``f`` in the echelon basis, or the first residual term."""
    need = len(space) + sturm_margin(space.weight)
    if f.prec < need:
        raise InsufficientPrecision(f"membership in weight {space.weight} needs precision >= {need}, got {f.prec}")
    r = f.truncate(space.prec)
    coords = []
    for (j, _, _), g in zip(space.monomials, space.basis):
        c = r[j] if j < r.prec else ZERO
        coords.append(c)
        if c:
            r = r - g.scale(c)
    if not r.is_zero():
        e, c = r.leading()
        return MembershipResult(None, e, c)
    return MembershipResult(coords)


# -- exact-sequence audits --------------------------------------------------------------


@dataclass
class AuditReport:
    audit: str
    k: int
    terms: list = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(v for _, v in self.terms)

    @property
    def passed(self) -> bool:
        return self.total == 0

    def to_json(self) -> dict:
        return {"audit": self.audit, "k": self.k,
                "terms": [[label, v] for label, v in self.terms],
                "sum": self.total, "pass": self.passed}


#: theorem tag -> (weight residue mod 4, minimal weight)
AUDITS = {
    "thm3.1": (2, 2),
    "thm3.6": (0, 4),
    "cor3.7": (0, 4),
    "thm4.4": (2, 2),
    "thm4.8": (0, 4),
    "prop4.3": (3, 3),
    "prop4.6": (1, 1),
    "sect6": (0, 12),
}


def sequence_audit(tag: str, k: int) -> AuditReport:
    """Alternating dimension sum of a tagged exact sequence (zero when exact)."""
    if tag not in AUDITS:
        raise ValueError(f"unknown audit {tag!r}")
    res, kmin = AUDITS[tag]
    if k % 4 != res or k < kmin:
        raise UnsupportedRange(f"audit {tag} needs k = {res} (mod 4), k >= {kmin}")
    t: list[tuple[str, int]]
    if tag == "thm3.1":
        t = [("dim J_k,1(O)", dim_hjf1(k)), ("-dim J_k,1", -dim_J(k, 1)), ("dim M_k", dim_M(k))]
    elif tag == "thm3.6":
        t = [("dim S_k+4", dim_S(k + 4)), ("-dim J_k,1(O)", -dim_hjf1(k)), ("dim J_k,1", dim_J(k, 1))]
    elif tag == "cor3.7":
        t = [("dim J_k,2", dim_J(k, 2)), ("-dim J_k,1(O)", -dim_hjf1(k))]
    elif tag == "thm4.4":
        t = [("dim S_k+2", dim_S(k + 2)), ("dim S_k+6", dim_S(k + 6)), ("-dim J_k,2(O)", -dim_hjf2(k)),
             ("dim J_k,2", dim_J(k, 2)), ("-dim M_k", -dim_M(k))]
    elif tag == "thm4.8":
        t = [("dim J_k,2(O)", dim_hjf2(k)), ("-dim J_k,2", -dim_J(k, 2)), ("-dim J_k,4", -dim_J(k, 4)),
             ("dim M_k", dim_M(k)), ("dim S_k+2", dim_S(k + 2))]
    elif tag in ("prop4.3", "prop4.6"):
        t = [("dim J_k,2(O)", dim_hjf2(k)), ("-dim J_k,4", -dim_J(k, 4))]
    else:
        t = [("k/2", k // 2), ("-2 dim M_k-4", -2 * dim_M(k - 4)), ("-2 dim M_k-8", -2 * dim_M(k - 8)),
             ("-2 dim M_k-12", -2 * dim_M(k - 12))]
    return AuditReport(tag, k, t)


@dataclass
class RankAudit:
    index: int
    residue: int
    coefficient: int
    excess: dict
    period: int
    bounded: bool


def rank_audit(m: int, residue: int, kmax: int = 200, period: int = 12) -> RankAudit:
    """Check ``dim J_{k,m}(O) - c dim M_k`` is eventually periodic in ``k``.

    ``c = m^2 + 2`` for ``k = 0 (mod 4)`` and ``c = m^2`` for ``k = 2 (mod 4)``.
    """
    dimf = {1: dim_hjf1, 2: dim_hjf2}[m]
    c = m * m + 2 if residue == 0 else m * m
    excess = {}
    for k in range(residue or 4, kmax + 1, 4):
        if k <= 4:
            continue
        excess[k] = dimf(k) - c * dim_M(k)
    ks = sorted(excess)
    bounded = all(excess[k] == excess[k - period] for k in ks if k - period in excess and k - period > 24)
    return RankAudit(m, residue, c, excess, period, bounded)

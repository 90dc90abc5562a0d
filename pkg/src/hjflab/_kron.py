"""Exact multiplication kernels for sparse series with Gaussian-rational coefficients.

Coefficients are cleared to integers over a common denominator and the
product is computed by Kronecker substitution: each integer polynomial is
packed into one big integer with fixed-width signed digits, the two big
integers are multiplied, and the digits are unpacked.  Multivariate keys are
flattened into one exponent by the callers.
"""

from __future__ import annotations

from math import gcd

import gmpy2

from .gaussian import GaussRat

#: below this many term pairs the schoolbook loop is faster
NAIVE_PAIRS = 4000


def _pack(poly: dict[int, int], nbytes: int, length: int) -> int:
    pos = bytearray(nbytes * length)
    neg = bytearray(nbytes * length)
    has_neg = False
    for e, v in poly.items():
        if v >= 0:
            pos[e * nbytes:(e + 1) * nbytes] = v.to_bytes(nbytes, "little")
        else:
            neg[e * nbytes:(e + 1) * nbytes] = (-v).to_bytes(nbytes, "little")
            has_neg = True
    out = int.from_bytes(pos, "little")
    if has_neg:
        out -= int.from_bytes(neg, "little")
    return out


def int_poly_mul(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    """Product of two integer polynomials with nonnegative exponents."""
    if not a or not b:
        return {}
    if len(a) * len(b) <= NAIVE_PAIRS:
        out: dict[int, int] = {}
        for ea, va in a.items():
            for eb, vb in b.items():
                e = ea + eb
                out[e] = out.get(e, 0) + va * vb
        return {e: v for e, v in out.items() if v}
    ma = max(abs(v) for v in a.values())
    mb = max(abs(v) for v in b.values())
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 1
    nbytes = (bits + 7) // 8
    bits = 8 * nbytes
    length = max(a) + max(b) + 1
    # gmpy2 multiplies multi-megabit integers far faster than CPython
    prod = gmpy2.mpz(_pack(a, nbytes, max(a) + 1)) * gmpy2.mpz(_pack(b, nbytes, max(b) + 1))
    prod = int(prod % (gmpy2.mpz(1) << (bits * length)))
    raw = prod.to_bytes(nbytes * length, "little")
    half = 1 << (bits - 1)
    full = 1 << bits
    out = {}
    carry = 0
    frm = int.from_bytes
    for i in range(length):
        d = frm(raw[i * nbytes:(i + 1) * nbytes], "little") + carry
        if d >= half:
            d -= full
            carry = 1
        else:
            carry = 0
        if d:
            out[i] = d
    return out


def _clear(poly: dict[int, GaussRat]) -> tuple[int, dict[int, int], dict[int, int]]:
    den = 1
    for c in poly.values():
        if den % c.d:
            den = den * c.d // gcd(den, c.d)
    re = {}
    im = {}
    for e, c in poly.items():
        f = den // c.d
        if c.x:
            re[e] = c.x * f
        if c.y:
            im[e] = c.y * f
    return den, re, im


def gauss_poly_mul(a: dict[int, GaussRat], b: dict[int, GaussRat]) -> dict[int, GaussRat]:
    """Product of two polynomials over Q(i) with nonnegative integer exponents."""
    if not a or not b:
        return {}
    if len(a) * len(b) <= NAIVE_PAIRS:
        out: dict[int, GaussRat] = {}
        for ea, va in a.items():
            for eb, vb in b.items():
                e = ea + eb
                prev = out.get(e)
                out[e] = va * vb if prev is None else prev + va * vb
        return {e: v for e, v in out.items() if v}
    da, ar, ai = _clear(a)
    db, br, bi = _clear(b)
    re = int_poly_mul(ar, br)
    im: dict[int, int] = {}
    if ai and bi:
        for e, v in int_poly_mul(ai, bi).items():
            re[e] = re.get(e, 0) - v
    for x, y in ((ar, bi), (ai, br)):
        if x and y:
            for e, v in int_poly_mul(x, y).items():
                im[e] = im.get(e, 0) + v
    d = da * db
    out = {}
    for e in set(re) | set(im):
        x, y = re.get(e, 0), im.get(e, 0)
        if x or y:
            out[e] = GaussRat._raw(x, y, d)
    return out


def naive_mul(a: dict, b: dict) -> dict:
    """Schoolbook product on arbitrary additive keys; reference for the kernels."""
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = ka + kb if not isinstance(ka, tuple) else tuple(x + y for x, y in zip(ka, kb))
            out[k] = out.get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}


def flat_mul(a: dict[tuple, GaussRat], b: dict[tuple, GaussRat],
             keep=None) -> dict[tuple, GaussRat]:
    """Product of sparse multivariate polynomials keyed by integer tuples.

    Keys may be negative; they are shifted and flattened with mixed radices
    wide enough that the product digits never interact.  ``keep`` filters
    output keys (used to drop terms beyond the precision bound).
    """
    if not a or not b:
        return {}
    dim = len(next(iter(a)))
    lo_a = [min(k[i] for k in a) for i in range(dim)]
    lo_b = [min(k[i] for k in b) for i in range(dim)]
    hi_a = [max(k[i] for k in a) for i in range(dim)]
    hi_b = [max(k[i] for k in b) for i in range(dim)]
    width = [hi_a[i] - lo_a[i] + hi_b[i] - lo_b[i] + 1 for i in range(dim)]
    stride = [1] * dim
    for i in range(dim - 2, -1, -1):
        stride[i] = stride[i + 1] * width[i + 1]

    def flatten(p, lo):
        return {sum((k[i] - lo[i]) * stride[i] for i in range(dim)): v for k, v in p.items()}

    prod = gauss_poly_mul(flatten(a, lo_a), flatten(b, lo_b))
    base = [lo_a[i] + lo_b[i] for i in range(dim)]
    out = {}
    for idx, v in prod.items():
        key = []
        for i in range(dim):
            q, idx = divmod(idx, stride[i])
            key.append(q + base[i])
        key = tuple(key)
        if keep is None or keep(key):
            out[key] = v
    return out

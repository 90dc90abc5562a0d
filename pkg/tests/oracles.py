"""Independent reference computations used by the tests.

Everything here works from first principles with Fractions and plain loops,
sharing no code with the package.
"""

from fractions import Fraction
from math import isqrt


def pentagonal_euler(N):
    """Coefficients of prod (1 - q^n) below q^N via Euler's pentagonal theorem."""
    c = [0] * N
    k = 0
    while True:
        done = True
        for j in (k, -k) if k else (0,):
            e = j * (3 * j - 1) // 2
            if e < N:
                c[e] += -1 if j % 2 else 1
                done = False
        if done and k:
            break
        k += 1
    return c


def sigma(n, s):
    return sum(d ** s for d in range(1, n + 1) if n % d == 0)


def e4(N):
    return [1] + [240 * sigma(n, 3) for n in range(1, N)]


def e6(N):
    return [1] + [-504 * sigma(n, 5) for n in range(1, N)]


def poly_mul(a, b, N):
    out = [0] * N
    for i, x in enumerate(a[:N]):
        if x:
            for j, y in enumerate(b[:N - i]):
                out[i + j] += x * y
    return out


# q^1 .. q^10 coefficients of the discriminant
RAMANUJAN_TAU = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920]


def gaussian_counts(N):
    """r_2(n): representations n = x^2 + y^2 over Z, for n < N."""
    out = [0] * N
    R = isqrt(N) + 1
    for x in range(-R, R + 1):
        for y in range(-R, R + 1):
            n = x * x + y * y
            if n < N:
                out[n] += 1
    return out


def hermitian_theta_terms(m, a, b, bound):
    """Brute-force ``{(N(r)/m, 2Re r, 2Im r)}`` for r = (a+bi)/2 mod m Z[i], N(r)/m < bound."""
    out = set()
    R = isqrt(int(4 * m * bound)) + 4 * m
    for x in range(-R, R + 1):
        if (x - a) % (2 * m):
            continue
        for y in range(-R, R + 1):
            if (y - b) % (2 * m):
                continue
            e = Fraction(x * x + y * y, 4 * m)
            if e < bound:
                out.add((e, x, y))
    return out


def classical_theta_terms(m, mu, bound):
    out = set()
    R = isqrt(int(4 * m * bound)) + 2 * m
    for r in range(-R, R + 1):
        if (r - mu) % (2 * m) == 0 and Fraction(r * r, 4 * m) < bound:
            out.add((Fraction(r * r, 4 * m), r))
    return out


def cmul(a, b):
    """Product of complex numbers given as Fraction pairs."""
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _theta_list(N8, shift2, alternate=False):
    """sum_n (+-1)^n q^((2n + shift2)^2 / 8) as a coefficient list in q^(1/8)."""
    out = [0] * N8
    R = isqrt(N8) + 3
    for n in range(-R, R + 1):
        e = (2 * n + shift2) ** 2
        if e < N8:
            out[e] += -1 if alternate and n % 2 else 1
    return out


def _power(a, k, N):
    out = [1] + [0] * (N - 1)
    for _ in range(k):
        out = poly_mul(out, a, N)
    return out


def phi41_components(N8):
    """Index-1 components of the weight-4 form, built from raw theta lists in q^(1/8)."""
    x = _theta_list(N8, 0)
    y = _theta_list(N8, 0, alternate=True)
    z = _theta_list(N8, 1)
    x6, y6, z6 = (_power(t, 6, N8) for t in (x, y, z))
    return {(0, 0): [p + q for p, q in zip(x6, y6)], (1, 1): [p - q for p, q in zip(x6, y6)],
            (1, 0): z6, (0, 1): z6}


def phi41_coeff(comps, n8, a, b):
    """Coefficient of q^(n8/8) at r = (a + b i)/2 of sum h_s theta_s, index 1."""
    e = n8 - 2 * (a * a + b * b)  # q-exponent of h_s in eighths
    if e < 0:
        return 0
    return comps[(a % 2, b % 2)][e]

"""Shared independent oracles for the test suite.

These deliberately avoid the production code paths they are used to
check: Pell search by direct enumeration, continued fractions via
high-precision rational arithmetic, naive matrix products.
"""

from fractions import Fraction
from math import isqrt

import pytest


def pell_fundamental_oracle(d: int):
    """Brute-force search for the fundamental unit of Z[omega_d].

    Scans y = 1, 2, 3, ... and checks whether d*y^2 +- 4 (maximal-order
    case, d = 1 mod 4) or d*y^2 +- 1 is a perfect square.  Returns
    (x, y, norm) in omega-coordinates.
    """
    y = 0
    while True:
        y += 1
        if d % 4 == 1:
            # norm -1 candidate has the smaller s, so it comes first
            for delta, norm in ((-4, -1), (4, 1)):
                s2 = d * y * y + delta
                if s2 >= 0:
                    s = isqrt(s2)
                    if s * s == s2 and (s - y) % 2 == 0:
                        return ((s - y) // 2, y, norm)
        else:
            for delta, norm in ((-1, -1), (1, 1)):
                x2 = d * y * y + delta
                if x2 >= 0:
                    x = isqrt(x2)
                    if x * x == x2:
                        return (x, y, norm)


def sqrt_approx(d: int, bits: int = 120) -> Fraction:
    """Rational approximation of sqrt(d) with error below 2**-(bits-2)."""
    scale = 1 << bits
    return Fraction(isqrt(d * scale * scale), scale)


def cf_quotients_oracle(p: int, d: int, q: int, count: int):
    """First `count` partial quotients of (p + sqrt(d))/q.

    Uses exact rational arithmetic on a high-precision approximation of
    sqrt(d); valid while the approximation error cannot flip a floor,
    which holds comfortably for the desk-scale inputs used in tests.
    """
    x = (p + sqrt_approx(d)) / q
    out = []
    for _ in range(count):
        a = x.numerator // x.denominator
        out.append(a)
        x = 1 / (x - a)
    return out


def naive_matmul(a, b):
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]


def naive_matpow(m, k):
    n = len(m)
    result = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(k):
        result = naive_matmul(result, m)
    return result


@pytest.fixture
def golden():
    from rmzeta.quadratic import QuadraticIrrational

    return QuadraticIrrational(1, 5, 2)

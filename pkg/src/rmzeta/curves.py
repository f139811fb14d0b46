"""Elliptic curves over prime fields and their small extensions.

Short Weierstrass models y^2 = x^3 + ax + b over Z.  Point counts are
exact enumerations (a residue-count table over F_p, or an explicit
polynomial model of F_{p^n}); extension counts also come from the
standard trace recursion so the two routes can check each other.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd

import numpy as np

from .errors import (
    BadReductionError,
    CatalogError,
    InternalCheckError,
    InvalidInputError,
    NotPrimeError,
    SingularCurveError,
    UnsupportedPrimeError,
)
from .kgroups import FiniteAbelianGroup

__all__ = [
    "WeierstrassCurve",
    "CMCatalogEntry",
    "ReductionType",
    "BadReductionWarning",
    "is_prime",
    "primes_in",
    "count_points",
    "trace_of_frobenius",
    "count_points_ext",
    "count_points_ext_bruteforce",
    "group_structure",
    "reduction_type",
    "j_invariant",
    "cm_catalog",
    "cm_lookup",
]

BRUTEFORCE_FIELD_LIMIT = 10**4

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for anything we ever see."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_in(lo: int, hi: int):
    """Primes p with lo <= p <= hi, ascending."""
    return [p for p in range(max(lo, 2), hi + 1) if is_prime(p)]


class BadReductionWarning(UserWarning):
    """Point count requested at a prime dividing the discriminant."""


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 = x^3 + a*x + b over Z, nonsingular over Q."""

    a: int
    b: int
    label: str | None = None

    def __post_init__(self):
        if self.discriminant == 0:
            raise SingularCurveError(
                f"discriminant vanishes for a={self.a}, b={self.b}"
            )

    @property
    def discriminant(self) -> int:
        return -16 * (4 * self.a**3 + 27 * self.b**2)

    def has_good_reduction(self, p: int) -> bool:
        return self.discriminant % p != 0

    def to_json_dict(self) -> dict:
        out = {"a": self.a, "b": self.b}
        if self.label is not None:
            out["label"] = self.label
        return out

    def __str__(self):
        return f"y^2 = x^3 + {self.a}x + {self.b}"


@dataclass(frozen=True)
class ReductionType:
    """Reduction behaviour at a prime and the bad-factor coefficient.

    alpha is +1 for split multiplicative, -1 for non-split, 0 for good
    or additive reduction.
    """

    tag: str
    alpha: int

    def to_json_dict(self) -> dict:
        return {"tag": self.tag, "alpha": self.alpha}


GOOD = ReductionType("good", 0)
SPLIT = ReductionType("split_multiplicative", 1)
NONSPLIT = ReductionType("nonsplit_multiplicative", -1)
ADDITIVE = ReductionType("additive", 0)

# numpy path stays exact as long as intermediates fit int64; beyond this
# the pure-Python loop takes over.
_NUMPY_PRIME_LIMIT = 2**21


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")


def count_points(curve: WeierstrassCurve, p: int) -> int:
    """#E(F_p) by exact enumeration, including the point at infinity.

    Counts solutions of y^2 = x^3 + ax + b via a table of square
    multiplicities, which realizes 1 + sum over x of (1 + chi(f(x))).
    Runs at bad primes too, with a warning, where the result is just the
    solution count of the reduced (singular) model.
    """
    _require_prime(p)
    if not curve.has_good_reduction(p):
        warnings.warn(
            f"bad reduction at {p}; counting points of the singular model",
            BadReductionWarning,
            stacklevel=2,
        )
    a, b = curve.a % p, curve.b % p
    if p == 2:
        return 1 + sum(
            1
            for x in range(2)
            for y in range(2)
            if (y * y - (x * x * x + a * x + b)) % 2 == 0
        )
    if p <= _NUMPY_PRIME_LIMIT:
        xs = np.arange(p, dtype=np.int64)
        sq = np.bincount((xs * xs % p).astype(np.int64), minlength=p)
        fx = ((xs * xs % p) * xs + a * xs + b) % p
        return 1 + int(sq[fx].sum())
    sq = [0] * p
    for y in range(p):
        sq[y * y % p] += 1
    return 1 + sum(sq[(x * x % p * x + a * x + b) % p] for x in range(p))


def trace_of_frobenius(curve: WeierstrassCurve, p: int) -> int:
    """a_p = p + 1 - #E(F_p); requires good reduction.

    The Hasse bound a_p^2 <= 4p is asserted after counting; a violation
    would mean the enumeration itself is broken.
    """
    _require_prime(p)
    if not curve.has_good_reduction(p):
        raise BadReductionError(
            f"trace undefined at bad prime {p}; use reduction_type"
        )
    a_p = p + 1 - count_points(curve, p)
    if a_p * a_p > 4 * p:
        raise InternalCheckError(f"Hasse bound violated at p={p}: a_p={a_p}")
    return a_p


def _trace_sequence(a_p: int, p: int, n: int):
    """t_k = a_p*t_(k-1) - p*t_(k-2) with t_0 = 2, t_1 = a_p."""
    t_prev, t = 2, a_p
    if n == 0:
        return 2
    for _ in range(n - 1):
        t_prev, t = t, a_p * t - p * t_prev
    return t


def count_points_ext(curve: WeierstrassCurve, p: int, n: int) -> int:
    """#E(F_{p^n}) from the trace recursion, exact integers throughout."""
    if n < 1:
        raise InvalidInputError("n must be >= 1")
    a_p = trace_of_frobenius(curve, p)
    return 1 + p**n - _trace_sequence(a_p, p, n)


# ---------------------------------------------------------------------------
# Explicit finite field F_{p^n} for the brute-force oracle.


def _poly_mod(poly, mod, p):
    """Remainder of poly divided by monic mod, coefficients low-first."""
    poly = list(poly)
    dm = len(mod) - 1
    for i in range(len(poly) - 1, dm - 1, -1):
        c = poly[i] % p
        if c:
            for j in range(dm + 1):
                poly[i - dm + j] = (poly[i - dm + j] - c * mod[j]) % p
        poly[i] = 0
    return [c % p for c in poly[:dm]]


def _poly_divides(g, f, p):
    """Does monic g divide f over F_p?"""
    rem = _poly_mod(f, g, p)
    return all(c % p == 0 for c in rem)


def _find_irreducible(p: int, n: int):
    """Lexicographically first monic irreducible of degree n over F_p.

    Trial division by every monic polynomial of degree up to n//2; a
    reducible polynomial always has such a factor.
    """
    for tail in product(range(p), repeat=n):
        f = list(tail) + [1]
        if f[0] == 0:
            continue
        reducible = False
        for deg in range(1, n // 2 + 1):
            for gt in product(range(p), repeat=deg):
                g = list(gt) + [1]
                if _poly_divides(g, f, p):
                    reducible = True
                    break
            if reducible:
                break
        if not reducible:
            return f
    raise InternalCheckError(f"no irreducible polynomial of degree {n} over F_{p}")


def count_points_ext_bruteforce(curve: WeierstrassCurve, p: int, n: int) -> int:
    """#E(F_{p^n}) by enumerating an explicit model of the field.

    Elements are coefficient tuples modulo a monic irreducible found by
    exhaustive search.  Only intended for p^n <= 10^4.
    """
    _require_prime(p)
    if n < 1:
        raise InvalidInputError("n must be >= 1")
    if p**n > BRUTEFORCE_FIELD_LIMIT:
        raise InvalidInputError(f"p^n exceeds the brute-force limit {BRUTEFORCE_FIELD_LIMIT}")
    a, b = curve.a % p, curve.b % p
    if n == 1:
        sq = [0] * p
        for y in range(p):
            sq[y * y % p] += 1
        return 1 + sum(sq[(x * x % p * x + a * x + b) % p] for x in range(p))

    mod = _find_irreducible(p, n)

    def mul(u, v):
        prod_coeffs = [0] * (2 * n - 1)
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    prod_coeffs[i + j] += ui * vj
        return tuple(_poly_mod(prod_coeffs, mod, p))

    elements = [tuple(t) for t in product(range(p), repeat=n)]
    squares = {}
    for y in elements:
        y2 = mul(y, y)
        squares[y2] = squares.get(y2, 0) + 1
    count = 1
    b_el = (b,) + (0,) * (n - 1)
    for x in elements:
        x3 = mul(mul(x, x), x)
        fx = tuple((x3[i] + a * x[i] + b_el[i]) % p for i in range(n))
        count += squares.get(fx, 0)
    return count


# ---------------------------------------------------------------------------
# Group law and structure.


def _ec_add(pt1, pt2, a, p):
    if pt1 is None:
        return pt2
    if pt2 is None:
        return pt1
    x1, y1 = pt1
    x2, y2 = pt2
    if x1 == x2 and (y1 + y2) % p == 0:
        return None
    if pt1 == pt2:
        lam = (3 * x1 * x1 + a) * pow(2 * y1, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (lam * lam - x1 - x2) % p
    y3 = (lam * (x1 - x3) - y1) % p
    return (x3, y3)


def _ec_mul(k, pt, a, p):
    result = None
    addend = pt
    while k:
        if k & 1:
            result = _ec_add(result, addend, a, p)
        addend = _ec_add(addend, addend, a, p)
        k >>= 1
    return result


def _factorize(n: int) -> dict:
    out = {}
    m = n
    f = 2
    while f * f <= m:
        while m % f == 0:
            out[f] = out.get(f, 0) + 1
            m //= f
        f += 1 if f == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def _point_order(pt, group_order, prime_factors, a, p):
    order = group_order
    for q in prime_factors:
        while order % q == 0 and _ec_mul(order // q, pt, a, p) is None:
            order //= q
    return order


def enumerate_points(curve: WeierstrassCurve, p: int):
    """All affine points of the reduced curve (infinity excluded)."""
    a, b = curve.a % p, curve.b % p
    roots = {}
    for y in range(p):
        roots.setdefault(y * y % p, []).append(y)
    pts = []
    for x in range(p):
        fx = (x * x % p * x + a * x + b) % p
        for y in roots.get(fx, ()):
            pts.append((x, y))
    return pts


def group_structure(curve: WeierstrassCurve, p: int) -> FiniteAbelianGroup:
    """Invariant factors of E(F_p) from point orders.

    The group has rank at most 2, so the order N and the exponent
    (lcm of point orders) determine it: Z_(N/e) x Z_e.
    """
    _require_prime(p)
    if p > BRUTEFORCE_FIELD_LIMIT:
        raise InvalidInputError("prime too large for point-order enumeration")
    if not curve.has_good_reduction(p):
        raise BadReductionError(f"group structure undefined at bad prime {p}")
    a = curve.a % p
    pts = enumerate_points(curve, p)
    n_total = len(pts) + 1
    if n_total == 1:
        return FiniteAbelianGroup(0, ())
    factors = list(_factorize(n_total))
    exponent = 1
    for pt in pts:
        o = _point_order(pt, n_total, factors, a, p)
        exponent = exponent * o // gcd(exponent, o)
        if exponent == n_total:
            break
    d1, d2 = n_total // exponent, exponent
    if d1 * d2 != n_total or d2 % d1 != 0:
        raise InternalCheckError("point orders inconsistent with group order")
    return FiniteAbelianGroup.from_invariant_factors((d1, d2))


def reduction_type(curve: WeierstrassCurve, p: int) -> ReductionType:
    """Classify reduction at p from the singular point of the model.

    Good reduction is decided by p not dividing the discriminant for any
    prime; the nodal/cuspidal tangent test needs p > 3, so bad reduction
    at 2 or 3 is reported as unsupported.
    """
    _require_prime(p)
    if curve.has_good_reduction(p):
        return GOOD
    if p <= 3:
        raise UnsupportedPrimeError(
            f"minimal-model analysis unsupported at bad prime {p}"
        )
    a, b = curve.a % p, curve.b % p
    if a == 0:
        # 4a^3 + 27b^2 = 0 mod p forces b = 0: the cubic is x^3, a cusp.
        return ADDITIVE
    x0 = -3 * b * pow(2 * a, -1, p) % p
    if (x0 * x0 % p * x0 + a * x0 + b) % p or (3 * x0 * x0 + a) % p:
        raise InternalCheckError("singular point location failed")
    slope_sq = 3 * x0 % p
    if slope_sq == 0:
        return ADDITIVE
    chi = pow(slope_sq, (p - 1) // 2, p)
    return SPLIT if chi == 1 else NONSPLIT


def j_invariant(curve: WeierstrassCurve) -> Fraction:
    """j = 1728 * 4a^3 / (4a^3 + 27b^2), exact."""
    return Fraction(1728 * 4 * curve.a**3, 4 * curve.a**3 + 27 * curve.b**2)


@dataclass(frozen=True)
class CMCatalogEntry:
    """Class-number-one discriminant with an integral model of its curve."""

    disc_k: int
    j: int
    curve: WeierstrassCurve


_CM_MODELS = (
    (-3, 0, 0, 1),
    (-4, 1728, 1, 0),
    (-7, -3375, -35, -98),
    (-8, 8000, -30, 56),
    (-11, -32768, -264, 1694),
    (-19, -884736, -152, 722),
    (-43, -884736000, -3440, 77658),
    (-67, -147197952000, -29480, 1948226),
    (-163, -262537412640768000, -34790720, 78984748304),
)


@lru_cache(maxsize=1)
def cm_catalog() -> tuple:
    """The nine class-number-one entries, j re-verified at load."""
    entries = []
    for disc, j, a, b in _CM_MODELS:
        curve = WeierstrassCurve(a, b, label=f"cm:{disc}")
        if j_invariant(curve) != j:
            raise InternalCheckError(f"catalog model for disc {disc} has wrong j")
        entries.append(CMCatalogEntry(disc, j, curve))
    return tuple(entries)


def cm_lookup(disc: int) -> CMCatalogEntry:
    for entry in cm_catalog():
        if entry.disc_k == disc:
            return entry
    raise CatalogError(f"discriminant {disc} is not class number one")

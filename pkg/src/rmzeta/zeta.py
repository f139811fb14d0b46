"""Local factors for both sides of the comparison.

The torus side attaches to a hyperbolic 2x2 matrix A and a prime p the
degree-two polynomial 1 - tr(A^p)T + pT^2 (good primes) or 1 - alpha*T
(bad primes, alpha fed from the paired curve).  The curve side is the
classical local L-polynomial from point counts.  Exponential generating
series are kept as exact rational truncations so the closed forms can
be checked coefficient by coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curves import WeierstrassCurve, reduction_type, trace_of_frobenius
from .errors import (
    EulerProductPoleError,
    InternalCheckError,
    InvalidInputError,
)
from .intmat import IntMatrix, char_poly, multiply, power
from .kgroups import k0_order, trusted

__all__ = [
    "LocalFactor",
    "TruncatedSeries",
    "EulerProductResult",
    "build_Lp",
    "lp_level_matrix",
    "is_bad_prime_nt",
    "zeta_local_nt_series",
    "fixed_point_series",
    "zeta_local_nt_closed",
    "local_l_factor_curve",
    "euler_product_truncated",
]

DEFAULT_TRUNCATION = 8


@dataclass(frozen=True)
class LocalFactor:
    """Euler factor 1 + c1*T + c2*T^2 at a prime, for one side."""

    prime: int
    c1: int
    c2: int
    side: str
    status: str

    def __post_init__(self):
        if self.side not in ("nc_torus", "curve"):
            raise InvalidInputError(f"unknown side {self.side!r}")
        if self.status == "bad":
            if self.c2 != 0 or self.c1 not in (-1, 0, 1):
                raise InvalidInputError("bad factor must be 1 + c1*T with c1 in {-1,0,1}")
        elif self.status == "good":
            if self.c2 != self.prime:
                raise InvalidInputError("good factor must have c2 = p")
            if self.side == "curve" and self.c1 * self.c1 > 4 * self.prime:
                raise InvalidInputError("curve factor violates the Hasse bound")
        else:
            raise InvalidInputError(f"unknown status {self.status!r}")

    def evaluate(self, t):
        return 1 + self.c1 * t + self.c2 * t * t

    def poly_str(self) -> str:
        terms = ["1"]
        if self.c1:
            sign = "-" if self.c1 < 0 else "+"
            coeff = "" if abs(self.c1) == 1 else f"{abs(self.c1)}"
            terms.append(f"{sign} {coeff}T")
        if self.c2:
            sign = "-" if self.c2 < 0 else "+"
            coeff = "" if abs(self.c2) == 1 else f"{abs(self.c2)}"
            terms.append(f"{sign} {coeff}T^2")
        return " ".join(terms)

    def to_json_dict(self) -> dict:
        return {
            "prime": self.prime,
            "c1": str(self.c1),
            "c2": str(self.c2),
            "side": self.side,
            "status": self.status,
        }


@dataclass(frozen=True)
class TruncatedSeries:
    """Exact rational Taylor coefficients, degree 0..N, constant term 1."""

    coefficients: tuple

    def __init__(self, coefficients):
        coefficients = tuple(Fraction(c) for c in coefficients)
        if not coefficients or coefficients[0] != 1:
            raise InvalidInputError("zeta-type series must start with 1")
        object.__setattr__(self, "coefficients", coefficients)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @classmethod
    def exponential(cls, log_terms, trunc: int) -> "TruncatedSeries":
        """exp of sum(log_terms[n-1]/n * z^n) as exact rationals.

        Uses g' = f' g: g_m = (1/m) * sum_{k=1..m} k*a_k*g_{m-k} with
        a_k = log_terms[k-1]/k.
        """
        a = [Fraction(0)] + [Fraction(c, k + 1) for k, c in enumerate(log_terms[:trunc])]
        g = [Fraction(1)]
        for m in range(1, trunc + 1):
            acc = Fraction(0)
            for k in range(1, m + 1):
                acc += k * a[k] * g[m - k]
            g.append(acc / m)
        return cls(g)

    @classmethod
    def inverse_polynomial(cls, c1: int, c2: int, trunc: int) -> "TruncatedSeries":
        """Taylor expansion of 1 / (1 + c1*T + c2*T^2)."""
        g = [Fraction(1)]
        for m in range(1, trunc + 1):
            val = -c1 * g[m - 1]
            if m >= 2:
                val -= c2 * g[m - 2]
            g.append(Fraction(val))
        return cls(g)

    def multiply_polynomial(self, coeffs) -> "TruncatedSeries":
        """Truncated product with the polynomial sum(coeffs[i] * z^i)."""
        n = self.degree
        out = [Fraction(0)] * (n + 1)
        for i, c in enumerate(coeffs):
            if c == 0:
                continue
            for m in range(i, n + 1):
                out[m] += c * self.coefficients[m - i]
        return TruncatedSeries(out)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def to_json_dict(self) -> dict:
        return {"coefficients": [str(c) for c in self.coefficients]}


def _require_hyperbolic_seed(a_matrix: IntMatrix) -> None:
    if a_matrix.n != 2:
        raise InvalidInputError("seed matrix must be 2x2")
    if a_matrix.det() != 1:
        raise InvalidInputError("seed matrix must have determinant 1")
    if a_matrix.trace() < 2:
        raise InvalidInputError("seed matrix must have trace >= 2")


def build_Lp(a_matrix: IntMatrix, p: int):
    """Both presentations of the local matrix at p.

    Returns (row form, canonical form) where the row form is
    [[t-p, p], [t-p-1, p]] and the canonical form [[t, p], [-1, 0]] with
    t = tr(A^p).  They share the characteristic polynomial
    x^2 - t*x + p, which is re-verified before returning.
    """
    _require_hyperbolic_seed(a_matrix)
    t = power(a_matrix, p).trace()
    row_form = IntMatrix([[t - p, p], [t - p - 1, p]])
    canonical = IntMatrix([[t, p], [-1, 0]])
    expected = (1, -t, p)
    if char_poly(row_form) != expected or char_poly(canonical) != expected:
        raise InternalCheckError("local matrix forms disagree on char poly")
    return row_form, canonical


def lp_level_matrix(a_matrix: IntMatrix, p: int, n: int) -> IntMatrix:
    """Canonical local matrix at level n: [[tr(A^(p*n)), p^n], [-1, 0]].

    This is the level-n construction, not the n-th power of the level-1
    matrix; the two have different traces for n >= 2.
    """
    _require_hyperbolic_seed(a_matrix)
    if n < 1:
        raise InvalidInputError("level must be >= 1")
    t = power(a_matrix, p * n).trace()
    return IntMatrix([[t, p**n], [-1, 0]])


def is_bad_prime_nt(a_matrix: IntMatrix, p: int) -> bool:
    """True iff p divides tr(A)^2 - 4."""
    _require_hyperbolic_seed(a_matrix)
    tr = a_matrix.trace()
    return (tr * tr - 4) % p == 0


def _validate_alpha(alpha) -> int:
    if alpha not in (-1, 0, 1):
        raise InvalidInputError("alpha must be -1, 0 or 1 at a bad prime")
    return int(alpha)


def zeta_local_nt_series(
    a_matrix: IntMatrix,
    p: int,
    alpha: int | None = None,
    trunc: int = DEFAULT_TRUNCATION,
) -> TruncatedSeries:
    """Exponential series of the torus-side local zeta, degree `trunc`.

    Good primes use the trace power sums tr(L_p^n), whose exponential is
    exactly the expansion of 1/(1 - tr(A^p)z + pz^2); each term is
    cross-checked against the fixed-point count
    |K0(O_{L_p^n})| = |det(I - (L_p^n)^t)| = tr(L_p^n) - p^n - 1, which
    generates the related series `fixed_point_series`.  Bad primes use
    the signed terms alpha^n, giving 1/(1 - alpha*z); alpha = 0
    short-circuits to the constant series.
    """
    if trunc < 1:
        raise InvalidInputError("truncation degree must be >= 1")
    if is_bad_prime_nt(a_matrix, p):
        alpha = _validate_alpha(alpha)
        if alpha == 0:
            return TruncatedSeries([1] + [0] * trunc)
        return TruncatedSeries.exponential(
            [alpha**n for n in range(1, trunc + 1)], trunc
        )
    _, canonical = build_Lp(a_matrix, p)
    terms = []
    m = IntMatrix.identity(2)
    for n in range(1, trunc + 1):
        m = multiply(m, canonical)
        tr_n = m.trace()
        fixed = k0_order(trusted(m))
        if fixed != tr_n - p**n - 1:
            raise InternalCheckError(
                "fixed-point count disagrees with trace power sum"
            )
        terms.append(tr_n)
    return TruncatedSeries.exponential(terms, trunc)


def fixed_point_series(
    a_matrix: IntMatrix, p: int, trunc: int = DEFAULT_TRUNCATION
) -> TruncatedSeries:
    """Exponential series of the counts |det(I - (L_p^n)^t)|.

    For hyperbolic seeds this equals the expansion of
    (1 - z)(1 - pz) / (1 - tr(A^p)z + pz^2): the fixed-point counts and
    the trace power sums differ by p^n + 1, which contributes the
    polynomial prefactor.
    """
    if trunc < 1:
        raise InvalidInputError("truncation degree must be >= 1")
    if is_bad_prime_nt(a_matrix, p):
        raise InvalidInputError("fixed-point series is defined at good primes")
    _, canonical = build_Lp(a_matrix, p)
    terms = []
    m = IntMatrix.identity(2)
    for _n in range(1, trunc + 1):
        m = multiply(m, canonical)
        terms.append(k0_order(trusted(m)))
    return TruncatedSeries.exponential(terms, trunc)


def zeta_local_nt_closed(
    a_matrix: IntMatrix, p: int, alpha: int | None = None
) -> LocalFactor:
    """Inverse of the torus-side local zeta as a LocalFactor.

    Good primes give 1 - tr(A^p)T + pT^2; bad primes 1 - alpha*T.
    """
    if is_bad_prime_nt(a_matrix, p):
        alpha = _validate_alpha(alpha)
        return LocalFactor(p, -alpha, 0, "nc_torus", "bad")
    t = power(a_matrix, p).trace()
    return LocalFactor(p, -t, p, "nc_torus", "good")


def local_l_factor_curve(curve: WeierstrassCurve, p: int) -> LocalFactor:
    """Curve-side local L-polynomial at p.

    Good reduction: 1 - a_p*T + p*T^2.  Split / non-split multiplicative:
    1 -+ T.  Additive: 1.  Bad reduction at p <= 3 raises
    UnsupportedPrimeError (propagated from reduction_type).
    """
    rt = reduction_type(curve, p)
    if rt.tag == "good":
        a_p = trace_of_frobenius(curve, p)
        return LocalFactor(p, -a_p, p, "curve", "good")
    return LocalFactor(p, -rt.alpha, 0, "curve", "bad")


@dataclass(frozen=True)
class EulerProductResult:
    """Truncated Euler product value plus the bookkeeping around it."""

    value: float
    s: float
    p_max: int
    factors_used: int
    skipped_primes: tuple

    def to_json_dict(self) -> dict:
        return {
            "value": self.value,
            "s": self.s,
            "p_max": self.p_max,
            "factors_used": self.factors_used,
            "skipped_primes": list(self.skipped_primes),
        }


def euler_product_truncated(factors, s, p_max: int) -> EulerProductResult:
    """prod over supplied factors of 1/factor(p^-s), ascending primes.

    Diagnostic floating-point evaluation.  Primes <= p_max with no
    supplied factor are recorded as skipped; a vanishing factor raises
    EulerProductPoleError.
    """
    from .curves import primes_in

    by_prime = {}
    for f in factors:
        if f.prime in by_prime:
            raise InvalidInputError(f"duplicate factor for prime {f.prime}")
        by_prime[f.prime] = f
    s_float = float(s)
    value = 1.0
    poles = []
    for p in sorted(by_prime):
        f = by_prime[p]
        denom = f.evaluate(float(p) ** (-s_float))
        if denom == 0:
            poles.append(p)
            continue
        value /= denom
    if poles:
        raise EulerProductPoleError(poles)
    skipped = tuple(p for p in primes_in(2, p_max) if p not in by_prime)
    return EulerProductResult(value, s_float, p_max, len(by_prime), skipped)

"""Endomorphism matrices of imaginary quadratic orders and the
bottom-row-negation map to the real quadratic side.

The normalized endomorphism form of alpha is [[t, -n], [1, 0]] with
t = tr(alpha), n = norm(alpha): same trace and determinant as the
multiplication matrix, with the lower-left 1 that the downstream
formulas expect.  Negating the bottom row flips the determinant sign,
which swaps x^2 - tx + n for x^2 - tx - n, and the sublattice map takes
[[t, n], [-1, 0]] to the unit matrix [[t, 1], [-1, 0]].
"""

from __future__ import annotations

from dataclasses import dataclass

from .curves import is_prime
from .errors import InvalidInputError
from .intmat import IntMatrix
from .quadratic import QuadraticIrrational, unit_index

__all__ = [
    "ImagQuadElement",
    "EndoMatrix",
    "IotaResult",
    "endo_matrix",
    "raw_multiplication_matrix",
    "teichmuller_F",
    "rho",
    "index_iota",
]


@dataclass(frozen=True)
class ImagQuadElement:
    """Element u + v*omega of the order with discriminant disc_k < 0.

    omega is sqrt(disc/4) for disc = 0 mod 4 and (1+sqrt(disc))/2 for
    disc = 1 mod 4.
    """

    disc_k: int
    u: int
    v: int

    def __post_init__(self):
        if self.disc_k >= 0:
            raise InvalidInputError("discriminant must be negative")
        if self.disc_k % 4 not in (0, 1):
            raise InvalidInputError("discriminant must be 0 or 1 mod 4")

    def trace(self) -> int:
        if self.disc_k % 4 == 1:
            return 2 * self.u + self.v
        return 2 * self.u

    def norm(self) -> int:
        if self.disc_k % 4 == 1:
            return (
                self.u * self.u
                + self.u * self.v
                + self.v * self.v * (1 - self.disc_k) // 4
            )
        return self.u * self.u - self.v * self.v * (self.disc_k // 4)

    def to_json_dict(self) -> dict:
        return {"disc": self.disc_k, "u": self.u, "v": self.v}


@dataclass(frozen=True)
class EndoMatrix:
    """2x2 integer matrix of an endomorphism plus its basis stage."""

    m: IntMatrix
    basis_tag: str

    def __post_init__(self):
        if self.m.n != 2:
            raise InvalidInputError("endomorphism matrices are 2x2")
        if self.m.det() == 0:
            raise InvalidInputError("endomorphism matrix must be nonsingular")
        if self.basis_tag not in ("raw", "lemma1_normalized", "corollary1_form"):
            raise InvalidInputError(f"unknown basis tag {self.basis_tag!r}")
        if self.basis_tag == "corollary1_form":
            if self.m.rows[1] != (1, 0):
                raise InvalidInputError("corollary1_form has bottom row (1, 0)")


def raw_multiplication_matrix(alpha: ImagQuadElement) -> IntMatrix:
    """Matrix of multiplication by alpha in the basis {1, omega}."""
    if alpha.v == 0:
        raise InvalidInputError("alpha is rational; no quadratic endomorphism")
    u, v, disc = alpha.u, alpha.v, alpha.disc_k
    if disc % 4 == 1:
        # omega^2 = omega + (disc - 1)/4
        c = v * (disc - 1) // 4
        d = u + v
    else:
        # omega^2 = disc/4
        c = v * (disc // 4)
        d = u
    return IntMatrix([[u, v], [c, d]])


def endo_matrix(alpha: ImagQuadElement) -> EndoMatrix:
    """Normalized endomorphism form [[t, -n], [1, 0]] of alpha.

    Trace and determinant of the raw multiplication matrix are preserved
    exactly; both are asserted against the algebraic trace and norm.
    """
    raw = raw_multiplication_matrix(alpha)
    t, n = alpha.trace(), alpha.norm()
    if raw.trace() != t or raw.det() != n:
        raise InvalidInputError("multiplication matrix disagrees with trace/norm")
    return EndoMatrix(IntMatrix([[t, -n], [1, 0]]), "corollary1_form")


def teichmuller_F(m: EndoMatrix | IntMatrix) -> IntMatrix:
    """Negate the bottom row: (a, b; c, d) -> (a, b; -c, -d)."""
    mat = m.m if isinstance(m, EndoMatrix) else m
    if mat.n != 2:
        raise InvalidInputError("expected a 2x2 matrix")
    (a, b), (c, d) = mat.rows
    return IntMatrix([[a, b], [-c, -d]])


def rho(omega: IntMatrix) -> IntMatrix:
    """Sublattice automorphism [[t, n], [-1, 0]] -> [[t, 1], [-1, 0]].

    For n >= 1 the defining identity
    [[t, n], [-1, 0]] (1, theta)^t = [[t, 1], [-1, 0]] (1, n*theta)^t
    holds coefficientwise in theta; it is checked symbolically here.
    """
    if omega.n != 2:
        raise InvalidInputError("expected a 2x2 matrix")
    (t, n), (c, d) = omega.rows
    if c != -1 or d != 0 or n < 1:
        raise InvalidInputError("expected shape [[t, n], [-1, 0]] with n >= 1")
    # Rows of both sides as (constant, theta-coefficient) pairs.
    lhs = ((t, n), (-1, 0))
    rhs = ((t, 1 * n), (-1, 0))
    if lhs != rhs:
        raise InvalidInputError("sublattice identity failed")
    return IntMatrix([[t, 1], [-1, 0]])


@dataclass(frozen=True)
class IotaResult:
    """Computed unit index with the prime-norm prediction attached.

    For prime n the predicted value is n itself; the computation is
    reported as-is and the agreement flag records whether they match.
    """

    index: int
    norm: int
    predicted: int | None
    matches_prediction: bool | None

    def to_json_dict(self) -> dict:
        return {
            "index": self.index,
            "norm": self.norm,
            "predicted": self.predicted,
            "matches_prediction": self.matches_prediction,
        }


def index_iota(alpha: ImagQuadElement, theta: QuadraticIrrational) -> IotaResult:
    """Unit index of the |norm(alpha)|-sublattice of Z + Z*theta."""
    n = abs(alpha.norm())
    if n < 2:
        raise InvalidInputError("alpha is a unit; no proper sublattice")
    g = unit_index(theta, n)
    predicted = n if is_prime(n) else None
    matches = (g == predicted) if predicted is not None else None
    return IotaResult(g, n, predicted, matches)

"""K-theory of Cuntz-Krieger algebras from Smith normal forms.

K0(O_B) is the cokernel of I - B^t and K1(O_B) its kernel rank, both
read off the Smith diagonal.  The constructor for O_B assumes a
nonnegative integer matrix; wrap a matrix in `trusted` to apply the
algebraic formula to inputs outside that hypothesis (the formula is
defined for any integer matrix).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInputError, UndefinedOrderError
from .intmat import IntMatrix, power, smith_normal_form

__all__ = [
    "FiniteAbelianGroup",
    "TrustedMatrix",
    "trusted",
    "k0_cuntz_krieger",
    "k1_cuntz_krieger",
    "k0_order",
    "is_primitive",
]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Free rank plus invariant-factor chain d1 | d2 | ... (each >= 2)."""

    free_rank: int
    torsion: tuple

    def __init__(self, free_rank: int, torsion=()):
        torsion = tuple(int(d) for d in torsion)
        if free_rank < 0:
            raise InvalidInputError("free rank must be nonnegative")
        if any(d < 2 for d in torsion):
            raise InvalidInputError("torsion factors must be >= 2")
        for a, b in zip(torsion, torsion[1:]):
            if b % a != 0:
                raise InvalidInputError("invariant factors must form a chain")
        object.__setattr__(self, "free_rank", int(free_rank))
        object.__setattr__(self, "torsion", torsion)

    @classmethod
    def from_invariant_factors(cls, diagonal) -> "FiniteAbelianGroup":
        """Build from a Smith diagonal: 0 -> free rank, 1 -> dropped."""
        free = sum(1 for d in diagonal if d == 0)
        torsion = [d for d in diagonal if d >= 2]
        return cls(free, torsion)

    def order(self) -> int:
        if self.free_rank:
            raise UndefinedOrderError("group has free rank; order undefined")
        result = 1
        for d in self.torsion:
            result *= d
        return result

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def render(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("ℤ")
        elif self.free_rank > 1:
            parts.append(f"ℤ^{self.free_rank}")
        parts.extend(f"ℤ/{d}" for d in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"

    def to_json_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


@dataclass(frozen=True)
class TrustedMatrix:
    """Marker wrapper: apply the K-theory formula to any integer matrix.

    The algebra constructor wants nonnegative entries; canonical local
    matrices carry a -1, so computations on them go through this wrapper
    to make the bypassed hypothesis explicit at the call site.
    """

    matrix: IntMatrix


def trusted(m: IntMatrix) -> TrustedMatrix:
    return TrustedMatrix(m)


def _unwrap(b) -> IntMatrix:
    if isinstance(b, TrustedMatrix):
        return b.matrix
    if not isinstance(b, IntMatrix):
        raise InvalidInputError("expected IntMatrix or TrustedMatrix")
    if any(x < 0 for row in b.rows for x in row):
        raise InvalidInputError(
            "matrix has negative entries; wrap in trusted(...) to proceed"
        )
    return b


def _presentation(b) -> IntMatrix:
    m = _unwrap(b)
    return IntMatrix.identity(m.n).sub(m.transpose())


def k0_cuntz_krieger(b) -> FiniteAbelianGroup:
    """K0(O_B) = Z^n / (I - B^t) Z^n as a FiniteAbelianGroup."""
    dec = smith_normal_form(_presentation(b))
    return FiniteAbelianGroup.from_invariant_factors(dec.diagonal)


def k1_cuntz_krieger(b) -> int:
    """Rank of Ker(I - B^t): the count of zero invariant factors."""
    dec = smith_normal_form(_presentation(b))
    return sum(1 for d in dec.diagonal if d == 0)


def k0_order(b) -> int:
    """|det(I - B^t)|, the order of K0(O_B) when it is finite."""
    d = _presentation(b).det()
    if d == 0:
        raise UndefinedOrderError("infinite K0; order undefined")
    return abs(d)


def is_primitive(b: IntMatrix) -> bool:
    """Some power of the nonnegative matrix is strictly positive.

    Wielandt's bound: primitive iff B^(n^2 - 2n + 2) > 0.
    """
    m = _unwrap(b)
    k = m.n * m.n - 2 * m.n + 2
    mk = power(m, k)
    return all(x > 0 for row in mk.rows for x in row)

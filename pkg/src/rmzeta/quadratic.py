"""Real quadratic irrationals and their periodic continued fractions.

The state map (P, Q) -> (aQ - P, (D - P'^2)/Q) drives everything:
period detection is exact, the period matrix recovers the fundamental
unit of the multiplier order of Z + Z*theta, and powers of that unit in
(x, y) coordinates give the sublattice index function.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .errors import InternalCheckError, InvalidInputError, UnitIndexBoundError
from .intmat import IntMatrix, multiply

__all__ = [
    "QuadraticIrrational",
    "ContinuedFraction",
    "RealQuadraticUnit",
    "expand",
    "periodic_tail",
    "matrix_A",
    "fundamental_unit",
    "fundamental_unit_of",
    "unit_index",
    "QuadFieldElement",
]


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


@dataclass(frozen=True)
class QuadraticIrrational:
    """Normalized (p + sqrt(d)) / q with q | d - p^2.

    Construction rescales (p, d, q) -> (p|q|, d q^2, q|q|) when the
    divisibility fails, then strips common factors g with g | p, g | q,
    g^2 | d when doing so preserves the invariant.  Equality is
    componentwise on the normalized triple.
    """

    p: int
    d: int
    q: int

    def __init__(self, p: int, d: int, q: int):
        p, d, q = int(p), int(d), int(q)
        if q == 0:
            raise InvalidInputError("q must be nonzero")
        if d <= 0 or is_square(d):
            raise InvalidInputError("d must be positive and non-square")
        if (d - p * p) % q != 0:
            s = abs(q)
            p, d, q = p * s, d * s * s, q * s
        while True:
            g = gcd(p, q)
            if g <= 1:
                break
            if d % (g * g) != 0:
                break
            p2, d2, q2 = p // g, d // (g * g), q // g
            if (d2 - p2 * p2) % q2 != 0:
                break
            p, d, q = p2, d2, q2
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "q", q)

    def value(self) -> float:
        return (self.p + self.d ** 0.5) / self.q

    def floor(self) -> int:
        # sqrt(d) is irrational, so floor(p + sqrt(d)) = p + isqrt(d).
        r = isqrt(self.d)
        if self.q > 0:
            return (self.p + r) // self.q
        return (-self.p - r - 1) // (-self.q)

    def to_json_dict(self) -> dict:
        return {"p": self.p, "d": self.d, "q": self.q}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "QuadraticIrrational":
        return cls(int(obj["p"]), int(obj["d"]), int(obj["q"]))

    def __str__(self):
        return f"({self.p}+sqrt({self.d}))/{self.q}"


def _minimal_block(period):
    n = len(period)
    for length in range(1, n + 1):
        if n % length == 0 and all(period[i] == period[i % length] for i in range(n)):
            return tuple(period[:length])
    return tuple(period)


@dataclass(frozen=True)
class ContinuedFraction:
    """Eventually periodic continued fraction with a canonical split.

    The period is reduced to its minimal repeating block and the
    preperiod is shortened whenever its tail can be absorbed into a
    rotation of the period, so equal expansions compare equal.
    """

    preperiod: tuple
    period: tuple

    def __init__(self, preperiod, period):
        preperiod = [int(a) for a in preperiod]
        period = [int(a) for a in period]
        if not period:
            raise InvalidInputError("period must be nonempty")
        if any(a < 1 for a in period):
            raise InvalidInputError("period entries must be >= 1")
        if any(a < 1 for a in preperiod[1:]):
            raise InvalidInputError("partial quotients after the first must be >= 1")
        period = list(_minimal_block(period))
        while preperiod and preperiod[-1] == period[-1]:
            preperiod.pop()
            period = [period[-1]] + period[:-1]
        object.__setattr__(self, "preperiod", tuple(preperiod))
        object.__setattr__(self, "period", tuple(period))

    @property
    def is_purely_periodic(self) -> bool:
        return not self.preperiod

    def quotients(self, count: int):
        """First `count` partial quotients of the full expansion."""
        out = list(self.preperiod)
        i = 0
        while len(out) < count:
            out.append(self.period[i % len(self.period)])
            i += 1
        return out[:count]

    def convergent(self, count: int) -> Fraction:
        """Exact value of the expansion truncated to `count` quotients."""
        qs = self.quotients(count)
        num, den = 1, 0
        for a in reversed(qs):
            num, den = a * num + den, num
        return Fraction(num, den)

    def to_json_dict(self) -> dict:
        return {"preperiod": list(self.preperiod), "period": list(self.period)}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "ContinuedFraction":
        return cls(obj["preperiod"], obj["period"])

    def __str__(self):
        pre = ",".join(str(a) for a in self.preperiod)
        per = ",".join(str(a) for a in self.period)
        return f"[{pre};({per})]"


def _expansion_states(theta: QuadraticIrrational):
    """Run the CF state map until a (P, Q) state recurs.

    Returns (quotients, cycle_start, states) where states[k] is the
    (P, Q) pair whose complete quotient produced quotients[k].
    """
    d = theta.d
    seen = {}
    states = []
    quotients = []
    p, q = theta.p, theta.q
    cap = 4 * d + 8 * (abs(p) + abs(q)) + 64
    for step in range(cap):
        key = (p, q)
        if key in seen:
            return quotients, seen[key], states
        seen[key] = step
        states.append(key)
        if q > 0:
            a = (p + isqrt(d)) // q
        else:
            a = (-p - isqrt(d) - 1) // (-q)
        quotients.append(a)
        p_next = a * q - p
        q_next = (d - p_next * p_next) // q
        p, q = p_next, q_next
    raise InternalCheckError("continued fraction failed to cycle within bound")


def expand(theta: QuadraticIrrational) -> ContinuedFraction:
    """Continued fraction of theta with exact period detection.

    The (P, Q) state determines the complete quotient, so the first
    recurring state marks both the minimal preperiod and the minimal
    period.
    """
    quotients, start, _states = _expansion_states(theta)
    return ContinuedFraction(quotients[:start], quotients[start:])


def periodic_tail(theta: QuadraticIrrational) -> QuadraticIrrational:
    """Complete quotient at the start of the periodic part."""
    _quotients, start, states = _expansion_states(theta)
    p, q = states[start]
    return QuadraticIrrational(p, theta.d, q)


def matrix_A(cf: ContinuedFraction) -> IntMatrix:
    """Product of [[a,1],[1,0]] over one period, squared if det is -1.

    Odd period length gives determinant -1; squaring restores det +1 so
    the characteristic polynomial is x^2 - tr*x + 1 while keeping the
    same eigenvector direction.
    """
    prod = IntMatrix.identity(2)
    for a in cf.period:
        prod = multiply(prod, IntMatrix([[a, 1], [1, 0]]))
    if len(cf.period) % 2 == 1:
        prod = multiply(prod, prod)
    return prod


class QuadFieldElement:
    """Element u + v*sqrt(d) with exact rational coordinates."""

    __slots__ = ("u", "v", "d")

    def __init__(self, u, v, d: int):
        self.u = Fraction(u)
        self.v = Fraction(v)
        self.d = int(d)

    def __mul__(self, other: "QuadFieldElement") -> "QuadFieldElement":
        if self.d != other.d:
            raise InvalidInputError("elements of different fields")
        return QuadFieldElement(
            self.u * other.u + self.d * self.v * other.v,
            self.u * other.v + self.v * other.u,
            self.d,
        )

    def __eq__(self, other):
        return (
            isinstance(other, QuadFieldElement)
            and self.d == other.d
            and self.u == other.u
            and self.v == other.v
        )

    def __hash__(self):
        return hash((self.u, self.v, self.d))

    def conjugate(self) -> "QuadFieldElement":
        return QuadFieldElement(self.u, -self.v, self.d)

    def norm(self) -> Fraction:
        return self.u * self.u - self.d * self.v * self.v

    def trace(self) -> Fraction:
        return 2 * self.u

    def __float__(self):
        return float(self.u) + float(self.v) * self.d ** 0.5

    def __repr__(self):
        return f"QuadFieldElement({self.u}, {self.v}, d={self.d})"


def _canonical_generator(d: int) -> QuadFieldElement:
    """omega = (1+sqrt(d))/2 for d = 1 mod 4, sqrt(d) otherwise."""
    if d % 4 == 1:
        return QuadFieldElement(Fraction(1, 2), Fraction(1, 2), d)
    return QuadFieldElement(0, 1, d)


@dataclass(frozen=True)
class RealQuadraticUnit:
    """Unit x + y*omega_d of the quadratic order, norm +1 or -1."""

    x: int
    y: int
    d: int

    def __post_init__(self):
        if self.d <= 0 or is_square(self.d):
            raise InvalidInputError("d must be positive and non-square")
        if self.norm() not in (1, -1):
            raise InvalidInputError("element is not a unit")

    def as_field_element(self) -> QuadFieldElement:
        omega = _canonical_generator(self.d)
        return QuadFieldElement(
            self.x + self.y * omega.u, self.y * omega.v, self.d
        )

    @classmethod
    def from_field_element(cls, xi: QuadFieldElement) -> "RealQuadraticUnit":
        """Read off (x, y) coordinates in the basis {1, omega_d}."""
        if xi.d % 4 == 1:
            y = 2 * xi.v
            x = xi.u - xi.v
        else:
            y = xi.v
            x = xi.u
        if x.denominator != 1 or y.denominator != 1:
            raise InternalCheckError("unit has non-integral order coordinates")
        return cls(int(x), int(y), xi.d)

    def norm(self) -> int:
        if self.d % 4 == 1:
            return self.x * self.x + self.x * self.y + self.y * self.y * (1 - self.d) // 4
        return self.x * self.x - self.d * self.y * self.y

    def pow(self, k: int) -> QuadFieldElement:
        if k < 0:
            raise InvalidInputError("negative power")
        result = QuadFieldElement(1, 0, self.d)
        base = self.as_field_element()
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __float__(self):
        return float(self.as_field_element())

    def __str__(self):
        omega = "(1+sqrt({d}))/2" if self.d % 4 == 1 else "sqrt({d})"
        return f"{self.x} + {self.y}*{omega.format(d=self.d)}"


def fundamental_unit_of(theta: QuadraticIrrational) -> QuadFieldElement:
    """Fundamental unit > 1 of the multiplier order of Z + Z*theta.

    One trip around the continued-fraction cycle of theta fixes the
    periodic tail t, and the matrix M of that trip gives the unit as
    M[1][0]*t + M[1][1].  The result is checked to be > 1 with norm +-1.
    """
    quotients, start, states = _expansion_states(theta)
    prod = IntMatrix.identity(2)
    for a in quotients[start:]:
        prod = multiply(prod, IntMatrix([[a, 1], [1, 0]]))
    p_t, q_t = states[start]
    tail = QuadFieldElement(Fraction(p_t, q_t), Fraction(1, q_t), theta.d)
    eps = QuadFieldElement(
        prod.rows[1][0] * tail.u + prod.rows[1][1],
        prod.rows[1][0] * tail.v,
        theta.d,
    )
    if eps.norm() not in (1, -1):
        raise InternalCheckError("period matrix did not produce a unit")
    if float(eps) <= 1:
        raise InternalCheckError("fundamental unit not greater than 1")
    return eps


def fundamental_unit(d: int) -> RealQuadraticUnit:
    """Smallest unit > 1 of the order Z[omega_d]."""
    if d <= 0 or is_square(d):
        raise InvalidInputError("d must be positive and non-square")
    if d % 4 == 1:
        theta = QuadraticIrrational(1, d, 2)
    else:
        theta = QuadraticIrrational(0, d, 1)
    return RealQuadraticUnit.from_field_element(fundamental_unit_of(theta))


def _theta_coordinates(xi: QuadFieldElement, theta: QuadraticIrrational):
    """Coordinates (x, y) of xi = x + y*theta in the basis {1, theta}."""
    y = xi.v * theta.q
    x = xi.u - xi.v * theta.p
    if x.denominator != 1 or y.denominator != 1:
        raise InternalCheckError("element does not lie in Z + Z*theta")
    return int(x), int(y)


def unit_index(theta: QuadraticIrrational, n: int, max_power: int | None = None) -> int:
    """Smallest g >= 1 with eps^g in Z + (n*theta)Z.

    eps is the fundamental unit of the pseudo-lattice Z + Z*theta; its
    powers stay in the lattice, and membership in the index-n sublattice
    means n divides the theta-coordinate.  The default cap
    n^2 * period-length always suffices because the coordinate pair mod n
    evolves under an invertible integer matrix.
    """
    if n < 1:
        raise InvalidInputError("n must be >= 1")
    eps = fundamental_unit_of(theta)
    cf = expand(theta)
    cap = max_power if max_power is not None else max(1, n * n * len(cf.period))
    xi = QuadFieldElement(1, 0, theta.d)
    for g in range(1, cap + 1):
        xi = xi * eps
        _x, y = _theta_coordinates(xi, theta)
        if y % n == 0:
            return g
    raise UnitIndexBoundError(f"index not found within bound {cap}")

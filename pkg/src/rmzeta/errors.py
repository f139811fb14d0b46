"""Exception types shared across the package.

The CLI maps these onto process exit codes, so keep the hierarchy flat
and the distinctions meaningful: bad input vs. a result that is
mathematically undefined vs. an internal identity that failed.
"""


class RmzetaError(Exception):
    """Base class for all package errors."""


class InvalidInputError(RmzetaError, ValueError):
    """Malformed or out-of-domain input (maps to CLI usage errors)."""


class SingularCurveError(InvalidInputError):
    """Weierstrass model with vanishing discriminant."""


class NotPrimeError(InvalidInputError):
    """A prime was required."""


class CatalogError(InvalidInputError):
    """Discriminant outside the class-number-one catalog."""


class BadReductionError(RmzetaError):
    """Operation requires good reduction at the given prime."""


class UnsupportedPrimeError(RmzetaError):
    """Bad reduction at p <= 3: minimal-model analysis unsupported."""


class UndefinedOrderError(RmzetaError):
    """Group has free rank, so its order is undefined (infinite K0)."""


class UnitIndexBoundError(RmzetaError):
    """Unit-index search exceeded its iteration cap."""


class EulerProductPoleError(RmzetaError):
    """A local factor vanishes at the evaluation point."""

    def __init__(self, primes):
        self.primes = tuple(primes)
        super().__init__(f"local factor has a pole at primes {self.primes}")


class InternalCheckError(RmzetaError):
    """An exact identity that must hold by construction failed.

    Raising this indicates an arithmetic bug, never bad user input.
    """

"""Parsing of the little input languages shared by the CLI and service.

Curve specs: "a,b" integer pairs, catalog labels "cm:-4", or JSON
objects {"a": .., "b": .., "label": ..}.  Theta specs: "golden",
"sqrt:D", or JSON objects {"p": .., "d": .., "q": ..}.  Prime ranges:
"A..B" inclusive.
"""

from __future__ import annotations

from .curves import WeierstrassCurve, cm_lookup
from .errors import InvalidInputError
from .intmat import IntMatrix
from .quadratic import QuadraticIrrational

__all__ = [
    "parse_curve_spec",
    "parse_theta_spec",
    "parse_prime_range",
    "parse_matrix_spec",
]


def parse_curve_spec(spec) -> WeierstrassCurve:
    if isinstance(spec, WeierstrassCurve):
        return spec
    if isinstance(spec, dict):
        try:
            return WeierstrassCurve(
                int(spec["a"]), int(spec["b"]), spec.get("label")
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"bad curve object: {exc}") from exc
    if isinstance(spec, str):
        text = spec.strip()
        if text.startswith("cm:"):
            try:
                disc = int(text[3:])
            except ValueError as exc:
                raise InvalidInputError(f"bad catalog label {text!r}") from exc
            return cm_lookup(disc).curve
        parts = text.split(",")
        if len(parts) == 2:
            try:
                return WeierstrassCurve(int(parts[0]), int(parts[1]))
            except ValueError as exc:
                raise InvalidInputError(f"bad curve pair {text!r}") from exc
        raise InvalidInputError(f"unrecognized curve spec {text!r}")
    raise InvalidInputError(f"unrecognized curve spec {spec!r}")


def parse_theta_spec(spec) -> QuadraticIrrational:
    if isinstance(spec, QuadraticIrrational):
        return spec
    if isinstance(spec, dict):
        try:
            return QuadraticIrrational(int(spec["p"]), int(spec["d"]), int(spec["q"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"bad theta object: {exc}") from exc
    if isinstance(spec, str):
        text = spec.strip()
        if text == "golden":
            return QuadraticIrrational(1, 5, 2)
        if text.startswith("sqrt:"):
            try:
                d = int(text[5:])
            except ValueError as exc:
                raise InvalidInputError(f"bad sqrt spec {text!r}") from exc
            return QuadraticIrrational(0, d, 1)
        raise InvalidInputError(f"unrecognized theta spec {text!r}")
    raise InvalidInputError(f"unrecognized theta spec {spec!r}")


def parse_prime_range(text: str) -> tuple:
    """Inclusive range "A..B"; an empty range is allowed."""
    parts = text.split("..")
    if len(parts) != 2:
        raise InvalidInputError(f"prime range must look like A..B, got {text!r}")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise InvalidInputError(f"bad prime range {text!r}") from exc
    return lo, hi


def parse_matrix_spec(spec) -> IntMatrix:
    """Nested-list JSON or the {"n", "rows"} wire object."""
    if isinstance(spec, IntMatrix):
        return spec
    if isinstance(spec, dict):
        try:
            return IntMatrix.from_json_dict(spec)
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"bad matrix object: {exc}") from exc
    if isinstance(spec, list):
        try:
            return IntMatrix([[int(x) for x in row] for row in spec])
        except (TypeError, ValueError) as exc:
            raise InvalidInputError(f"bad matrix rows: {exc}") from exc
    raise InvalidInputError(f"unrecognized matrix spec {spec!r}")

"""Per-prime comparison and point-count reports.

Assembly is pure and deterministic: rows ascend by prime, every dict
key is fixed, and integers that can exceed 64 bits are serialized as
decimal strings.  A mismatch between the two sides is data, not an
error; the summary just counts it.
"""

from __future__ import annotations

import csv
import io
import json

from .curves import (
    BRUTEFORCE_FIELD_LIMIT,
    WeierstrassCurve,
    count_points_ext,
    count_points_ext_bruteforce,
    primes_in,
    reduction_type,
    trace_of_frobenius,
)
from .errors import UnsupportedPrimeError
from .intmat import power
from .kgroups import k0_cuntz_krieger, trusted
from .quadratic import QuadraticIrrational, expand, matrix_A
from .zeta import (
    TruncatedSeries,
    lp_level_matrix,
    local_l_factor_curve,
    zeta_local_nt_closed,
    zeta_local_nt_series,
)

__all__ = [
    "build_reciprocity_report",
    "build_point_count_report",
    "report_to_json_text",
    "reciprocity_report_to_csv",
    "RECIPROCITY_CSV_HEADER",
]

RECIPROCITY_CSV_HEADER = "prime,curve_c1,curve_c2,nc_c1,nc_c2,match,notes"

_INT64_LIMIT = 2**63


def json_int(value: int):
    """Decimal string beyond the 64-bit range, plain int below it."""
    if abs(value) >= _INT64_LIMIT:
        return str(value)
    return int(value)


def build_reciprocity_report(
    curve: WeierstrassCurve,
    theta: QuadraticIrrational,
    prime_lo: int,
    prime_hi: int,
    trunc: int = 8,
) -> dict:
    """Coefficientwise comparison of the two local factors per prime.

    alpha for torus-side bad primes is read from the curve's reduction
    type, per-row notes explain expected mismatches, and rows where a
    side is unavailable count as skips.  Each good torus factor is
    re-derived from its exponential series to degree `trunc` as a
    consistency check, recorded per row.
    """
    a_matrix = matrix_A(expand(theta))
    tr = a_matrix.trace()
    rows = []
    matches = mismatches = skips = 0
    for p in primes_in(prime_lo, prime_hi):
        notes = []
        series_consistent = None
        curve_factor = None
        curve_alpha = None
        try:
            curve_factor = local_l_factor_curve(curve, p)
            curve_alpha = reduction_type(curve, p).alpha
        except UnsupportedPrimeError:
            notes.append("curve side unsupported: bad reduction at p <= 3")
        nc_bad = (tr * tr - 4) % p == 0
        nc_factor = None
        if nc_bad:
            if curve_alpha is None:
                notes.append("torus side needs alpha from the curve; unavailable")
            else:
                nc_factor = zeta_local_nt_closed(a_matrix, p, alpha=curve_alpha)
                if curve_factor is not None and curve_factor.status == "good":
                    notes.append(
                        "torus-bad prime but curve reduction is good; alpha=0 used"
                    )
        else:
            nc_factor = zeta_local_nt_closed(a_matrix, p)
            t_p = -nc_factor.c1
            if trunc >= 1:
                series = zeta_local_nt_series(a_matrix, p, trunc=trunc)
                closed = TruncatedSeries.inverse_polynomial(
                    nc_factor.c1, nc_factor.c2, trunc
                )
                series_consistent = series == closed
                if not series_consistent:
                    notes.append("torus series disagrees with its closed form")
            if t_p * t_p > 4 * p:
                notes.append(
                    "torus trace exceeds the Hasse bound 2*sqrt(p); "
                    "factors cannot agree"
                )
        match = False
        if curve_factor is not None and nc_factor is not None:
            match = (
                curve_factor.c1 == nc_factor.c1 and curve_factor.c2 == nc_factor.c2
            )
            if match:
                matches += 1
            else:
                mismatches += 1
        else:
            skips += 1
        rows.append(
            {
                "prime": p,
                "curve_factor": None if curve_factor is None else curve_factor.to_json_dict(),
                "nc_factor": None if nc_factor is None else nc_factor.to_json_dict(),
                "match": match,
                "series_consistent": series_consistent,
                "notes": notes,
            }
        )
    return {
        "curve": curve.to_json_dict(),
        "theta": theta.to_json_dict(),
        "matrix_a": a_matrix.to_json_dict(),
        "primes": {"start": prime_lo, "end": prime_hi},
        "trunc": trunc,
        "rows": rows,
        "summary": {"match": matches, "mismatch": mismatches, "skip": skips},
    }


def build_point_count_report(
    curve: WeierstrassCurve,
    p: int,
    n_max: int,
    theta: QuadraticIrrational | None = None,
) -> dict:
    """Counts over F_{p^n} for n = 1..n_max, with the K0 comparison.

    A bad prime produces a reduced report carrying only the reduction
    classification (or the unsupported marker at p <= 3).
    """
    base = {
        "curve": curve.to_json_dict(),
        "prime": p,
        "theta": None if theta is None else theta.to_json_dict(),
    }
    try:
        rt = reduction_type(curve, p)
    except UnsupportedPrimeError:
        return {**base, "reduction": "unsupported", "rows": []}
    if rt.tag != "good":
        return {**base, "reduction": rt.to_json_dict(), "rows": []}

    a_matrix = None
    if theta is not None:
        a_matrix = matrix_A(expand(theta))
    a_p = trace_of_frobenius(curve, p)
    rows = []
    for n in range(1, n_max + 1):
        count = count_points_ext(curve, p, n)
        row = {"n": n, "count_recursion": json_int(count)}
        if p**n <= BRUTEFORCE_FIELD_LIMIT:
            row["count_bruteforce"] = count_points_ext_bruteforce(curve, p, n)
        if a_matrix is not None:
            level = lp_level_matrix(a_matrix, p, n)
            group = k0_cuntz_krieger(trusted(level))
            row["k0_group"] = group.to_json_dict()
            row["k0_matches_count"] = (
                group.free_rank == 0 and group.order() == count
            )
            row["torus_trace"] = json_int(power(a_matrix, p * n).trace())
        rows.append(row)
    return {
        **base,
        "reduction": rt.to_json_dict(),
        "trace_of_frobenius": a_p,
        "rows": rows,
    }


def report_to_json_text(report: dict) -> str:
    """Byte-stable JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def reciprocity_report_to_csv(report: dict) -> str:
    """Fixed-header CSV, one row per prime, notes joined with '; '."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RECIPROCITY_CSV_HEADER.split(","))
    for row in report["rows"]:
        curve_factor = row["curve_factor"] or {}
        nc_factor = row["nc_factor"] or {}
        writer.writerow(
            [
                row["prime"],
                curve_factor.get("c1", ""),
                curve_factor.get("c2", ""),
                nc_factor.get("c1", ""),
                nc_factor.get("c2", ""),
                "true" if row["match"] else "false",
                "; ".join(row["notes"]),
            ]
        )
    return buf.getvalue()

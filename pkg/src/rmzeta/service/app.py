"""FastAPI application exposing the computation core.

Every endpoint is a pure function of its request body, so responses
are deterministic and the app needs no state beyond the code itself.
Domain errors surface as HTTP 400 with a machine-readable code that
the CLI maps onto exit codes.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..errors import (
    CatalogError,
    InvalidInputError,
    NotPrimeError,
    RmzetaError,
    UndefinedOrderError,
)
from ..identities import run_all
from ..kgroups import k0_cuntz_krieger, k1_cuntz_krieger, trusted
from ..quadratic import RealQuadraticUnit, expand, fundamental_unit_of, matrix_A
from ..reports import build_point_count_report, build_reciprocity_report
from ..specs import parse_curve_spec, parse_matrix_spec, parse_theta_spec
from . import schemas


def _bad_request(code: str, message: str) -> HTTPException:
    return HTTPException(status_code=400, detail={"code": code, "message": message})


def create_app() -> FastAPI:
    app = FastAPI(
        title="rmzeta",
        version=__version__,
        description=(
            "Local zeta factors of real-multiplication torus data, local "
            "L-factors of CM elliptic curves, and exact identity sweeps."
        ),
    )

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "version": __version__}

    @app.post("/cf", response_model=schemas.CfResponse)
    def continued_fraction(req: schemas.CfRequest):
        theta = _parse(parse_theta_spec, req.theta, "invalid_theta")
        cf = expand(theta)
        a = matrix_A(cf)
        tr = a.trace()
        eps = RealQuadraticUnit.from_field_element(fundamental_unit_of(theta))
        return {
            "theta": theta.to_json_dict(),
            "continued_fraction": cf.to_json_dict(),
            "matrix_a": a.to_json_dict(),
            "trace": str(tr),
            "hyperbolic_discriminant": str(tr * tr - 4),
            "fundamental_unit": {
                "x": str(eps.x),
                "y": str(eps.y),
                "d": eps.d,
                "norm": eps.norm(),
                "approx": float(eps),
            },
        }

    @app.post("/k0", response_model=schemas.K0Response)
    def k_theory(req: schemas.K0Request):
        matrix = _parse(parse_matrix_spec, req.matrix, "invalid_matrix")
        operand = trusted(matrix) if req.trusted else matrix
        try:
            group = k0_cuntz_krieger(operand)
            k1 = k1_cuntz_krieger(operand)
        except InvalidInputError as exc:
            raise _bad_request("invalid_matrix", str(exc)) from exc
        order = None
        try:
            order = str(group.order())
        except UndefinedOrderError:
            pass
        return {
            "group": group.to_json_dict(),
            "rendered": group.render(),
            "k1_rank": k1,
            "order": order,
        }

    @app.post("/count", response_model=schemas.CountResponse)
    def point_counts(req: schemas.CountRequest):
        curve = _parse(parse_curve_spec, req.curve, "invalid_curve")
        theta = None
        if req.theta is not None:
            theta = _parse(parse_theta_spec, req.theta, "invalid_theta")
        try:
            return build_point_count_report(curve, req.prime, req.n_max, theta)
        except NotPrimeError as exc:
            raise _bad_request("not_prime", str(exc)) from exc
        except InvalidInputError as exc:
            raise _bad_request("invalid_input", str(exc)) from exc

    @app.post("/reciprocity", response_model=schemas.ReciprocityResponse)
    def reciprocity(req: schemas.ReciprocityRequest):
        curve = _parse(parse_curve_spec, req.curve, "invalid_curve")
        theta = _parse(parse_theta_spec, req.theta, "invalid_theta")
        return build_reciprocity_report(
            curve, theta, req.primes.start, req.primes.end, trunc=req.trunc
        )

    @app.post("/lemmas", response_model=schemas.LemmasResponse)
    def lemmas(req: schemas.LemmasRequest):
        suites = [r.to_json_dict() for r in run_all(sweep_bound=req.sweep_bound)]
        return {"suites": suites, "all_passed": all(s["passed"] for s in suites)}

    return app


def _parse(parser, value, code: str):
    try:
        return parser(value)
    except (InvalidInputError, CatalogError, RmzetaError) as exc:
        raise _bad_request(code, str(exc)) from exc


app = create_app()

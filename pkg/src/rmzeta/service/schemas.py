"""Pydantic request/response models for the service.

Inputs accept both the shorthand strings the CLI uses ("golden",
"sqrt:2", "cm:-4", "1,0") and structured objects.  Integer payloads
that can exceed 64 bits travel as decimal strings.
"""

from __future__ import annotations

from typing import Optional, Union

from pydantic import BaseModel, Field

ThetaIn = Union[str, dict]
CurveIn = Union[str, dict]
MatrixIn = Union[list, dict]


class ThetaOut(BaseModel):
    p: int
    d: int
    q: int


class CurveOut(BaseModel):
    a: int
    b: int
    label: Optional[str] = None


class ContinuedFractionOut(BaseModel):
    preperiod: list[int]
    period: list[int]


class MatrixOut(BaseModel):
    n: int
    rows: list[list[str]]


class UnitOut(BaseModel):
    x: str
    y: str
    d: int
    norm: int
    approx: float


class GroupOut(BaseModel):
    free_rank: int
    torsion: list[int]


class CfRequest(BaseModel):
    theta: ThetaIn


class CfResponse(BaseModel):
    theta: ThetaOut
    continued_fraction: ContinuedFractionOut
    matrix_a: MatrixOut
    trace: str
    hyperbolic_discriminant: str
    fundamental_unit: UnitOut


class K0Request(BaseModel):
    matrix: MatrixIn
    trusted: bool = False


class K0Response(BaseModel):
    group: GroupOut
    rendered: str
    k1_rank: int
    order: Optional[str] = None


class PrimeRange(BaseModel):
    start: int
    end: int


class CountRequest(BaseModel):
    curve: CurveIn
    prime: int
    n_max: int = Field(default=1, ge=1, le=64)
    theta: Optional[ThetaIn] = None


class CountRow(BaseModel):
    n: int
    count_recursion: Union[int, str]
    count_bruteforce: Optional[int] = None
    k0_group: Optional[GroupOut] = None
    k0_matches_count: Optional[bool] = None
    torus_trace: Optional[Union[int, str]] = None


class CountResponse(BaseModel):
    curve: CurveOut
    prime: int
    theta: Optional[ThetaOut] = None
    reduction: Union[str, dict]
    trace_of_frobenius: Optional[int] = None
    rows: list[CountRow]


class ReciprocityRequest(BaseModel):
    curve: CurveIn
    theta: ThetaIn
    primes: PrimeRange
    trunc: int = Field(default=8, ge=0, le=64)


class FactorOut(BaseModel):
    prime: int
    c1: str
    c2: str
    side: str
    status: str


class ReciprocityRow(BaseModel):
    prime: int
    curve_factor: Optional[FactorOut] = None
    nc_factor: Optional[FactorOut] = None
    match: bool
    series_consistent: Optional[bool] = None
    notes: list[str]


class ReciprocitySummary(BaseModel):
    match: int
    mismatch: int
    skip: int


class ReciprocityResponse(BaseModel):
    curve: CurveOut
    theta: ThetaOut
    matrix_a: MatrixOut
    primes: PrimeRange
    trunc: int
    rows: list[ReciprocityRow]
    summary: ReciprocitySummary


class LemmasRequest(BaseModel):
    sweep_bound: int = Field(default=5, ge=1, le=12)


class SuiteOut(BaseModel):
    name: str
    cases: int
    failures: int
    examples: list[str]
    passed: bool


class LemmasResponse(BaseModel):
    suites: list[SuiteOut]
    all_passed: bool


class ErrorDetail(BaseModel):
    code: str
    message: str

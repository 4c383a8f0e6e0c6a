"""Pydantic request and response models for the HTTP service and the CLI.

Field-declaration order matches the serialized order, so identical requests
yield byte-identical JSON.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

MatrixPairs = list[list[list[float]]]
VectorPairs = list[list[float]]


class ProblemPayload(BaseModel):
    dim: int
    observables: dict[str, MatrixPairs] = Field(default_factory=dict)
    states: dict[str, VectorPairs] = Field(default_factory=dict)


class OperandRequest(BaseModel):
    """Common operand selection: a problem payload and/or preset names."""

    problem: Optional[ProblemPayload] = None
    a: str = "pauli-x"
    b: str = "pauli-z"
    preset_dim: int = 2


class ReportRequest(OperandRequest):
    state: str = "basis-0"
    tolerance: float = 1e-9
    saturation_tolerance: float = 1e-7


class RelationReportModel(BaseModel):
    id: str
    kind: str
    lhs: float
    middle: Optional[float] = None
    rhs: float
    gap: float
    gap_left: Optional[float] = None
    gap_right: Optional[float] = None
    satisfied: bool
    saturated: bool
    trivial: bool
    tolerance: float


class ReportResponse(BaseModel):
    dim: int
    a: str
    b: str
    state: str
    all_satisfied: bool
    reports: list[RelationReportModel]


class FuzzRequest(BaseModel):
    dimension: int = 2
    trials: int = 1000
    seed: int = 0
    tolerance: float = 1e-9
    saturation_tolerance: float = 1e-7
    relations: Optional[list[str]] = None


class RelationTallyModel(BaseModel):
    id: str
    kind: str
    satisfied: int
    saturated: int
    trivial: int
    violations: int


class ViolationModel(BaseModel):
    trial: int
    relation: str
    report: RelationReportModel
    problem: ProblemPayload


class FuzzResponse(BaseModel):
    dimension: int
    trials: int
    seed: int
    tolerance: float
    clean: bool
    relations: list[RelationTallyModel]
    violations: list[ViolationModel]


class CheckModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    name: str
    value: float
    threshold: float
    passed: bool = Field(alias="pass", serialization_alias="pass")
    note: Optional[str] = None


class EigenstateRequest(OperandRequest):
    which: Literal["A", "B"] = "B"
    index: int = 0


class EigenstateResponse(BaseModel):
    which: str
    index: int
    eigenvalue: float
    state: VectorPairs
    all_passed: bool
    checks: list[CheckModel]


class UncorrelatedRequest(OperandRequest):
    tol: float = 1e-8
    min_dev: float = 0.1
    budget: int = 4096
    seed: int = 0


class UncorrelatedResponse(BaseModel):
    success: bool
    state: VectorPairs
    correlation_modulus: float
    dev_a: float
    dev_b: float
    is_eigenstate_of_a: bool
    is_eigenstate_of_b: bool
    objective: float
    evaluations_used: int
    tol: float
    min_dev: float
    seed: int
    consequence_checks: list[CheckModel]


class ExtremizeRequestModel(OperandRequest):
    relation: str = "HR"
    direction: Literal["minimize-gap", "maximize-gap"] = "minimize-gap"
    restarts: int = 8
    max_evals: int = 1000
    seed: int = 0
    tolerance: float = 1e-9
    saturation_tolerance: float = 1e-7
    include_trace: bool = False


class ExtremizeResponse(BaseModel):
    relation: str
    direction: str
    best_gap: float
    defect: bool
    evaluations_used: int
    restarts_used: int
    state: VectorPairs
    report: RelationReportModel
    trace: Optional[list[list[float]]] = None


class RelationInfoModel(BaseModel):
    id: str
    kind: str
    summary: str


class PresetsResponse(BaseModel):
    observables: list[str]
    states: str
    max_spin_dim: int


class HealthResponse(BaseModel):
    status: str
    name: str
    version: str

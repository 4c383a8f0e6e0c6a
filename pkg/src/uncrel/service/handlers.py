"""Request handlers shared by the HTTP app and the command-line client.

Each handler is a pure function from a request model to a response model;
the CLI calls them in-process, the FastAPI app over HTTP.
"""

from __future__ import annotations

from ..critical import (
    UncorrelatedCase,
    eigenstate_case,
    find_uncorrelated_state,
    verify_uncorrelated_consequences,
)
from ..errors import ProblemFileError
from ..presets import MAX_SPIN_DIM, PRESET_OBSERVABLE_NAMES, preset_observable, preset_state
from ..problemfile import ProblemFile, parse_problem, vector_to_pairs
from ..quantum import Observable, PureState
from ..relations import (
    RELATION_KINDS,
    RELATION_SUMMARIES,
    RelationId,
    RelationReport,
    coerce_relation_id,
    evaluate_all,
)
from ..search import ExtremizeRequest, extremize, fuzz_campaign
from . import schemas


def _problem_from_request(req: schemas.OperandRequest) -> ProblemFile | None:
    if req.problem is None:
        return None
    return parse_problem(req.problem.model_dump())


def _resolve_observable(label: str, problem: ProblemFile | None, dim: int) -> Observable:
    if problem is not None and label in problem.observables:
        return problem.observables[label]
    try:
        return preset_observable(label, dim)
    except ProblemFileError:
        available = sorted(problem.observables) if problem is not None else []
        raise ProblemFileError(
            f"unknown observable '{label}'; problem defines {available or 'none'}, "
            f"presets are {', '.join(PRESET_OBSERVABLE_NAMES)}"
        ) from None


def _resolve_state(label: str, problem: ProblemFile | None, dim: int) -> PureState:
    if problem is not None and label in problem.states:
        return problem.states[label]
    try:
        return preset_state(label, dim)
    except ProblemFileError:
        available = sorted(problem.states) if problem is not None else []
        raise ProblemFileError(
            f"unknown state '{label}'; problem defines {available or 'none'}, "
            "presets are 'basis-K'"
        ) from None


def _resolve_pair(req: schemas.OperandRequest) -> tuple[Observable, Observable, ProblemFile | None, int]:
    problem = _problem_from_request(req)
    dim = problem.dim if problem is not None else req.preset_dim
    a = _resolve_observable(req.a, problem, dim)
    b = _resolve_observable(req.b, problem, dim)
    return a, b, problem, dim


def _report_model(report: RelationReport) -> schemas.RelationReportModel:
    return schemas.RelationReportModel(**report.to_dict())


def run_report(req: schemas.ReportRequest) -> schemas.ReportResponse:
    a, b, problem, dim = _resolve_pair(req)
    state = _resolve_state(req.state, problem, dim)
    reports = evaluate_all(a, b, state, req.tolerance, req.saturation_tolerance)
    return schemas.ReportResponse(
        dim=a.dim,
        a=req.a,
        b=req.b,
        state=req.state,
        all_satisfied=all(r.satisfied for r in reports),
        reports=[_report_model(r) for r in reports],
    )


def run_fuzz(req: schemas.FuzzRequest) -> schemas.FuzzResponse:
    relations = None
    if req.relations is not None:
        relations = [coerce_relation_id(r) for r in req.relations]
        if RelationId.SUM_STD_N in relations:
            raise ProblemFileError("SUM_STD_N cannot be fuzzed as a binary relation")
    summary = fuzz_campaign(
        req.dimension,
        req.trials,
        req.seed,
        req.tolerance,
        req.saturation_tolerance,
        relations,
    )
    payload = summary.to_dict()
    return schemas.FuzzResponse(**payload)


def run_eigenstate(req: schemas.EigenstateRequest) -> schemas.EigenstateResponse:
    a, b, _, _ = _resolve_pair(req)
    case = eigenstate_case(a, b, which=req.which, index=req.index)
    return schemas.EigenstateResponse(
        which=case.which,
        index=case.index,
        eigenvalue=case.eigenvalue,
        state=vector_to_pairs(case.state.vector),
        all_passed=case.all_passed,
        checks=[schemas.CheckModel(**c.to_dict()) for c in case.battery],
    )


def run_uncorrelated(req: schemas.UncorrelatedRequest) -> schemas.UncorrelatedResponse:
    a, b, _, _ = _resolve_pair(req)
    result = find_uncorrelated_state(
        a, b, tol=req.tol, min_dev=req.min_dev, budget=req.budget, seed=req.seed
    )
    checks = verify_uncorrelated_consequences(a, b, result.case, tol=req.tol)
    case: UncorrelatedCase = result.case
    return schemas.UncorrelatedResponse(
        success=result.success,
        state=vector_to_pairs(case.state.vector),
        correlation_modulus=case.correlation_modulus,
        dev_a=case.dev_a,
        dev_b=case.dev_b,
        is_eigenstate_of_a=case.is_eigenstate_of_a,
        is_eigenstate_of_b=case.is_eigenstate_of_b,
        objective=result.objective,
        evaluations_used=result.evaluations_used,
        tol=result.tol,
        min_dev=result.min_dev,
        seed=result.seed,
        consequence_checks=[schemas.CheckModel(**c.to_dict()) for c in checks],
    )


def run_extremize(req: schemas.ExtremizeRequestModel) -> schemas.ExtremizeResponse:
    a, b, _, _ = _resolve_pair(req)
    task = ExtremizeRequest(
        relation=coerce_relation_id(req.relation),
        a=a,
        b=b,
        direction=req.direction,
        restarts=req.restarts,
        max_evals_per_restart=req.max_evals,
        seed=req.seed,
        tolerance=req.tolerance,
        saturation_tolerance=req.saturation_tolerance,
        record_trace=req.include_trace,
    )
    result = extremize(task)
    trace = None
    if result.trace is not None:
        trace = [[float(i), float(g)] for i, g in result.trace]
    return schemas.ExtremizeResponse(
        relation=task.relation.value,
        direction=req.direction,
        best_gap=result.best_gap,
        defect=result.defect,
        evaluations_used=result.evaluations_used,
        restarts_used=result.restarts_used,
        state=vector_to_pairs(result.best_state.vector),
        report=_report_model(result.best_report),
        trace=trace,
    )


def relation_directory() -> list[schemas.RelationInfoModel]:
    return [
        schemas.RelationInfoModel(
            id=rel.value, kind=RELATION_KINDS[rel].value, summary=RELATION_SUMMARIES[rel]
        )
        for rel in RelationId
    ]


def preset_directory() -> schemas.PresetsResponse:
    return schemas.PresetsResponse(
        observables=list(PRESET_OBSERVABLE_NAMES),
        states="basis-K for K in 0..dim-1",
        max_spin_dim=MAX_SPIN_DIM,
    )

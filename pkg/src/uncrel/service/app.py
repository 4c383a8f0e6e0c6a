"""FastAPI application wrapping the toolkit.

Run with: uvicorn uncrel.service:app
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import NumericalIntegrityError, ToolkitError
from . import handlers, schemas

app = FastAPI(
    title="uncrel",
    version=__version__,
    description=(
        "Uncertainty-relation evaluations for finite-dimensional quantum systems: "
        "relation reports, randomized soundness campaigns, critical-point batteries, "
        "and gap extremization."
    ),
)


@app.exception_handler(ToolkitError)
async def toolkit_error_handler(_: Request, exc: ToolkitError) -> JSONResponse:
    status = 500 if isinstance(exc, NumericalIntegrityError) else 422
    return JSONResponse(status_code=status, content={"detail": str(exc)})


@app.exception_handler(ValueError)
async def value_error_handler(_: Request, exc: ValueError) -> JSONResponse:
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.get("/health", response_model=schemas.HealthResponse)
def health() -> schemas.HealthResponse:
    return schemas.HealthResponse(status="ok", name="uncrel", version=__version__)


@app.get("/relations", response_model=list[schemas.RelationInfoModel])
def relations() -> list[schemas.RelationInfoModel]:
    return handlers.relation_directory()


@app.get("/presets", response_model=schemas.PresetsResponse)
def presets() -> schemas.PresetsResponse:
    return handlers.preset_directory()


@app.post("/report", response_model=schemas.ReportResponse)
def report(req: schemas.ReportRequest) -> schemas.ReportResponse:
    return handlers.run_report(req)


@app.post("/fuzz", response_model=schemas.FuzzResponse)
def fuzz(req: schemas.FuzzRequest) -> schemas.FuzzResponse:
    return handlers.run_fuzz(req)


@app.post("/critical/eigenstate", response_model=schemas.EigenstateResponse)
def critical_eigenstate(req: schemas.EigenstateRequest) -> schemas.EigenstateResponse:
    return handlers.run_eigenstate(req)


@app.post("/critical/uncorrelated", response_model=schemas.UncorrelatedResponse)
def critical_uncorrelated(req: schemas.UncorrelatedRequest) -> schemas.UncorrelatedResponse:
    return handlers.run_uncorrelated(req)


@app.post("/extremize", response_model=schemas.ExtremizeResponse)
def extremize_endpoint(req: schemas.ExtremizeRequestModel) -> schemas.ExtremizeResponse:
    return handlers.run_extremize(req)

"""HTTP front end exposing the verification commands.

Thin wrapper: each endpoint builds a RunConfig, delegates to the report
builder, and returns the report with its exit code. Domain errors map to
400, validation problems to 422 (pydantic's default).
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import TriorthoError
from ..reports import (
    RunConfig,
    cmd_constants,
    cmd_verify_theorem2,
    patch_report,
)
from .schemas import (
    ConstantsRequest,
    PatchCheckRequest,
    ReportResponse,
    VerifyTheorem2Request,
)

app = FastAPI(title="triortho", version="0.1.0")


@app.exception_handler(TriorthoError)
async def _domain_error(request: Request, exc: TriorthoError) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={"error": type(exc).__name__, "detail": str(exc)},
    )


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/verify-theorem2", response_model=ReportResponse)
def verify_theorem2(req: VerifyTheorem2Request) -> ReportResponse:
    cfg = RunConfig(
        command="verify-theorem2",
        n_lo=req.n_lo,
        n_hi=req.n_hi,
        mode=req.mode,
        grid=req.grid,
        seed=req.seed,
        workers=req.workers,
    )
    report, code = cmd_verify_theorem2(cfg)
    return ReportResponse(exit_code=code, report=report)


@app.post("/patch", response_model=ReportResponse)
def check_patch(req: PatchCheckRequest) -> ReportResponse:
    cfg = RunConfig(
        command="patch",
        n_lo=req.n_lo,
        n_hi=req.n_hi,
        mode=req.mode,
        seed=req.seed,
    )
    report, code = patch_report(cfg, req.patch.model_dump())
    return ReportResponse(exit_code=code, report=report)


@app.post("/constants", response_model=ReportResponse)
def constants(req: ConstantsRequest) -> ReportResponse:
    cfg = RunConfig(
        command="constants",
        n_lo=req.n_lo,
        n_hi=req.n_hi,
        samples=req.samples,
        seed=req.seed,
        q=req.q,
        delta=req.delta,
        rho=req.rho,
        workers=req.workers,
    )
    report, code = cmd_constants(cfg)
    return ReportResponse(exit_code=code, report=report)

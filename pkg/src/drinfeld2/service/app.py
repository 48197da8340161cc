"""FastAPI front end over the shared handlers.

Run it with ``uvicorn drinfeld2.service.app:app``.  Exceptions map to
stable statuses: malformed inputs are 400, refused work budgets are 422,
and a failed internal cross-check is 500 (it indicates a bug, and is never
swallowed).
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import CrossCheckError, ScaleGuardError
from . import handlers, models


def create_app() -> FastAPI:
    app = FastAPI(
        title="drinfeld2",
        description="Frobenius quadratics, isogeny censuses and endomorphism "
        "orders of rank-2 modules over finite fields, in exact arithmetic.",
        version=__version__,
    )

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"detail": str(exc), "code": "bad-input"})

    @app.exception_handler(ScaleGuardError)
    async def _scale_guard(request: Request, exc: ScaleGuardError):
        return JSONResponse(
            status_code=422, content={"detail": str(exc), "code": "scale-guard"}
        )

    @app.exception_handler(CrossCheckError)
    async def _cross_check(request: Request, exc: CrossCheckError):
        return JSONResponse(
            status_code=500, content={"detail": str(exc), "code": "cross-check"}
        )

    @app.get("/v1/health", response_model=models.HealthResponse)
    def health() -> models.HealthResponse:
        return models.HealthResponse(status="ok", version=__version__)

    @app.post("/v1/field-info", response_model=models.FieldInfoResponse)
    def field_info(req: models.FieldInfoRequest) -> models.FieldInfoResponse:
        return handlers.field_info(req)

    @app.post("/v1/charpoly", response_model=models.CharPolyResponse)
    def charpoly(req: models.ModuleRequest) -> models.CharPolyResponse:
        return handlers.charpoly(req)

    @app.post("/v1/classify", response_model=models.ClassifyResponse)
    def classify(req: models.ClassifyRequest) -> models.ClassifyResponse:
        return handlers.classify_candidate(req)

    @app.post("/v1/census", response_model=models.CensusResponse)
    def census(req: models.CensusRequest) -> models.CensusResponse:
        return handlers.run_census(req)

    @app.post("/v1/chi-census", response_model=models.CensusResponse)
    def chi_census(req: models.CensusRequest) -> models.CensusResponse:
        return handlers.run_census(req)

    @app.post("/v1/sweep", response_model=models.SweepResponse)
    def sweep(req: models.SweepRequest) -> models.SweepResponse:
        return handlers.run_sweep(req)

    @app.post("/v1/endo", response_model=models.EndoResponse)
    def endo(req: models.EndoRequest) -> models.EndoResponse:
        return handlers.run_endo(req)

    @app.post("/v1/grid", response_model=models.GridResponse)
    def grid(req: models.GridRequest) -> models.GridResponse:
        return handlers.run_grid(req)

    return app


app = create_app()

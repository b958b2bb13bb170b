"""HTTP front end for the scenario runner.

POST /run executes a scenario batch and returns the report plus all CSV and
JSON artifacts inline, so remote clients never depend on server-side paths.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__, scenarios
from .schemas import (
    ChecksResponse,
    CheckSpec,
    HealthResponse,
    RunRequest,
    RunResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(title="ncg verification service", version=__version__)

    @app.get("/health", response_model=HealthResponse)
    def health():
        return HealthResponse(status="ok", version=__version__)

    @app.get("/checks", response_model=ChecksResponse)
    def checks():
        return ChecksResponse(
            checks=[CheckSpec(**spec) for spec in scenarios.kind_specs()],
            listing=scenarios.list_checks(),
        )

    @app.post("/run", response_model=RunResponse)
    def run(request: RunRequest):
        try:
            report, artifacts = scenarios.run_scenarios(
                request.scenarios,
                jobs=request.jobs,
                tol_scale=request.tol_scale,
                seed_override=request.seed_override,
            )
        except scenarios.ScenarioError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return RunResponse(
            report=report,
            artifacts=artifacts,
            all_passed=all(row.passed for row in report),
        )

    return app


app = create_app()

"""Request/response models for the verification service."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field

from ..scenarios import ReportRow, Scenario


class HealthResponse(BaseModel):
    status: str
    version: str


class CheckSpec(BaseModel):
    kind: str
    description: str
    requires_seed: bool
    params_schema: dict
    example: dict


class ChecksResponse(BaseModel):
    checks: list[CheckSpec]
    listing: str


class RunRequest(BaseModel):
    scenarios: list[Scenario]
    jobs: int = Field(1, ge=1, le=32)
    tol_scale: float = Field(1.0, gt=0)
    seed_override: Optional[int] = None


class RunResponse(BaseModel):
    report: list[ReportRow]
    artifacts: dict[str, str]
    all_passed: bool

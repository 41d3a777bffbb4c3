"""Request/response models for the experiment service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class ExperimentParams(BaseModel):
    """Knobs shared by all experiment endpoints; unused fields are ignored."""

    dim: int = Field(default=8, ge=2, le=2048)
    rank: int = Field(default=24, ge=1)
    trials: int = Field(default=50, ge=1)
    seed: int = 1
    r: float = 2.0 / 3.0
    s: float = 1.0
    p: float = 1.0
    tol: float | None = None
    r0: float = Field(default=0.1, gt=0.0, lt=1.0)
    det_scale: float = Field(default=0.5, gt=0.0)
    ladder_max: int = Field(default=1024, ge=16, le=2048)
    scan_trials: int = Field(default=2, ge=1)
    estimator_trials: int = Field(default=8, ge=1)
    unsafe_exponents: bool = False


class ExperimentReport(BaseModel):
    config: dict
    inputs_hash: str
    results: list[dict]
    summary: dict


class DetCompareResponse(BaseModel):
    report: ExperimentReport
    csv: str


class HealthResponse(BaseModel):
    status: str
    version: str

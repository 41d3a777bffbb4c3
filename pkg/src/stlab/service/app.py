"""HTTP facade over the experiment runners.

Every endpoint takes an ExperimentParams body, runs the corresponding
seeded experiment in-process and returns the deterministic report.
Inadmissible exponents map to 422 so thin clients can distinguish usage
errors from failed verdicts (which are ordinary 200 responses with
summary.pass == false).
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__, experiments
from ..experiments import ExperimentConfig, ExponentError, to_jsonable
from .schemas import (
    DetCompareResponse,
    ExperimentParams,
    ExperimentReport,
    HealthResponse,
)

app = FastAPI(
    title="stlab",
    description="Trace, determinant and eigenvalue-norm experiments on nuclear operators",
    version=__version__,
)


def _config(subcommand: str, params: ExperimentParams) -> ExperimentConfig:
    return ExperimentConfig(subcommand=subcommand, **params.model_dump())


def _run(subcommand: str, params: ExperimentParams):
    try:
        return experiments.RUNNERS[subcommand](_config(subcommand, params))
    except (ExponentError, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/experiments/trace-check", response_model=ExperimentReport)
def trace_check(params: ExperimentParams):
    return to_jsonable(_run("trace-check", params))


@app.post("/experiments/det-compare", response_model=DetCompareResponse)
def det_compare(params: ExperimentParams):
    report, csv_text = _run("det-compare", params)
    return {"report": to_jsonable(report), "csv": csv_text}


@app.post("/experiments/weyl-scan", response_model=ExperimentReport)
def weyl_scan(params: ExperimentParams):
    return to_jsonable(_run("weyl-scan", params))


@app.post("/experiments/continuity", response_model=ExperimentReport)
def continuity(params: ExperimentParams):
    return to_jsonable(_run("continuity", params))


@app.post("/experiments/factor-check", response_model=ExperimentReport)
def factor_check(params: ExperimentParams):
    return to_jsonable(_run("factor-check", params))

"""FastAPI service wrapping the core package.

Run with:  uvicorn burstmux.service:app

Every endpoint is a stateless request/response wrapper over the handlers in
`burstmux.api`; domain errors map to HTTP 400 with the error class name.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import api
from .errors import BurstmuxError
from .schemas import (
    DesignRequest,
    DesignResponse,
    RegionRequest,
    RegionResponse,
    SimulateRequest,
    SimulateResponse,
    VerifyRequest,
    VerifyResponse,
)

app = FastAPI(
    title="burstmux",
    description=(
        "Delay-constrained multiplexed streaming erasure codes for burst channels: "
        "code design, exhaustive verification, capacity regions, and simulation."
    ),
    version="0.1.0",
)


def _guard(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except BurstmuxError as exc:
        raise HTTPException(
            status_code=400,
            detail={"error": type(exc).__name__, "detail": str(exc)},
        ) from exc


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/design", response_model=DesignResponse)
def design(req: DesignRequest):
    return _guard(
        api.design_op, req.tv, req.tu, req.b, req.field, req.target_rv, req.target_ru
    )


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest):
    return _guard(api.verify_op, req.descriptor, req.burst, req.horizon)


@app.post("/region", response_model=RegionResponse)
def region(req: RegionRequest):
    return _guard(api.region_op, req.tv, req.tu, req.b)


@app.post("/simulate", response_model=SimulateResponse)
def simulate(req: SimulateRequest):
    return _guard(api.simulate_op, req.descriptor, req.pattern, req.slots, req.seed)

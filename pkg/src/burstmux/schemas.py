"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class DesignRequest(BaseModel):
    tv: int
    tu: int
    b: int
    field: str | None = Field(default=None, description="ORDER:POLY, e.g. 256:0x11d")
    target_rv: str | None = Field(default=None, description="exact rational, e.g. 3/5")
    target_ru: str | None = None


class RatesModel(BaseModel):
    rv: str
    ru: str


class DimensionsModel(BaseModel):
    n: int
    kv: int
    ku: int


class DesignResponse(BaseModel):
    descriptor: dict
    rates: RatesModel
    dimensions: DimensionsModel
    code_hash: str
    invocation: dict


class VerifyRequest(BaseModel):
    descriptor: dict
    burst: int
    horizon: int | None = None


class FailureModel(BaseModel):
    burst_start: int
    burst_len: int
    diagonal: int | None
    stream: str
    index: int
    deadline: int
    actual: int | str
    component: int | None


class VerifyResponse(BaseModel):
    verdict: str
    params: dict
    burst: int
    horizon: int | None
    mode: str
    patterns_checked: int
    situations_checked: int
    basis_messages: int
    failure_count: int
    failures: list[FailureModel]
    deadline_witnesses: list[dict]
    wall_time: float
    components: int
    invocation: dict


class RegionRequest(BaseModel):
    tv: int
    tu: int
    b: int


class RegionResponse(BaseModel):
    case_tag: str
    tv: int
    tu: int
    b: int
    constraints: list[list[str]]
    vertices: list[list[str]]


class SimulateRequest(BaseModel):
    descriptor: dict
    pattern: str
    slots: int
    seed: int


class StreamTallyModel(BaseModel):
    recovered: int
    unrecovered: int
    deadline_miss: int


class SimulateResponse(BaseModel):
    pattern: str
    slots: int
    v: StreamTallyModel
    u: StreamTallyModel
    seed_metadata: dict
    within_contract: bool
    notes: list[str]
    invocation: dict


class ErrorResponse(BaseModel):
    error: str
    detail: str

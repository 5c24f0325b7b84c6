"""FastAPI service exposing the scan, propagation and oracle operations.

The CLI is a thin client of this app (in-process by default); remote
deployments run it under uvicorn.  Physics-domain failures and
non-convergence are reported as structured 400 responses with a ``kind``
field so clients can map them onto exit codes.
"""

from __future__ import annotations

import math

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__
from .errors import ConfigError, ConvergenceError, PhysicsDomainError, PoleError
from .figures import (
    fig2_table,
    fig3_tables,
    fig4_table,
    fig5_tables,
    oracle_sweep,
    propagate_run,
    scan_table,
)
from .model import SystemConfig

HALF_PI = math.pi / 2.0

app = FastAPI(title="darktripod", version=__version__)


class ConfigModel(BaseModel):
    """Request-side mirror of SystemConfig (frequencies in units of gamma)."""

    gamma: float = 1.0
    gamma41: float = 1.0
    gamma42: float = 1.0
    K: float = 1.0
    omega21: float = 5.0
    Omega_C: float = 2.0
    Delta_C: float = 0.0
    theta: float = 0.0
    omega41: float = 100.0

    def to_config(self) -> SystemConfig:
        return SystemConfig(**self.model_dump())


class GridModel(BaseModel):
    lo: float
    hi: float
    n: int = Field(ge=1)

    def to_array(self):
        import numpy as np

        if self.n > 1 and not self.lo < self.hi:
            raise ConfigError("grid needs lo < hi")
        return np.linspace(self.lo, self.hi, self.n)


class CsvResponse(BaseModel):
    csv: str
    meta: dict = {}


class CurveModel(BaseModel):
    theta: float
    csv: str


class CurvesResponse(BaseModel):
    curves: list[CurveModel]


class Fig2Request(BaseModel):
    grid: GridModel = GridModel(lo=0.0, hi=HALF_PI, n=257)


class Fig3Request(BaseModel):
    config: ConfigModel = ConfigModel()
    grid: GridModel = GridModel(lo=-5.0, hi=10.0, n=1501)
    thetas: list[float] = [0.0, math.pi / 8, math.pi / 4, 3 * math.pi / 8, HALF_PI]


class Fig4Request(BaseModel):
    theta_grid: GridModel = GridModel(lo=0.0, hi=HALF_PI, n=257)
    tan2phi: list[float] = [1.0, 2.0 * (math.sqrt(2.0) + 1.0), 10.0, 50.0]


class Fig5Request(BaseModel):
    config: ConfigModel = ConfigModel(K=10.0)
    grid: GridModel = GridModel(lo=-5.0, hi=10.0, n=1501)
    thetas: list[float] = [math.pi / 8, 3 * math.pi / 8]


class ScanRequest(BaseModel):
    config: ConfigModel = ConfigModel()
    grid: GridModel = GridModel(lo=-5.0, hi=10.0, n=1501)


class PropagateRequest(BaseModel):
    config: ConfigModel = ConfigModel()
    sigma_t: float = 200.0
    n_samples: int = Field(default=2 ** 14, ge=2)
    span_sigmas: float = 8.0
    carrier_delta1: float = 0.0
    length: float = 1.0
    local_field: bool = False


class SummaryResponse(BaseModel):
    csv: str
    summary: dict


class OracleCheckRequest(BaseModel):
    config: ConfigModel = ConfigModel()
    n_samples: int = Field(default=1000, ge=1)
    seed: int = 12345
    omega_p: float = 1.0
    omega_c_lo: float = 0.1
    omega_c_hi: float = 10.0
    delta1_lo: float = -10.0
    delta1_hi: float = 10.0
    t_max: float = 2e4


@app.exception_handler(ConfigError)
async def _config_error(request: Request, exc: ConfigError):
    return JSONResponse(status_code=400, content={"detail": str(exc), "kind": "bad-request"})


@app.exception_handler(PoleError)
@app.exception_handler(PhysicsDomainError)
async def _physics_error(request: Request, exc: Exception):
    return JSONResponse(status_code=400, content={"detail": str(exc), "kind": "physics"})


@app.exception_handler(ConvergenceError)
async def _convergence_error(request: Request, exc: ConvergenceError):
    return JSONResponse(status_code=400, content={"detail": str(exc), "kind": "convergence"})


@app.get("/version")
def version() -> dict:
    return {"name": "darktripod", "version": __version__}


@app.post("/fig2", response_model=CsvResponse)
def fig2(req: Fig2Request) -> CsvResponse:
    return CsvResponse(csv=fig2_table(req.grid.to_array()))


@app.post("/fig3", response_model=CurvesResponse)
def fig3(req: Fig3Request) -> CurvesResponse:
    tables = fig3_tables(req.config.to_config(), req.grid.to_array(), req.thetas)
    return CurvesResponse(curves=[CurveModel(theta=t, csv=c) for t, c in tables])


@app.post("/fig4", response_model=CsvResponse)
def fig4(req: Fig4Request) -> CsvResponse:
    return CsvResponse(csv=fig4_table(req.theta_grid.to_array(), req.tan2phi))


@app.post("/fig5", response_model=CurvesResponse)
def fig5(req: Fig5Request) -> CurvesResponse:
    tables = fig5_tables(req.config.to_config(), req.grid.to_array(), req.thetas)
    return CurvesResponse(curves=[CurveModel(theta=t, csv=c) for t, c in tables])


@app.post("/scan", response_model=CsvResponse)
def scan(req: ScanRequest) -> CsvResponse:
    return CsvResponse(csv=scan_table(req.config.to_config(), req.grid.to_array()))


@app.post("/propagate", response_model=SummaryResponse)
def propagate(req: PropagateRequest) -> SummaryResponse:
    csv, summary = propagate_run(
        req.config.to_config(),
        sigma_t=req.sigma_t,
        n_samples=req.n_samples,
        span_sigmas=req.span_sigmas,
        carrier_delta1=req.carrier_delta1,
        length=req.length,
        local_field=req.local_field,
    )
    return SummaryResponse(csv=csv, summary=summary)


@app.post("/oracle-check", response_model=SummaryResponse)
def oracle_check(req: OracleCheckRequest) -> SummaryResponse:
    csv, summary = oracle_sweep(
        req.config.to_config(),
        n_samples=req.n_samples,
        seed=req.seed,
        omega_p=req.omega_p,
        omega_c_range=(req.omega_c_lo, req.omega_c_hi),
        delta1_range=(req.delta1_lo, req.delta1_hi),
        t_max=req.t_max,
    )
    return SummaryResponse(csv=csv, summary=summary)

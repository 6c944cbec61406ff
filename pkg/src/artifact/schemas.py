"""Request and response models shared by the HTTP service and the CLI."""

from __future__ import annotations

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

Subcommand = Literal["bands", "gap-scan", "verify", "filter"]
VerifyTarget = Literal["stab", "appendixB", "bosonization", "duality", "meraqle"]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class PhysicalParams(_Strict):
    t: float = Field(1.0, gt=0, description="hopping amplitude")
    mu: float = Field(-2.0, description="chemical potential")
    mu_prime: float = Field(-8.0, description="on-site energy of the emptied sites at the end of the path")
    delta: float = Field(1.0, gt=0, description="pairing amplitude")
    delta_phi: float = Field(1.0, ge=0, description="flux penalty strength")


class FilterParams(_Strict):
    eps: Literal["log"] = "log"
    n_max: int = Field(2000, ge=10, le=100000)
    n_grid: int = Field(8001, ge=257)


class Grids(_Strict):
    nk: int = Field(256, ge=2, le=2048)
    n_lambda: int = Field(256, ge=2, le=4096)
    n_steps: int = Field(512, ge=2)
    band_lambdas: List[float] = Field(default_factory=lambda: [0.0, 0.25, 0.5, 0.75, 1.0])

    @model_validator(mode="after")
    def _unit_interval(self) -> "Grids":
        if any(not 0.0 <= lam <= 1.0 for lam in self.band_lambdas):
            raise ValueError("band_lambdas must lie in [0, 1]")
        return self


class Tolerances(_Strict):
    gap: float = Field(1e-9, gt=0)
    occupation: float = Field(1e-6, gt=0)
    covariance: float = Field(1e-3, gt=0)
    ed: float = Field(1e-8, gt=0)
    filter_tail: float = Field(1e-10, gt=0)


class RunConfig(_Strict):
    """Everything needed to reproduce one run; round-trips through JSON."""

    subcommand: Subcommand
    target: Optional[VerifyTarget] = None
    Lx: Optional[int] = Field(None, ge=2, le=64, description="torus width; per-target default when unset")
    Ly: Optional[int] = Field(None, ge=2, le=64)
    direction: Literal["x", "y"] = "x"
    nu: List[int] = Field(default_factory=lambda: [1])
    scales: int = Field(2, ge=1, le=4)
    physical: PhysicalParams = Field(default_factory=PhysicalParams)
    filter: FilterParams = Field(default_factory=FilterParams)
    grids: Grids = Field(default_factory=Grids)
    tolerances: Tolerances = Field(default_factory=Tolerances)
    out_dir: str = "out"
    seed: int = 0

    @model_validator(mode="after")
    def _consistent(self) -> "RunConfig":
        if self.subcommand == "verify" and self.target is None:
            raise ValueError("verify needs a target")
        if self.subcommand != "verify" and self.target is not None:
            raise ValueError("target is only meaningful for verify")
        if any(not 0 <= v <= 16 for v in self.nu):
            raise ValueError("nu must lie in 0..16")
        return self


class Table(BaseModel):
    columns: List[str]
    rows: List[List[float]]


class Certificate(BaseModel):
    """Result bundle: inputs, per-check outcomes and numeric tables."""

    kind: str
    passed: bool
    status: Literal["pass", "partial", "fail"]
    message: str = ""
    config: RunConfig
    checks: Dict[str, bool] = Field(default_factory=dict)
    data: Dict[str, Any] = Field(default_factory=dict)
    tables: Dict[str, Table] = Field(default_factory=dict)


class Health(BaseModel):
    status: Literal["ok"] = "ok"
    version: str

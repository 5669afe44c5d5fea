"""Request and response models of the HTTP service."""

from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ParamsMixin(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    lam: float = Field(alias="lambda", gt=0, description="cosmological constant")


class RootsRequest(ParamsMixin):
    m: float = Field(gt=0)
    q: float = Field(default=0.0, ge=0)
    a: float = Field(default=0.0, ge=0)


class RootsResponse(BaseModel):
    admissible: bool
    regime: str
    r_mm: float
    r_minus: float
    r_plus: float
    r_c: float
    min_gap: float
    classification: List[str]
    residuals: List[float]


class SpectrumRequest(ParamsMixin):
    q: float = Field(default=0.0, ge=0)
    r0: float = Field(gt=0)
    k: Optional[int] = Field(default=None, ge=0, description="highest mode to report")


class SpectrumMode(BaseModel):
    value: float
    multiplicity: int
    mode: int


class SpectrumResponse(BaseModel):
    r0: float
    lambda1: float
    lambda2: float
    index: int
    stable_symmetrized: bool
    degenerate: bool
    unstable_full: bool
    eigenvalues: List[SpectrumMode]


class EigsolveRequest(ParamsMixin):
    m: float = Field(gt=0)
    q: float = Field(default=0.0, ge=0)
    a: float = Field(default=0.0, ge=0)
    r0: Optional[float] = Field(default=None, gt=0,
                                description="defaults to the cosmological radius")
    grid_n: int = Field(default=256, ge=16)
    count: int = Field(default=4, ge=1)


class NumericEigenvalue(BaseModel):
    value: float
    error_estimate: float
    raw_coarse: float
    raw_fine: float
    m_mode: int
    multiplicity: int


class EigsolveResponse(BaseModel):
    r0: float
    grid_n: int
    entries: List[NumericEigenvalue]
    values: List[float]
    closed_form: Optional[List[float]] = Field(
        default=None, description="ladder values for comparison when a = 0"
    )


class SweepRequest(ParamsMixin):
    m: float = Field(gt=0)
    q: float = Field(default=0.0, ge=0)
    a_list: List[float]
    grid_n: int = Field(default=128, ge=16)
    count: int = Field(default=4, ge=1)


class SweepRowModel(BaseModel):
    a: float
    r0: float
    values: List[float]
    error_estimates: List[float]
    drift: List[float]
    signs_ok: bool
    zero_charge_radius_ok: Optional[bool] = None


class SweepResponse(BaseModel):
    rows: List[SweepRowModel]
    a_star: Optional[float]
    frozen_potential: float
    grid_n: int
    count: int


class AreaChargeRequest(ParamsMixin):
    area: Optional[float] = Field(default=None, gt=0)
    charge: Optional[float] = None
    m: Optional[float] = Field(default=None, gt=0)
    q: Optional[float] = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _exactly_one_mode(self):
        direct = self.area is not None and self.charge is not None
        derived = self.m is not None
        if direct == derived:
            raise ValueError("provide either area and charge, or m (with optional q)")
        return self


class AreaChargeResponse(BaseModel):
    lam: float = Field(serialization_alias="lambda")
    area: float
    charge: float
    margin: float
    holds: bool
    rigidity: bool
    charge_bound_ok: bool
    area_window: Optional[Tuple[float, float]]
    interpretation: Optional[str]
    r_c: Optional[float] = None
    lambda2: Optional[float] = None
    margin_spectral: Optional[float] = None


class ScanRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    lam: List[float] = Field(alias="lambda")
    m: List[float]
    q: List[float] = Field(default_factory=lambda: [0.0])
    a: List[float] = Field(default_factory=lambda: [0.0])
    jobs: int = Field(default=1, ge=1)


class ScanResponse(BaseModel):
    columns: List[str]
    rows: List[Dict]
    any_inadmissible: bool


class CheckRequest(BaseModel):
    seed: Optional[int] = None
    scale: float = Field(default=1.0, gt=0)


class CheckOutcome(BaseModel):
    passed: bool
    detail: str


class CheckResponse(BaseModel):
    passed: bool
    results: Dict[str, CheckOutcome]


class HealthResponse(BaseModel):
    status: str
    version: str

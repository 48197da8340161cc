"""Request/response models for the HTTP service and the CLI.

Model field order fixes the JSON key order everywhere a report is
emitted, which is what makes repeated runs byte-identical.  Exact
rationals are serialized as decimal integers when integral and as
"num/den" strings otherwise.
"""

from __future__ import annotations

from pydantic import BaseModel, Field


class FieldInfoRequest(BaseModel):
    p: int
    s: int = 1
    n: int = 1


class FieldInfoResponse(BaseModel):
    ctx: str
    p: int
    s: int
    n: int
    q: int
    order: int
    modulus_q: str
    modulus_L: str


class ModuleRequest(BaseModel):
    p: int
    s: int = 1
    P: str
    m: int
    a2: int
    a3: int
    root: int = 0


class CharPolyResponse(BaseModel):
    module: str
    ctx: str
    P: str
    m: int
    gamma_T: int
    c: str
    mu: int
    char_poly: str
    label: str
    supersingular: bool


class ClassifyRequest(BaseModel):
    p: int
    s: int = 1
    P: str
    m: int
    c: str
    mu: int


class ClassifyResponse(BaseModel):
    P: str
    m: int
    c: str
    mu: int
    label: str
    reason: str


class CensusRequest(BaseModel):
    p: int
    s: int = 1
    P: str
    m: int
    max_work: int | None = None


class CensusParams(BaseModel):
    p: int
    s: int
    q: int
    P: str
    d: int
    m: int
    n: int
    ctx: str


class ClassEntry(BaseModel):
    c: str
    mu: int
    label: str
    chi: str


class Discrepancy(BaseModel):
    kind: str
    detail: str


class CensusResponse(BaseModel):
    params: CensusParams
    class_list: list[ClassEntry]
    n_classes: int
    closed_form_classes: int | str | None
    classes_match: bool | None
    chi_list: list[str]
    n_chi: int
    fiber_histogram: dict[str, int]
    H: int | None
    B: int | None
    closed_form_chi: int | str | None
    chi_match: bool | None
    fiber_relation: str
    discrepancies: list[Discrepancy]


class SweepRequest(CensusRequest):
    root: int = 0


class SweepEntry(BaseModel):
    c: str
    mu: int
    label: str


class SweepResponse(BaseModel):
    params: CensusParams
    root: int
    n_modules: int
    realized: list[SweepEntry]
    predicted_not_realized: list[SweepEntry]
    realized_not_predicted: list[SweepEntry]
    match: bool


class EndoRequest(ModuleRequest):
    pass


class EndoResponse(BaseModel):
    module: str
    c: str
    mu: int
    disc: str
    g: str
    omega: str
    measured_f: str
    is_maximal: bool
    order_lattice: list[str]
    conductor_cross_checked: bool


class GridPointRequest(BaseModel):
    p: int
    s: int = 1
    P: str
    m: int


class GridRequest(BaseModel):
    points: list[GridPointRequest] = Field(min_length=1)
    brute_force: bool = False
    endo: bool = False
    max_work: int | None = None


class GridRowModel(BaseModel):
    p: int
    s: int
    P: str
    m: int
    d: int
    n: int
    status: str
    n_classes: int | None = None
    closed_form_classes: int | str | None = None
    classes_match: str = ""
    n_chi: int | None = None
    closed_form_chi: int | str | None = None
    chi_match: str = ""
    fiber_relation: str = ""
    H: int | None = None
    B: int | None = None
    sweep_n_modules: int | None = None
    sweep_unrealized: int | None = None
    sweep_unpredicted: int | None = None
    sweep_match: str = ""
    conductors_realized: str = ""
    warning: str = ""


class GridResponse(BaseModel):
    meta: dict[str, str]
    rows: list[GridRowModel]


class HealthResponse(BaseModel):
    status: str
    version: str

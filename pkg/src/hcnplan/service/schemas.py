"""Request/response models of the planning service."""
from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

from ..multi_cell import NetworkPlan
from ..scenario import ProfilesSpec, ScenarioSpec


class HealthResponse(BaseModel):
    status: str
    version: str


class ScenarioValidationResponse(BaseModel):
    valid: bool
    violations: list[str]


class OutageValidationRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    trials: int = 10000
    seed: int = 12345


class OutageRowModel(BaseModel):
    case: str
    rate_req: float
    bandwidth: float
    closed_form: float
    monte_carlo: float
    rel_error: float
    regime_ok: bool
    counted: bool


class OutageValidationResponse(BaseModel):
    rows: list[OutageRowModel]
    passed: bool


class QueueRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    lambda_e: float
    mu_e: float
    l_max: int | None = None
    tol: float = 1e-8
    simulate: bool = True
    trials: int = 10000
    horizon: float | None = None
    seed: int = 12345


class QueueResponse(BaseModel):
    stable: bool
    rho: float
    q0: float
    q1: float
    q: list[float] = Field(default_factory=list)
    empirical: list[float] | None = None
    empirical_empty_fraction: float | None = None
    shutdown_rate: float | None = None
    tv_distance: float | None = None


class CellSweepRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    scenario: ScenarioSpec
    cell: int = 0
    param: str = "energy_arrival"
    values: list[float]


class CellSweepRow(BaseModel):
    value: float
    gain_optimal: float
    gain_greedy: float
    mu_opt: float
    active: bool


class CellSweepResponse(BaseModel):
    param: str
    cell: int
    rows: list[CellSweepRow]


class PowerBreakdownModel(BaseModel):
    mbs: float
    cells: list[float]
    handover: float
    total: float


class CellPlanModel(BaseModel):
    active: bool
    mu_e: float
    phi: float
    gain: float
    delta_bw: float
    w_ss: float
    w_ms_active: float
    w_ms_off: float


class PlanModel(BaseModel):
    method: str
    feasible: bool
    deficit: float
    w_mm: float
    w_m_max: float
    power: PowerBreakdownModel
    cells: list[CellPlanModel]

    @classmethod
    def from_plan(cls, plan: NetworkPlan) -> "PlanModel":
        cells = [CellPlanModel(active=a.active, mu_e=a.mu_e, phi=a.phi,
                               gain=d.gain, delta_bw=d.delta_bw, w_ss=a.w_ss,
                               w_ms_active=a.w_ms_active, w_ms_off=a.w_ms_off)
                 for a, d in zip(plan.alloc.cells, plan.decisions)]
        return cls(method=plan.method, feasible=plan.feasible, deficit=plan.deficit,
                   w_mm=plan.alloc.w_mm, w_m_max=plan.w_m_max,
                   power=PowerBreakdownModel(mbs=plan.power.mbs,
                                             cells=list(plan.power.cells),
                                             handover=plan.power.handover,
                                             total=plan.power.total),
                   cells=cells)


class PlanRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    scenario: ScenarioSpec
    method: str = "teato"


class DailyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    scenario: ScenarioSpec
    methods: list[str]
    profiles: ProfilesSpec | None = None    # overrides any profiles in the scenario


class DailyRowModel(BaseModel):
    period: int
    method: str
    feasible: bool
    p_mbs: float
    p_sbs_total: float
    p_ho: float
    total: float
    normalized: float


class DailySummaryModel(BaseModel):
    reference_power: float
    mean_power: dict[str, float]
    mean_normalized: dict[str, float]
    savings_pct: dict[str, dict[str, float]]
    infeasible_periods: dict[str, int]


class DailyResponse(BaseModel):
    rows: list[DailyRowModel]
    summary: DailySummaryModel

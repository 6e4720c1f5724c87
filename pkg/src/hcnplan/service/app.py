"""FastAPI application exposing the planner over HTTP.

The CLI talks to this app in-process by default; ``hcnplan serve`` runs it as
a standalone service.
"""
from __future__ import annotations

from dataclasses import replace

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..energy_queue import (UnstableQueueError, empty_probability,
                            stationary_distribution)
from ..model import ParameterError
from ..montecarlo import SimConfig, simulate_energy_queue
from ..multi_cell import METHODS
from ..scenario import ScenarioError, ScenarioSpec, _profiles_from_spec, daily_run
from ..single_cell import cell_context, decide, greedy_decision
from ..validation import run_outage_validation
from . import schemas as s


def _build_scenario(spec: ScenarioSpec):
    from ..model import validate_scenario
    scenario, profiles = spec.build()
    violations = validate_scenario(scenario)
    if violations:
        raise ScenarioError("scenario invariants violated: " + "; ".join(violations))
    return scenario, profiles


def create_app() -> FastAPI:
    app = FastAPI(title="hcnplan", version=__version__,
                  description="Energy-aware traffic offloading planner for "
                              "heterogeneous cellular networks")

    @app.exception_handler(ParameterError)
    @app.exception_handler(ScenarioError)
    async def _domain_error(request: Request, exc: Exception):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/health", response_model=s.HealthResponse)
    def health() -> s.HealthResponse:
        return s.HealthResponse(status="ok", version=__version__)

    @app.post("/scenario/validate", response_model=s.ScenarioValidationResponse)
    def validate(document: dict) -> s.ScenarioValidationResponse:
        from ..model import validate_scenario
        try:
            spec = ScenarioSpec.model_validate(document)
            scenario, _ = spec.build()
        except Exception as exc:   # schema/parameter errors become violations
            return s.ScenarioValidationResponse(valid=False, violations=[str(exc)])
        violations = validate_scenario(scenario)
        return s.ScenarioValidationResponse(valid=not violations, violations=violations)

    @app.post("/outage/validate", response_model=s.OutageValidationResponse)
    def outage_validate(req: s.OutageValidationRequest) -> s.OutageValidationResponse:
        rows, passed = run_outage_validation(trials=req.trials, seed=req.seed)
        return s.OutageValidationResponse(
            rows=[s.OutageRowModel(**row.__dict__) for row in rows], passed=passed)

    @app.post("/queue/analyze", response_model=s.QueueResponse)
    def queue_analyze(req: s.QueueRequest) -> s.QueueResponse:
        try:
            stat = stationary_distribution(req.lambda_e, req.mu_e,
                                           l_max=req.l_max, tol=req.tol)
        except UnstableQueueError:
            return s.QueueResponse(stable=False,
                                   rho=req.lambda_e / req.mu_e,
                                   q0=empty_probability(req.lambda_e, req.mu_e),
                                   q1=0.0)
        resp = s.QueueResponse(stable=True, rho=stat.rho, q0=stat.q0, q1=stat.q1,
                               q=[float(v) for v in stat.q])
        if req.simulate:
            sim = simulate_energy_queue(
                req.lambda_e, req.mu_e,
                SimConfig(trials=req.trials, seed=req.seed, horizon=req.horizon))
            n = max(len(stat.q), len(sim.occupancy))
            a = np.zeros(n)
            a[:len(stat.q)] = stat.q
            b = np.zeros(n)
            b[:len(sim.occupancy)] = sim.occupancy
            resp.empirical = [float(v) for v in sim.occupancy]
            resp.empirical_empty_fraction = sim.empty_fraction
            resp.shutdown_rate = sim.shutdown_rate
            resp.tv_distance = float(0.5 * np.abs(a - b).sum())
        return resp

    @app.post("/cell/sweep", response_model=s.CellSweepResponse)
    def cell_sweep(req: s.CellSweepRequest) -> s.CellSweepResponse:
        scenario, _ = _build_scenario(req.scenario)
        if not 0 <= req.cell < len(scenario.cells):
            raise ParameterError(f"cell index {req.cell} out of range")
        if req.param not in ("energy_arrival", "user_density", "handover_cost"):
            raise ParameterError(
                "sweep param must be energy_arrival, user_density or handover_cost")
        rows = []
        for value in req.values:
            cells = list(scenario.cells)
            cells[req.cell] = replace(cells[req.cell], **{req.param: value})
            snapshot = replace(scenario, cells=tuple(cells))
            ctx = cell_context(snapshot, req.cell)
            opt = decide(ctx)
            greedy = greedy_decision(ctx)
            rows.append(s.CellSweepRow(value=value, gain_optimal=opt.gain,
                                       gain_greedy=greedy.gain, mu_opt=opt.mu_e,
                                       active=opt.active))
        return s.CellSweepResponse(param=req.param, cell=req.cell, rows=rows)

    @app.post("/plan", response_model=s.PlanModel)
    def plan(req: s.PlanRequest) -> s.PlanModel:
        scenario, _ = _build_scenario(req.scenario)
        if req.method not in METHODS:
            raise ParameterError(f"unknown method {req.method!r}; choose from {sorted(METHODS)}")
        return s.PlanModel.from_plan(METHODS[req.method](scenario))

    @app.post("/daily", response_model=s.DailyResponse)
    def daily(req: s.DailyRequest) -> s.DailyResponse:
        scenario, profiles = _build_scenario(req.scenario)
        if req.profiles is not None:
            profiles = _profiles_from_spec(req.profiles, scenario)
        if profiles is None:
            raise ParameterError("no daily profiles: supply them in the scenario or the request")
        if not req.methods:
            raise ParameterError("methods must not be empty")
        result = daily_run(scenario, profiles, req.methods)
        rows = []
        for outcome in result.periods:
            for method in req.methods:
                p = outcome.plans[method]
                rows.append(s.DailyRowModel(
                    period=outcome.period, method=method, feasible=p.feasible,
                    p_mbs=p.power.mbs, p_sbs_total=float(sum(p.power.cells)),
                    p_ho=p.power.handover, total=p.power.total,
                    normalized=p.power.total / result.reference))
        infeasible = {m: sum(1 for o in result.periods if not o.plans[m].feasible)
                      for m in req.methods}
        summary = s.DailySummaryModel(reference_power=result.reference,
                                      mean_power=result.mean_power,
                                      mean_normalized=result.mean_normalized,
                                      savings_pct=result.savings_pct,
                                      infeasible_periods=infeasible)
        return s.DailyResponse(rows=rows, summary=summary)

    return app


app = create_app()

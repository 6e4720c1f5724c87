"""Network-level power accounting and the multi-cell activation planners.

TEATO runs the single-cell optimizer per SBS, activates every positive-gain
cell, and — only if the MBS would be overloaded when all active RSBSs run out
of energy — reactivates sleeping hybrid/grid cells in increasing -gain/relief
order (the rounded-up solution of the relaxed 0-1 knapsack).  Exhaustive
enumeration and two greedy baselines share the same plan evaluator.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .energy_queue import empty_probability, handover_power
from .model import (CellAllocation, CellKind, OffloadDecision, ParameterError,
                    PowerBreakdown, Scenario, sbs_bandwidth_from_rate)
from .outage import required_bandwidths
from .single_cell import CellDecision, cell_context, decide, decide_hsbs, greedy_decision

# absorbs float dust when reactivation covers the deficit exactly
_BW_EPS = 1e-6

EXHAUSTIVE_CELL_LIMIT = 20


@dataclass(frozen=True)
class NetworkPlan:
    """A complete network decision with its bandwidth and power accounting."""

    method: str
    decisions: tuple[CellDecision, ...]
    alloc: OffloadDecision
    power: PowerBreakdown
    w_m_max: float
    feasible: bool
    deficit: float          # MBS bandwidth still missing (Hz); 0 when feasible


def _evaluate(scenario: Scenario, decisions) -> tuple[OffloadDecision, PowerBreakdown, float, bool]:
    phis = [d.phi if d.active else 0.0 for d in decisions]
    need = required_bandwidths(scenario, phis)
    mp = scenario.macro.power
    rf = mp.beta * mp.p_tx / mp.bandwidth

    allocs = []
    w_used = need.w_mm          # bandwidth the MBS actually powers
    w_worst = need.w_mm         # bandwidth needed if every active RSBS drains out
    p_cells = []
    p_ho = 0.0
    for cell, dec, wa, wo in zip(scenario.cells, decisions,
                                 need.w_ms_active, need.w_ms_off):
        if dec.active:
            w_ss = min(sbs_bandwidth_from_rate(dec.mu_e, cell.power, cell.energy_unit),
                       cell.power.bandwidth)
            q0 = empty_probability(cell.energy_arrival, dec.mu_e)
            if cell.kind == CellKind.RSBS:
                w_tilde = (1.0 - q0) * wa + q0 * wo
                w_worst += wo
                p_cells.append(0.0)
                p_ho += handover_power(cell.energy_arrival, dec.mu_e,
                                       cell.handover_cost, True)
            else:
                w_tilde = wa
                w_worst += wa
                # grid backup covers the empty-battery fraction (CSBS: q0 = 1)
                p_cells.append(q0 * dec.mu_e * cell.energy_unit)
        else:
            w_ss = 0.0
            w_tilde = wo
            w_worst += wo
            p_cells.append(0.0)
        w_used += w_tilde
        allocs.append(CellAllocation(active=dec.active,
                                     mu_e=dec.mu_e if dec.active else 0.0,
                                     phi=dec.phi if dec.active else 0.0,
                                     w_ss=w_ss, w_ms_active=wa, w_ms_off=wo))

    p_mbs = mp.p_const + rf * w_used
    power = PowerBreakdown.build(mbs=p_mbs, cells=tuple(p_cells), handover=p_ho)
    feasible = w_worst <= mp.bandwidth + _BW_EPS
    return OffloadDecision(cells=tuple(allocs), w_mm=need.w_mm), power, w_worst, feasible


def build_plan(scenario: Scenario, decisions, method: str) -> NetworkPlan:
    alloc, power, w_worst, feasible = _evaluate(scenario, decisions)
    return NetworkPlan(method=method, decisions=tuple(decisions), alloc=alloc,
                       power=power, w_m_max=w_worst, feasible=feasible,
                       deficit=max(0.0, w_worst - scenario.macro.power.bandwidth))


def network_power(plan: NetworkPlan, scenario: Scenario) -> PowerBreakdown:
    """Recompute the on-grid power breakdown of a plan from its decisions."""
    return _evaluate(scenario, plan.decisions)[1]


def mbs_power(plan: NetworkPlan, scenario: Scenario) -> float:
    """Recompute the MBS on-grid power of a plan."""
    return _evaluate(scenario, plan.decisions)[1].mbs


def w_m_max(plan: NetworkPlan, scenario: Scenario) -> float:
    """MBS bandwidth needed when all active RSBSs are down."""
    return _evaluate(scenario, plan.decisions)[2]


@dataclass(frozen=True)
class ReactivationCandidate:
    index: int
    gain: float      # <= 0: extra power paid when activated
    relief: float    # > 0: MBS bandwidth freed by activation


def reactivate_knapsack(candidates: list[ReactivationCandidate],
                        deficit: float) -> list[int] | None:
    """Pick cells covering ``deficit`` Hz at minimum extra power.

    Sorts by -gain/relief ascending (ties by index) and takes the shortest
    prefix whose combined relief covers the deficit -- the relaxed-LP solution
    with the fractional item rounded up.  Returns None when even all
    candidates cannot cover the deficit.
    """
    if deficit <= 0:
        raise ParameterError("deficit must be > 0")
    for cand in candidates:
        if cand.relief <= 0:
            raise ParameterError("knapsack candidates need positive relief")
    ordered = sorted(candidates, key=lambda c: (-c.gain / c.relief, c.index))
    chosen: list[int] = []
    covered = 0.0
    for cand in ordered:
        if covered >= deficit - _BW_EPS:
            break
        chosen.append(cand.index)
        covered += cand.relief
    if covered < deficit - _BW_EPS:
        return None
    return chosen


def teato(scenario: Scenario) -> NetworkPlan:
    """Two-stage planner: per-cell optima, then knapsack-ordered reactivation."""
    decisions = [decide(cell_context(scenario, i)) for i in range(len(scenario.cells))]
    plan = build_plan(scenario, decisions, "teato")
    if plan.feasible:
        return plan

    candidates = [ReactivationCandidate(index=i, gain=d.gain, relief=d.delta_bw)
                  for i, d in enumerate(decisions)
                  if not d.active and scenario.cells[i].kind != CellKind.RSBS
                  and d.delta_bw > 0]
    chosen = reactivate_knapsack(candidates, plan.deficit) if candidates else None
    if chosen is None:
        chosen = [c.index for c in candidates]   # best effort; stays infeasible
    for i in chosen:
        decisions[i] = replace(decisions[i], active=True)
    return build_plan(scenario, decisions, "teato")


def exhaustive_search(scenario: Scenario) -> NetworkPlan:
    """Enumerate all ON-OFF vectors with per-cell optimal rates; minimal feasible power wins."""
    n = len(scenario.cells)
    if n > EXHAUSTIVE_CELL_LIMIT:
        raise ParameterError(
            f"exhaustive search enumerates 2^{n} states; use <= {EXHAUSTIVE_CELL_LIMIT} "
            "cells or run teato() instead")
    base = [decide(cell_context(scenario, i)) for i in range(n)]
    best: NetworkPlan | None = None
    for mask in range(2 ** n):
        decisions = [replace(d, active=bool(mask >> i & 1)) for i, d in enumerate(base)]
        plan = build_plan(scenario, decisions, "exhaustive")
        if plan.feasible and (best is None or plan.power.total < best.power.total):
            best = plan
    if best is None:
        # nothing satisfies the bandwidth cap; report the all-on plan as evidence
        decisions = [replace(d, active=True) for d in base]
        best = build_plan(scenario, decisions, "exhaustive")
    return best


def greedy_no_sleep(scenario: Scenario) -> NetworkPlan:
    """Every SBS stays on and offloads as much as its bandwidth allows."""
    decisions = [greedy_decision(cell_context(scenario, i))
                 for i in range(len(scenario.cells))]
    return build_plan(scenario, decisions, "greedy_no_sleep")


def greedy_with_sleep(scenario: Scenario) -> NetworkPlan:
    """Greedy offloading, but CSBSs with non-positive gain sleep while the MBS stays feasible."""
    decisions = [greedy_decision(cell_context(scenario, i))
                 for i in range(len(scenario.cells))]
    for i, cell in enumerate(scenario.cells):
        if cell.kind != CellKind.CSBS:
            continue
        if decide_hsbs(cell_context(scenario, i)).gain > 0:
            continue
        trial = list(decisions)
        trial[i] = replace(trial[i], active=False)
        if build_plan(scenario, trial, "greedy_with_sleep").feasible:
            decisions = trial
    return build_plan(scenario, decisions, "greedy_with_sleep")


def reference_power(scenario: Scenario) -> float:
    """All-cells-on, full-bandwidth, no-sleep baseline used to normalize daily results."""
    mp = scenario.macro.power
    total = mp.p_const + mp.beta * mp.p_tx
    for cell in scenario.cells:
        total += cell.power.p_const + cell.power.beta * cell.power.p_tx
    return total


METHODS = {
    "teato": teato,
    "greedy_no_sleep": greedy_no_sleep,
    "greedy_with_sleep": greedy_with_sleep,
    "exhaustive": exhaustive_search,
}

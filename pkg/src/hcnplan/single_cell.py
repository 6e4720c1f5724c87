"""Single-SBS activation and offloading optimization.

The power-saving gain of activating one SBS is available in closed form as a
function of the energy consumption rate mu_e; this module houses those gain
curves, their optimizers, and the resulting per-cell decisions.  A CSBS is
treated as a hybrid cell whose energy arrival rate is zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import (BsPowerParams, CellKind, ParameterError, QosConfig, Scenario,
                    SmallCellConfig, sbs_bandwidth_from_rate)
from .outage import SpectralEfficiencies, spectral_efficiencies

_BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class CellContext:
    """Everything the single-cell optimizer needs to know about one SBS."""

    cell: SmallCellConfig
    taus: SpectralEfficiencies
    macro_power: BsPowerParams
    qos: QosConfig


@dataclass(frozen=True)
class CellDecision:
    """ON-OFF verdict plus the operating point to use if the cell is activated.

    ``mu_e``/``phi`` always describe the gain-optimal activation candidate,
    even when ``active`` is False; the reactivation stage of the multi-cell
    planner needs them.  ``delta_bw`` is the MBS bandwidth relieved by
    activation (zero for an RSBS, whose off-state bandwidth stays reserved).
    """

    active: bool
    mu_e: float
    phi: float
    gain: float
    delta_bw: float


def cell_context(scenario: Scenario, index: int) -> CellContext:
    """Build the optimization context of cell ``index``, recomputing efficiencies."""
    return CellContext(cell=scenario.cells[index],
                       taus=spectral_efficiencies(scenario, index),
                       macro_power=scenario.macro.power,
                       qos=scenario.qos)


def zeta_ee(ctx: CellContext) -> float:
    """Energy-efficiency ratio of serving one user at the SBS versus at the MBS."""
    mp, sp = ctx.macro_power, ctx.cell.power
    return (sp.bandwidth * ctx.taus.tau_ss * mp.beta * mp.p_tx
            / (mp.bandwidth * ctx.taus.tau_ms * sp.beta * sp.p_tx))


def kappa(ctx: CellContext) -> float:
    """Fixed activation cost weighed against handover cost in the RSBS tradeoff."""
    return zeta_ee(ctx) * ctx.cell.power.p_const + _msu_rate_power(ctx)


def _msu_rate_power(ctx: CellContext) -> float:
    # MBS RF power consumed per served rate requirement, via tau_ms
    mp = ctx.macro_power
    return ctx.qos.rate_req * mp.beta * mp.p_tx / (ctx.taus.tau_ms * mp.bandwidth)


def mu_feasible_bounds(ctx: CellContext) -> tuple[float, float]:
    """Energy-rate window [idle drain, full-offload drain] the optimizer moves in."""
    sp, e = ctx.cell.power, ctx.cell.energy_unit
    cap = min(1.0, ctx.qos.rate_req / (ctx.taus.tau_ss * sp.bandwidth)
              * (ctx.cell.mean_users + 1.0))
    return sp.p_const / e, (sp.p_const + cap * sp.beta * sp.p_tx) / e


def offload_ratio(ctx: CellContext, w_ss: float, clamp: bool = True) -> float:
    """Largest SSU share servable on ``w_ss`` Hz within the outage constraint."""
    users = ctx.cell.mean_users
    if users <= 0:
        return 1.0
    phi = (ctx.taus.tau_ss * w_ss / ctx.qos.rate_req - 1.0) / users
    return min(1.0, max(0.0, phi)) if clamp else phi


def _check_mu(mu_e, ctx: CellContext) -> None:
    lo, hi = mu_feasible_bounds(ctx)
    slack = _BOUND_SLACK * hi
    if np.any(np.asarray(mu_e) < lo - slack) or np.any(np.asarray(mu_e) > hi + slack):
        raise ParameterError(f"mu_e outside feasible bounds [{lo}, {hi}]")


def gain_hsbs(mu_e, ctx: CellContext):
    """Power-saving gain of running an HSBS (or CSBS) at rate ``mu_e``.

    Piecewise linear with a single breakpoint at mu_e = lambda_e; accepts
    scalars or arrays.
    """
    _check_mu(mu_e, ctx)
    mu = np.asarray(mu_e, dtype=float)
    lam, e = ctx.cell.energy_arrival, ctx.cell.energy_unit
    z = zeta_ee(ctx)
    base = z * ctx.cell.power.p_const + _msu_rate_power(ctx)
    surplus = z * mu * e - base
    deficit = (z - 1.0) * mu * e - base + lam * e
    out = np.where(mu <= lam, surplus, deficit)
    return float(out) if np.isscalar(mu_e) else out


def gain_rsbs(mu_e, ctx: CellContext):
    """Power-saving gain of running an RSBS at rate ``mu_e`` (MBS savings minus handover)."""
    _check_mu(mu_e, ctx)
    mu = np.asarray(mu_e, dtype=float)
    lam, e = ctx.cell.energy_arrival, ctx.cell.energy_unit
    k = kappa(ctx)
    z = zeta_ee(ctx)
    with np.errstate(divide="ignore", invalid="ignore"):
        x = np.where(mu > 0, lam / mu, np.inf)
        mbs_saving = np.where(mu <= lam, z * mu * e - k, z * lam * e - x * k)
        p_ho = np.where(x < 1.0,
                        2.0 * (1.0 - x) * (1.0 - np.exp(-x)) * mu * ctx.cell.handover_cost,
                        0.0)
    out = mbs_saving - p_ho
    return float(out) if np.isscalar(mu_e) else out


def concavity_factor(x):
    """Decreasing factor f(x) = e^-x (e^x - 1 - x + x^2) / x^2 driving the RSBS tradeoff.

    The gain derivative against x = lambda_e/mu_e is
    ``-kappa + 2*lambda_e*c_ho*f(x)``; f stays within (1 - 1/e, 3/2) on (0, 1).
    """
    xa = np.asarray(x, dtype=float)
    out = np.exp(-xa) * (np.exp(xa) - 1.0 - xa + xa * xa) / (xa * xa)
    return float(out) if np.isscalar(x) else out


def optimal_mu_hsbs(ctx: CellContext) -> float:
    """Gain-maximizing energy rate of an HSBS/CSBS."""
    lo, hi = mu_feasible_bounds(ctx)
    if zeta_ee(ctx) > 1.0:
        # gain strictly increases in mu: saturate bandwidth up to the QoS need
        return hi
    # otherwise the piecewise-linear gain peaks where the battery just keeps up
    candidates = [lo, min(max(ctx.cell.energy_arrival, lo), hi), hi]
    return max(candidates, key=lambda m: gain_hsbs(m, ctx))


def _interior_root(ctx: CellContext) -> float | None:
    """Solve f(x) = kappa / (2 lambda c_ho) on (0, 1) by bisection, tol 1e-9."""
    lam, cho = ctx.cell.energy_arrival, ctx.cell.handover_cost
    if lam <= 0 or cho <= 0:
        return None
    target = kappa(ctx) / (2.0 * lam * cho)
    a, b = 1e-12, 1.0 - 1e-12
    fa, fb = concavity_factor(a), concavity_factor(b)
    if not (fb < target < fa):        # f is strictly decreasing
        return None
    while b - a > 1e-9:
        mid = 0.5 * (a + b)
        if concavity_factor(mid) > target:
            a = mid
        else:
            b = mid
    return 0.5 * (a + b)


def optimal_mu_rsbs(ctx: CellContext) -> float:
    """Gain-maximizing energy rate of an RSBS.

    Case split on kappa versus the handover cost scale, with the interior
    stationary point recovered by bisection; all closed-form candidates are
    compared by gain so case-boundary misclassification cannot bite.
    """
    lo, hi = mu_feasible_bounds(ctx)
    lam = ctx.cell.energy_arrival
    candidates = [lo, hi]
    if lo < lam < hi:
        candidates.append(lam)
    x_root = _interior_root(ctx)
    if x_root is not None:
        candidates.append(min(max(lam / x_root, lo), hi))
    return max(candidates, key=lambda m: gain_rsbs(m, ctx))


def _decision(ctx: CellContext, mu_opt: float, gain: float, active: bool,
              rsbs: bool) -> CellDecision:
    w_ss = sbs_bandwidth_from_rate(mu_opt, ctx.cell.power, ctx.cell.energy_unit)
    phi = offload_ratio(ctx, w_ss)
    if rsbs:
        delta = 0.0   # the off-state MSU bandwidth stays reserved either way
    else:
        delta = ctx.qos.rate_req / ctx.taus.tau_ms * phi * ctx.cell.mean_users
    return CellDecision(active=active, mu_e=mu_opt, phi=phi, gain=gain, delta_bw=delta)


def decide_hsbs(ctx: CellContext, mbs_overloaded: bool = False) -> CellDecision:
    """Activation verdict for an HSBS/CSBS; overload at the MBS forces activation."""
    mu_opt = optimal_mu_hsbs(ctx)
    g = gain_hsbs(mu_opt, ctx)
    return _decision(ctx, mu_opt, g, active=bool(g > 0.0 or mbs_overloaded), rsbs=False)


def decide_rsbs(ctx: CellContext) -> CellDecision:
    """Activation verdict for an RSBS: on only when the best gain is positive."""
    mu_opt = optimal_mu_rsbs(ctx)
    g = gain_rsbs(mu_opt, ctx)
    return _decision(ctx, mu_opt, g, active=bool(g > 0.0), rsbs=True)


def decide(ctx: CellContext, mbs_overloaded: bool = False) -> CellDecision:
    if ctx.cell.kind == CellKind.RSBS:
        return decide_rsbs(ctx)
    return decide_hsbs(ctx, mbs_overloaded=mbs_overloaded)


def greedy_decision(ctx: CellContext) -> CellDecision:
    """Always-on baseline: offload as many users as the SBS bandwidth allows."""
    _, hi = mu_feasible_bounds(ctx)
    g = gain_rsbs(hi, ctx) if ctx.cell.kind == CellKind.RSBS else gain_hsbs(hi, ctx)
    return _decision(ctx, hi, g, active=True, rsbs=ctx.cell.kind == CellKind.RSBS)

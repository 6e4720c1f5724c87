"""Closed-form outage probabilities and the bandwidth demands they induce.

The closed forms hold asymptotically (high SINR, bandwidth large against the
rate requirement); raw values outside [0, 1] are clamped and flagged instead
of rejected, because the optimizer only ever consumes the constraint form
``w_bar * tau >= rate_req``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .model import ParameterError, RadioEnv, QosConfig, Scenario, SmallCellConfig


@dataclass(frozen=True)
class SpectralEfficiencies:
    """Edge-user spectrum efficiencies (bit/s/Hz) of the three user classes."""

    tau_ss: float
    tau_mm: float
    tau_ms: float


@dataclass(frozen=True)
class ClosedFormOutage:
    probability: float      # clamped to [0, 1]
    raw: float
    regime_ok: bool         # False when the asymptotic expression left [0, 1]


def _clamped(raw: float) -> ClosedFormOutage:
    return ClosedFormOutage(probability=min(1.0, max(0.0, raw)), raw=raw,
                            regime_ok=0.0 <= raw <= 1.0)


def outage_ssu_closed(cell: SmallCellConfig, env: RadioEnv, qos: QosConfig,
                      w_ss: float, phi: float) -> ClosedFormOutage:
    """Outage probability of a user served by its SBS on ``w_ss`` Hz at offload ratio ``phi``."""
    if w_ss <= 0:
        raise ParameterError("w_ss must be > 0")
    if not 0.0 <= phi <= 1.0:
        raise ParameterError("phi must lie in [0, 1]")
    ws = cell.power.bandwidth
    coeff = (2.0 * cell.radius**env.alpha_s * (env.theta_s + 1.0)
             * env.noise_density * ws / ((env.alpha_s + 2.0) * cell.power.p_tx))
    load = math.pi * cell.radius**2 * phi * cell.user_density
    raw = coeff * (2.0 ** ((qos.rate_req / w_ss) * (1.0 + load)) - 1.0)
    return _clamped(raw)


def outage_msu_closed(cell: SmallCellConfig, scenario: Scenario,
                      w_ms: float, phi: float) -> ClosedFormOutage:
    """Outage probability of in-cell users kept on the MBS (all placed at the SBS site)."""
    if w_ms <= 0:
        raise ParameterError("w_ms must be > 0")
    if not 0.0 <= phi <= 1.0:
        raise ParameterError("phi must lie in [0, 1]")
    env, qos, macro = scenario.env, scenario.qos, scenario.macro
    coeff = ((env.theta_m + 1.0) * env.noise_density * macro.power.bandwidth
             * cell.dist_to_mbs**env.alpha_m / macro.power.p_tx)
    load = math.pi * cell.radius**2 * (1.0 - phi) * cell.user_density
    raw = coeff * (2.0 ** ((qos.rate_req / w_ms) * (1.0 + load)) - 1.0)
    return _clamped(raw)


def tau_ss(cell: SmallCellConfig, env: RadioEnv, qos: QosConfig) -> float:
    """Edge spectrum efficiency of SBS-served users in ``cell``."""
    return math.log2(1.0 + cell.power.p_tx / (env.theta_s + 1.0)
                     * (env.alpha_s + 2.0) / (2.0 * env.noise_density * cell.power.bandwidth)
                     * qos.eta / cell.radius**env.alpha_s)


def mmu_effective_density(scenario: Scenario) -> float:
    """Macro-user density smeared over the whole macro disc (small cells carved out)."""
    d0sq = scenario.macro.radius**2
    carve = sum(c.radius**2 for c in scenario.cells)
    if carve >= d0sq:
        raise ParameterError("small cells exceed the macro disc area")
    return scenario.rho0 * (d0sq - carve) / d0sq


def tau_mm(scenario: Scenario) -> float:
    """Edge spectrum efficiency of macro users."""
    env, qos, macro = scenario.env, scenario.qos, scenario.macro
    return math.log2(1.0 + macro.power.p_tx / (env.theta_m + 1.0)
                     * (env.alpha_m + 2.0) / (2.0 * env.noise_density * macro.power.bandwidth)
                     * qos.eta / macro.radius**env.alpha_m)


def tau_ms(cell: SmallCellConfig, scenario: Scenario) -> float:
    """Spectrum efficiency of cell-``n`` users served by the MBS at the SBS site."""
    if cell.dist_to_mbs <= 0:
        raise ParameterError("tau_ms diverges at dist_to_mbs = 0 (co-located SBS/MBS)")
    env, qos, macro = scenario.env, scenario.qos, scenario.macro
    return math.log2(1.0 + qos.eta * macro.power.p_tx
                     / (env.noise_density * macro.power.bandwidth * (env.theta_m + 1.0)
                        * cell.dist_to_mbs**env.alpha_m))


def spectral_efficiencies(scenario: Scenario, cell_index: int) -> SpectralEfficiencies:
    cell = scenario.cells[cell_index]
    return SpectralEfficiencies(tau_ss=tau_ss(cell, scenario.env, scenario.qos),
                                tau_mm=tau_mm(scenario),
                                tau_ms=tau_ms(cell, scenario))


@dataclass(frozen=True)
class RequiredBandwidths:
    """Minimum bandwidths meeting the outage constraints at the given offload ratios."""

    w_mm: float
    w_ms_active: tuple[float, ...]
    w_ms_off: tuple[float, ...]
    w_ss_min: tuple[float, ...]


def required_bandwidths(scenario: Scenario, phis: list[float] | tuple[float, ...]) -> RequiredBandwidths:
    """Bandwidth demands of MMUs, per-cell MSUs (active/off SBS) and per-cell SSUs."""
    if len(phis) != len(scenario.cells):
        raise ParameterError("one offload ratio per cell required")
    rq = scenario.qos.rate_req
    rho_eff = mmu_effective_density(scenario)
    w_mm = rq / tau_mm(scenario) * (1.0 + math.pi * scenario.macro.radius**2 * rho_eff)
    act, off, ssm = [], [], []
    for cell, phi in zip(scenario.cells, phis):
        if not 0.0 <= phi <= 1.0:
            raise ParameterError("offload ratios must lie in [0, 1]")
        users = cell.mean_users
        t_ms = tau_ms(cell, scenario)
        t_ss = tau_ss(cell, scenario.env, scenario.qos)
        off.append(rq / t_ms * (1.0 + users))
        act.append(rq / t_ms * (1.0 + (1.0 - phi) * users))
        ssm.append(rq / t_ss * (1.0 + phi * users))
    return RequiredBandwidths(w_mm=w_mm, w_ms_active=tuple(act),
                              w_ms_off=tuple(off), w_ss_min=tuple(ssm))

"""Domain types and base-station power primitives shared by all planner modules.

Units are SI throughout: W, Hz, J, m, users/m^2, energy units/s.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class ParameterError(ValueError):
    """A numeric argument is outside its physical domain."""


class CellKind(str, Enum):
    CSBS = "CSBS"   # grid power only
    RSBS = "RSBS"   # renewable power only
    HSBS = "HSBS"   # hybrid: renewable with grid backup


@dataclass(frozen=True)
class BsPowerParams:
    """Power model of one BS: active power = p_const + (w/bandwidth) * beta * p_tx."""

    p_tx: float
    p_const: float
    beta: float
    bandwidth: float

    def __post_init__(self):
        for name in ("p_tx", "p_const", "beta", "bandwidth"):
            if getattr(self, name) <= 0:
                raise ParameterError(f"BsPowerParams.{name} must be > 0")


@dataclass(frozen=True)
class QosConfig:
    """Per-user rate requirement (bit/s) and maximum tolerated outage probability."""

    rate_req: float
    eta: float

    def __post_init__(self):
        if self.rate_req <= 0:
            raise ParameterError("QosConfig.rate_req must be > 0")
        if not 0.0 < self.eta < 1.0:
            raise ParameterError("QosConfig.eta must lie in (0, 1)")


@dataclass(frozen=True)
class RadioEnv:
    """Path-loss exponents, interference-to-noise ratios and noise density (W/Hz)."""

    alpha_m: float
    alpha_s: float
    theta_m: float
    theta_s: float
    noise_density: float

    def __post_init__(self):
        # alpha > 2 keeps the disc-averaged outage integrals finite
        if self.alpha_m <= 2 or self.alpha_s <= 2:
            raise ParameterError("path-loss exponents must be > 2")
        if self.theta_m < 0 or self.theta_s < 0:
            raise ParameterError("interference-to-noise ratios must be >= 0")
        if self.noise_density <= 0:
            raise ParameterError("noise_density must be > 0")


@dataclass(frozen=True)
class SmallCellConfig:
    """Geometry, radio, and energy-supply description of one small cell.

    ``angle`` is the polar angle (radians) of the cell centre as seen from the
    MBS; together with ``dist_to_mbs`` it fixes the cell position for the
    pairwise-overlap check.
    """

    kind: CellKind
    radius: float
    dist_to_mbs: float
    power: BsPowerParams
    energy_unit: float = 1.0
    energy_arrival: float = 0.0
    handover_cost: float = 0.0
    user_density: float = 0.0
    angle: float = 0.0

    def __post_init__(self):
        if self.radius <= 0:
            raise ParameterError("SmallCellConfig.radius must be > 0")
        if self.dist_to_mbs < 0:
            raise ParameterError("SmallCellConfig.dist_to_mbs must be >= 0")
        if self.energy_unit <= 0:
            raise ParameterError("SmallCellConfig.energy_unit must be > 0")
        if self.energy_arrival < 0:
            raise ParameterError("SmallCellConfig.energy_arrival must be >= 0")
        if self.kind == CellKind.CSBS and self.energy_arrival != 0:
            raise ParameterError("a CSBS has no harvester: energy_arrival must be 0")
        if self.handover_cost < 0:
            raise ParameterError("SmallCellConfig.handover_cost must be >= 0")
        if self.user_density < 0:
            raise ParameterError("SmallCellConfig.user_density must be >= 0")

    @property
    def mean_users(self) -> float:
        """Expected user count in the cell disc."""
        return self.user_density * math.pi * self.radius**2

    def position(self) -> tuple[float, float]:
        return (self.dist_to_mbs * math.cos(self.angle),
                self.dist_to_mbs * math.sin(self.angle))


@dataclass(frozen=True)
class MacroConfig:
    radius: float
    power: BsPowerParams

    def __post_init__(self):
        if self.radius <= 0:
            raise ParameterError("MacroConfig.radius must be > 0")


@dataclass(frozen=True)
class Scenario:
    """One macro cell plus its small cells; the single input artifact of the planner."""

    macro: MacroConfig
    env: RadioEnv
    qos: QosConfig
    cells: tuple[SmallCellConfig, ...]
    rho0: float

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        if self.rho0 < 0:
            raise ParameterError("Scenario.rho0 must be >= 0")


@dataclass(frozen=True)
class CellAllocation:
    """Bandwidth allocation of one small cell inside a network-wide decision."""

    active: bool
    mu_e: float
    phi: float
    w_ss: float
    w_ms_active: float
    w_ms_off: float


@dataclass(frozen=True)
class OffloadDecision:
    """Per-cell ON-OFF / offload / bandwidth allocations plus the MMU bandwidth."""

    cells: tuple[CellAllocation, ...]
    w_mm: float


@dataclass(frozen=True)
class PowerBreakdown:
    """On-grid power split by source; ``total`` is always the sum of the parts."""

    mbs: float
    cells: tuple[float, ...]
    handover: float
    total: float

    @classmethod
    def build(cls, mbs: float, cells: tuple[float, ...], handover: float) -> "PowerBreakdown":
        return cls(mbs=mbs, cells=cells, handover=handover,
                   total=mbs + sum(cells) + handover)


def bs_power(params: BsPowerParams, w_used: float, active: bool = True) -> float:
    """On-grid power draw of a BS utilizing ``w_used`` Hz; zero in sleep mode."""
    if not active:
        return 0.0
    if not 0.0 <= w_used <= params.bandwidth * (1 + 1e-12):
        raise ParameterError(
            f"w_used={w_used} outside [0, {params.bandwidth}]")
    return params.p_const + (w_used / params.bandwidth) * params.beta * params.p_tx


def energy_service_rate(params: BsPowerParams, w_ss: float, energy_unit: float) -> float:
    """Battery drain rate (units/s) of an SBS utilizing ``w_ss`` Hz."""
    if energy_unit <= 0:
        raise ParameterError("energy_unit must be > 0")
    return bs_power(params, w_ss) / energy_unit


def sbs_bandwidth_from_rate(mu_e: float, params: BsPowerParams, energy_unit: float) -> float:
    """Utilized bandwidth that drains the battery at ``mu_e`` units/s.

    Exact inverse of :func:`energy_service_rate`.
    """
    if energy_unit <= 0:
        raise ParameterError("energy_unit must be > 0")
    drain = mu_e * energy_unit
    if drain < params.p_const * (1 - 1e-12):
        raise ParameterError(
            f"mu_e*E={drain} W below idle power {params.p_const} W")
    return max(0.0, (drain - params.p_const) * params.bandwidth / (params.beta * params.p_tx))


def validate_scenario(scenario: Scenario) -> list[str]:
    """Check the geometric invariants; returns one message per violation."""
    violations: list[str] = []
    d0 = scenario.macro.radius
    if sum(c.radius**2 for c in scenario.cells) >= d0**2:
        violations.append(
            "cells: sum of squared small-cell radii must stay below the squared macro radius")
    for i, cell in enumerate(scenario.cells):
        if cell.dist_to_mbs + cell.radius > d0 * (1 + 1e-12):
            violations.append(
                f"cells[{i}]: dist_to_mbs + radius = {cell.dist_to_mbs + cell.radius} "
                f"exceeds macro radius {d0}")
    for i in range(len(scenario.cells)):
        for j in range(i + 1, len(scenario.cells)):
            a, b = scenario.cells[i], scenario.cells[j]
            xa, ya = a.position()
            xb, yb = b.position()
            if math.hypot(xa - xb, ya - yb) < (a.radius + b.radius) * (1 - 1e-12):
                violations.append(f"cells[{i}]/cells[{j}]: small-cell discs overlap")
    return violations

"""Scenario file ingestion, synthetic daily profiles, and the daily experiment runner.

Scenario documents are JSON with top-level keys ``macro``, ``env``, ``qos``,
``rho0``, ``cells`` and optionally ``profiles``.  Omitted radio fields fall
back to the standard micro/macro parameter set; noise density may be given
directly in W/Hz or as dBm/MHz.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, replace
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .model import (BsPowerParams, CellKind, MacroConfig, ParameterError, QosConfig,
                    RadioEnv, Scenario, SmallCellConfig, validate_scenario)
from .multi_cell import METHODS, NetworkPlan, reference_power


class ScenarioError(ValueError):
    """Scenario document failed to parse or violates an invariant."""


class PowerSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    p_tx: float
    p_const: float
    beta: float
    bandwidth: float


MACRO_POWER = PowerSpec(p_tx=20.0, p_const=130.0, beta=4.7, bandwidth=10e6)
MICRO_POWER = PowerSpec(p_tx=6.3, p_const=56.0, beta=2.6, bandwidth=5e6)
PICO_POWER = PowerSpec(p_tx=0.13, p_const=6.8, beta=4.0, bandwidth=5e6)


class MacroSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    radius: float = 1000.0
    power: PowerSpec = MACRO_POWER


class EnvSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    alpha_m: float = 3.5
    alpha_s: float = 4.0
    theta_m: float = 1000.0
    theta_s: float | None = None          # default depends on the cell count
    noise_w_per_hz: float | None = None
    noise_dbm_per_mhz: float = -105.0

    def noise_density(self) -> float:
        if self.noise_w_per_hz is not None:
            return self.noise_w_per_hz
        return 10.0 ** ((self.noise_dbm_per_mhz - 30.0) / 10.0) / 1e6


class CellSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    kind: CellKind
    radius: float = 300.0
    dist_to_mbs: float = 600.0
    power: PowerSpec = MICRO_POWER
    energy_unit: float = 1.0
    energy_arrival: float = 0.0
    handover_cost: float = 0.0
    user_density: float | None = None     # default: twice rho0
    angle_deg: float | None = None        # default: cells spread evenly


class ProfilesSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    kind: str | None = None               # "sunny" | "cloudy" for synthetic shapes
    periods: int = 24
    traffic_shape: list[float] | None = None
    energy_shape: list[float] | None = None
    traffic_peak: float | None = None     # users/m^2 reached by rho0 at shape = 1
    energy_peak: float | None = None      # units/s reached by harvesting cells at shape = 1


class QosSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    rate_req: float = 300e3
    eta: float = 0.05


class ScenarioSpec(BaseModel):
    """Pydantic mirror of the scenario JSON document."""

    model_config = ConfigDict(extra="forbid")
    macro: MacroSpec = MacroSpec()
    env: EnvSpec = EnvSpec()
    qos: QosSpec = QosSpec()
    rho0: float
    cells: list[CellSpec] = Field(default_factory=list)
    profiles: ProfilesSpec | None = None

    def build(self) -> tuple[Scenario, "DailyProfiles | None"]:
        theta_s = self.env.theta_s
        if theta_s is None:
            theta_s = 500.0 if len(self.cells) <= 1 else 2000.0
        env = RadioEnv(alpha_m=self.env.alpha_m, alpha_s=self.env.alpha_s,
                       theta_m=self.env.theta_m, theta_s=theta_s,
                       noise_density=self.env.noise_density())
        cells = []
        n = max(1, len(self.cells))
        for i, spec in enumerate(self.cells):
            angle = (2.0 * math.pi * i / n if spec.angle_deg is None
                     else math.radians(spec.angle_deg))
            density = 2.0 * self.rho0 if spec.user_density is None else spec.user_density
            cells.append(SmallCellConfig(
                kind=spec.kind, radius=spec.radius, dist_to_mbs=spec.dist_to_mbs,
                power=BsPowerParams(**spec.power.model_dump()),
                energy_unit=spec.energy_unit, energy_arrival=spec.energy_arrival,
                handover_cost=spec.handover_cost, user_density=density, angle=angle))
        scenario = Scenario(
            macro=MacroConfig(radius=self.macro.radius,
                              power=BsPowerParams(**self.macro.power.model_dump())),
            env=env,
            qos=QosConfig(rate_req=self.qos.rate_req, eta=self.qos.eta),
            cells=tuple(cells), rho0=self.rho0)
        profiles = None
        if self.profiles is not None:
            profiles = _profiles_from_spec(self.profiles, scenario)
        return scenario, profiles


@dataclass(frozen=True)
class DailyProfiles:
    """Normalized daily traffic/energy shapes plus the peaks they scale to."""

    periods: int
    traffic_shape: tuple[float, ...]
    energy_shape: tuple[float, ...]
    traffic_peak: float
    energy_peak: float

    def __post_init__(self):
        for name in ("traffic_shape", "energy_shape"):
            shape = getattr(self, name)
            if len(shape) != self.periods:
                raise ParameterError(f"{name} must have {self.periods} entries")
            if any(v < 0 or v > 1 for v in shape):
                raise ParameterError(f"{name} values must lie in [0, 1]")
            if abs(max(shape) - 1.0) > 1e-9:
                raise ParameterError(f"{name} must peak at exactly 1")
        if self.traffic_peak <= 0 or self.energy_peak < 0:
            raise ParameterError("traffic_peak must be > 0 and energy_peak >= 0")


def _diurnal_phase(hour: float) -> float:
    # circular phase hitting the trough at 04:00 and the peak at 20:00
    if 4.0 <= hour <= 20.0:
        return math.pi + math.pi * (hour - 4.0) / 16.0
    wrapped = hour if hour > 20.0 else hour + 24.0
    return 2.0 * math.pi + math.pi * (wrapped - 20.0) / 8.0


def synthetic_profiles(kind: str, periods: int = 24,
                       traffic_peak: float = 2e-6,
                       energy_peak: float | None = None) -> DailyProfiles:
    """Synthetic stand-ins for measured daily curves.

    Traffic: smooth diurnal swing between 10% of peak around 04:00 and the
    peak at 20:00.  Energy: raised cosine centred on 13:00, zero outside
    06:00-20:00.  ``cloudy`` keeps the shapes and scales the energy peak to a
    tenth of the sunny default (500 -> 50 units/s).
    """
    if kind not in ("sunny", "cloudy"):
        raise ParameterError("profile kind must be 'sunny' or 'cloudy'")
    if periods < 2:
        raise ParameterError("periods must be >= 2")
    if energy_peak is None:
        energy_peak = 500.0 if kind == "sunny" else 50.0
    hours = [24.0 * t / periods for t in range(periods)]
    traffic = [0.55 + 0.45 * math.cos(_diurnal_phase(h)) for h in hours]
    energy = [math.cos(math.pi * (h - 13.0) / 14.0) ** 2 if abs(h - 13.0) <= 7.0 else 0.0
              for h in hours]
    tmax, emax = max(traffic), max(energy)
    traffic = [v / tmax for v in traffic]
    energy = [v / emax if emax > 0 else 0.0 for v in energy]
    return DailyProfiles(periods=periods, traffic_shape=tuple(traffic),
                         energy_shape=tuple(energy), traffic_peak=traffic_peak,
                         energy_peak=energy_peak)


def _profiles_from_spec(spec: ProfilesSpec, scenario: Scenario) -> DailyProfiles:
    traffic_peak = spec.traffic_peak if spec.traffic_peak is not None else scenario.rho0
    base_energy = max((c.energy_arrival for c in scenario.cells), default=0.0)
    energy_peak = spec.energy_peak if spec.energy_peak is not None else base_energy
    if spec.kind is not None:
        return synthetic_profiles(spec.kind, spec.periods,
                                  traffic_peak=traffic_peak,
                                  energy_peak=(spec.energy_peak if spec.energy_peak is not None
                                               else (500.0 if spec.kind == "sunny" else 50.0)))
    if spec.traffic_shape is None or spec.energy_shape is None:
        raise ScenarioError("profiles: provide either kind or explicit shapes")
    return DailyProfiles(periods=spec.periods,
                         traffic_shape=tuple(spec.traffic_shape),
                         energy_shape=tuple(spec.energy_shape),
                         traffic_peak=traffic_peak, energy_peak=energy_peak)


def parse_scenario(document: dict) -> tuple[Scenario, DailyProfiles | None]:
    """Validate a scenario document and build the domain objects."""
    try:
        spec = ScenarioSpec.model_validate(document)
        scenario, profiles = spec.build()
    except ValidationError as exc:
        locs = "; ".join(
            ".".join(str(p) for p in err["loc"]) + ": " + err["msg"]
            for err in exc.errors())
        raise ScenarioError(f"invalid scenario document: {locs}") from exc
    except (ParameterError, ValueError) as exc:
        raise ScenarioError(str(exc)) from exc
    violations = validate_scenario(scenario)
    if violations:
        raise ScenarioError("scenario invariants violated: " + "; ".join(violations))
    return scenario, profiles


def load_scenario(path: str | Path) -> tuple[Scenario, DailyProfiles | None]:
    """Load and validate a scenario JSON file."""
    try:
        document = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario file is not valid JSON: {exc}") from exc
    return parse_scenario(document)


def load_profiles_csv(path: str | Path, traffic_peak: float,
                      energy_peak: float) -> DailyProfiles:
    """Read measured shapes from a CSV with header ``period,traffic,energy``."""
    rows = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != ["period", "traffic", "energy"]:
            raise ScenarioError("profiles CSV must have header period,traffic,energy")
        for row in reader:
            rows.append((int(row["period"]), float(row["traffic"]), float(row["energy"])))
    rows.sort()
    try:
        return DailyProfiles(periods=len(rows),
                             traffic_shape=tuple(r[1] for r in rows),
                             energy_shape=tuple(r[2] for r in rows),
                             traffic_peak=traffic_peak, energy_peak=energy_peak)
    except ParameterError as exc:
        raise ScenarioError(f"profiles CSV: {exc}") from exc


def scenario_at_period(scenario: Scenario, profiles: DailyProfiles, period: int) -> Scenario:
    """Scale densities and energy arrivals to one period of the daily profiles."""
    t_factor = profiles.traffic_shape[period] * (
        profiles.traffic_peak / scenario.rho0 if scenario.rho0 > 0 else 0.0)
    base_energy = max((c.energy_arrival for c in scenario.cells), default=0.0)
    e_factor = (profiles.energy_shape[period] * profiles.energy_peak / base_energy
                if base_energy > 0 else 0.0)
    cells = tuple(replace(c, user_density=c.user_density * t_factor,
                          energy_arrival=c.energy_arrival * e_factor)
                  for c in scenario.cells)
    return replace(scenario, cells=cells, rho0=scenario.rho0 * t_factor)


@dataclass
class PeriodOutcome:
    period: int
    plans: dict[str, NetworkPlan]


@dataclass
class DailyResult:
    """Per-period plans for each method plus daily aggregates."""

    periods: list[PeriodOutcome]
    reference: float                      # normalization power (W)
    mean_power: dict[str, float]
    mean_normalized: dict[str, float]
    savings_pct: dict[str, dict[str, float]]


def daily_run(scenario: Scenario, profiles: DailyProfiles,
              methods: list[str] | tuple[str, ...]) -> DailyResult:
    """Run each method independently on every period of the day."""
    if not methods:
        raise ParameterError("at least one method required")
    for m in methods:
        if m not in METHODS:
            raise ParameterError(f"unknown method {m!r}; choose from {sorted(METHODS)}")
    reference = reference_power(scenario)
    outcomes = []
    for t in range(profiles.periods):
        snapshot = scenario_at_period(scenario, profiles, t)
        outcomes.append(PeriodOutcome(
            period=t, plans={m: METHODS[m](snapshot) for m in methods}))
    mean_power = {m: sum(o.plans[m].power.total for o in outcomes) / len(outcomes)
                  for m in methods}
    mean_norm = {m: mean_power[m] / reference for m in methods}
    savings = {a: {b: 100.0 * (1.0 - mean_power[a] / mean_power[b])
                   for b in methods if b != a and mean_power[b] > 0}
               for a in methods}
    return DailyResult(periods=outcomes, reference=reference,
                       mean_power=mean_power, mean_normalized=mean_norm,
                       savings_pct=savings)

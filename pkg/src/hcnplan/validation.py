"""Closed-form-vs-simulation validation sweeps for the outage models.

The sweep grids follow the accuracy evaluation setup: rate sweeps for a micro
cell (300 m, 70 users/km^2) and a pico cell (100 m, 500 users/km^2) with the
full SBS band, plus MBS-served in-cell users sharing 3 MHz at three
MBS-to-SBS distances.  The acceptance bar asserts relative error below 10%
wherever the closed form predicts outage below 0.1; points outside the
asymptotic regime are flagged and exempt.
"""
from __future__ import annotations

from dataclasses import dataclass

from .model import BsPowerParams, CellKind, MacroConfig, QosConfig, RadioEnv, Scenario, SmallCellConfig
from .montecarlo import SimConfig, simulate_outage_msu, simulate_outage_ssu
from .outage import outage_msu_closed, outage_ssu_closed

OUTAGE_CRITERION_CUTOFF = 0.1
OUTAGE_CRITERION_REL_ERROR = 0.10

_MICRO = BsPowerParams(p_tx=6.3, p_const=56.0, beta=2.6, bandwidth=5e6)
_MACRO = BsPowerParams(p_tx=20.0, p_const=130.0, beta=4.7, bandwidth=10e6)
_PICO = BsPowerParams(p_tx=0.13, p_const=6.8, beta=4.0, bandwidth=5e6)
_ENV = RadioEnv(alpha_m=3.5, alpha_s=4.0, theta_m=1000.0, theta_s=500.0,
                noise_density=10.0 ** (-13.5) / 1e6)


@dataclass(frozen=True)
class OutageCase:
    name: str
    kind: str                   # "ssu" | "msu"
    cell: SmallCellConfig
    bandwidth: float
    phi: float
    rate_grid: tuple[float, ...]


def default_cases() -> list[OutageCase]:
    micro = SmallCellConfig(kind=CellKind.HSBS, radius=300.0, dist_to_mbs=600.0,
                            power=_MICRO, user_density=70e-6)
    pico = SmallCellConfig(kind=CellKind.HSBS, radius=100.0, dist_to_mbs=600.0,
                           power=_PICO, user_density=500e-6)
    cases = [
        OutageCase("ssu_micro", "ssu", micro, micro.power.bandwidth, 1.0,
                   (250e3, 300e3, 350e3, 400e3, 450e3, 500e3)),
        OutageCase("ssu_pico", "ssu", pico, pico.power.bandwidth, 1.0,
                   (400e3, 500e3, 600e3, 700e3, 800e3, 900e3)),
    ]
    # MSU checks: everyone stays on the MBS (phi = 0), denser cell population
    msu_grids = {300.0: (200e3, 220e3, 240e3, 260e3, 280e3, 320e3),
                 600.0: (40e3, 50e3, 60e3, 70e3, 80e3, 100e3),
                 900.0: (10e3, 14e3, 18e3, 22e3, 26e3, 34e3)}
    for dist, grid in msu_grids.items():
        cell = SmallCellConfig(kind=CellKind.HSBS, radius=300.0, dist_to_mbs=dist,
                               power=_MICRO, user_density=140e-6)
        cases.append(OutageCase(f"msu_{int(dist)}", "msu", cell, 3e6, 0.0, grid))
    return cases


@dataclass(frozen=True)
class OutageRow:
    case: str
    rate_req: float
    bandwidth: float
    closed_form: float
    monte_carlo: float
    rel_error: float
    regime_ok: bool
    counted: bool               # point participates in the accuracy criterion


def run_outage_validation(trials: int = 10000, seed: int = 12345,
                          cases: list[OutageCase] | None = None) -> tuple[list[OutageRow], bool]:
    """Compare closed forms against Monte Carlo on every sweep point.

    Returns the rows and whether the <10% criterion held on all counted points.
    """
    rows: list[OutageRow] = []
    passed = True
    for case in (cases if cases is not None else default_cases()):
        scenario = Scenario(macro=MacroConfig(radius=1000.0, power=_MACRO),
                            env=_ENV, qos=QosConfig(rate_req=300e3, eta=0.05),
                            cells=(case.cell,), rho0=20e-6)
        for i, rate in enumerate(case.rate_grid):
            qos = QosConfig(rate_req=rate, eta=0.05)
            cfg = SimConfig(trials=trials, seed=seed + i)
            if case.kind == "ssu":
                closed = outage_ssu_closed(case.cell, _ENV, qos, case.bandwidth, case.phi)
                mc = simulate_outage_ssu(case.cell, _ENV, qos, case.bandwidth, case.phi, cfg)
            else:
                sc = Scenario(macro=scenario.macro, env=_ENV, qos=qos,
                              cells=(case.cell,), rho0=20e-6)
                closed = outage_msu_closed(case.cell, sc, case.bandwidth, case.phi)
                mc = simulate_outage_msu(case.cell, sc, case.bandwidth, case.phi, cfg)
            rel = abs(closed.probability - mc) / mc if mc > 0 else float("inf")
            counted = closed.regime_ok and closed.probability < OUTAGE_CRITERION_CUTOFF
            if counted and rel >= OUTAGE_CRITERION_REL_ERROR:
                passed = False
            rows.append(OutageRow(case=case.name, rate_req=rate,
                                  bandwidth=case.bandwidth,
                                  closed_form=closed.probability, monte_carlo=mc,
                                  rel_error=rel, regime_ok=closed.regime_ok,
                                  counted=counted))
    return rows, passed

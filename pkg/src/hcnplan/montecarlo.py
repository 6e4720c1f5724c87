"""Simulation oracles, independent of the closed forms they validate.

Outage oracles drop a tagged user plus a Poisson number of contenders into a
cell and measure the empirical rate-outage fraction under Rayleigh fading.
The battery oracle replays the arrival/consumption process event by event.

Every random quantity draws from its own counter-derived Philox substream, so
results are bit-reproducible for a given seed and the first N trials do not
change when the trial count grows.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ParameterError, RadioEnv, QosConfig, Scenario, SmallCellConfig


@dataclass(frozen=True)
class SimConfig:
    trials: int = 10000
    seed: int = 12345
    horizon: float | None = None    # seconds of simulated time for the queue oracle

    def __post_init__(self):
        if self.trials < 1:
            raise ParameterError("trials must be >= 1")


def _stream(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed).jumped(index))


def _outage_fraction(w: float, rate_req: float, mean_contenders: float,
                     snr_scale: float, distances, cfg: SimConfig) -> float:
    """Common trial loop: rate = w/(K+1) * log2(1 + snr_scale * d^-alpha * h)."""
    k = _stream(cfg.seed, 0).poisson(mean_contenders, cfg.trials)
    h = _stream(cfg.seed, 2).exponential(1.0, cfg.trials)
    gamma = snr_scale * distances * h
    rate = w / (k + 1) * np.log2(1.0 + gamma)
    return float(np.mean(rate < rate_req))


def simulate_outage_ssu(cell: SmallCellConfig, env: RadioEnv, qos: QosConfig,
                        w_ss: float, phi: float, cfg: SimConfig) -> float:
    """Empirical SSU outage: contenders ~ Poisson(pi phi rho D^2), tagged user uniform on the disc."""
    if w_ss <= 0:
        raise ParameterError("w_ss must be > 0")
    if not 0.0 <= phi <= 1.0:
        raise ParameterError("phi must lie in [0, 1]")
    mean_k = np.pi * cell.radius**2 * phi * cell.user_density
    u = _stream(cfg.seed, 1).random(cfg.trials)
    d = cell.radius * np.sqrt(u)                      # pdf 2d/D^2 on [0, D]
    snr_scale = cell.power.p_tx / ((env.theta_s + 1.0) * env.noise_density
                                   * cell.power.bandwidth)
    return _outage_fraction(w_ss, qos.rate_req, mean_k, snr_scale,
                            d ** (-env.alpha_s), cfg)


def simulate_outage_msu(cell: SmallCellConfig, scenario: Scenario,
                        w_ms: float, phi: float, cfg: SimConfig) -> float:
    """Empirical MSU outage: density (1-phi)*rho, every user at the SBS site."""
    if w_ms <= 0:
        raise ParameterError("w_ms must be > 0")
    if not 0.0 <= phi <= 1.0:
        raise ParameterError("phi must lie in [0, 1]")
    env, macro = scenario.env, scenario.macro
    mean_k = np.pi * cell.radius**2 * (1.0 - phi) * cell.user_density
    snr_scale = macro.power.p_tx / ((env.theta_m + 1.0) * env.noise_density
                                    * macro.power.bandwidth)
    return _outage_fraction(w_ms, scenario.qos.rate_req, mean_k, snr_scale,
                            cell.dist_to_mbs ** (-env.alpha_m), cfg)


@dataclass(frozen=True)
class EnergyQueueStats:
    occupancy: np.ndarray       # time-averaged battery-level distribution
    empty_fraction: float
    shutdown_rate: float        # nonempty -> empty transitions per second

    @property
    def q0(self) -> float:
        return float(self.occupancy[0])


def simulate_energy_queue(lambda_e: float, mu_e: float, cfg: SimConfig) -> EnergyQueueStats:
    """Event-driven battery replay: Poisson arrivals, deterministic unit drain.

    Runs for ``cfg.horizon`` seconds (default: 1e6 service times) and discards
    the first 10% as warm-up.
    """
    if mu_e <= 0:
        raise ParameterError("mu_e must be > 0")
    if lambda_e < 0:
        raise ParameterError("lambda_e must be >= 0")
    service = 1.0 / mu_e
    horizon = cfg.horizon if cfg.horizon is not None else 1e6 * service
    if lambda_e == 0:
        return EnergyQueueStats(occupancy=np.array([1.0]), empty_fraction=1.0,
                                shutdown_rate=0.0)

    rng = _stream(cfg.seed, 3)
    arrivals: list[np.ndarray] = []
    t, chunk = 0.0, max(1024, int(lambda_e * horizon * 1.05) + 64)
    while t < horizon:
        gaps = rng.exponential(1.0 / lambda_e, chunk)
        block = t + np.cumsum(gaps)
        arrivals.append(block)
        t = block[-1]
        chunk = 4096
    a = np.concatenate(arrivals)
    a = a[a < horizon]
    if len(a) == 0:
        return EnergyQueueStats(occupancy=np.array([1.0]), empty_fraction=1.0,
                                shutdown_rate=0.0)

    # departure of unit k: d_k = max(a_k, d_{k-1}) + service, unrolled to a running max
    k = np.arange(len(a))
    d = service * (k + 1) + np.maximum.accumulate(a - service * k)
    times = np.concatenate([a, d])
    steps = np.concatenate([np.ones(len(a), dtype=np.int64),
                            -np.ones(len(d), dtype=np.int64)])
    order = np.argsort(times, kind="stable")
    times = times[order]
    steps = steps[order]
    level = np.cumsum(steps)

    end = max(horizon, times[-1])
    warm = 0.1 * horizon
    starts = np.concatenate([[0.0], times])
    ends = np.concatenate([times, [end]])
    levels = np.concatenate([[0], level])
    dur = np.clip(ends, warm, end) - np.clip(starts, warm, end)
    occ = np.bincount(levels, weights=dur)
    occ = occ / occ.sum()

    mask = (steps < 0) & (level == 0) & (times >= warm)
    rate = float(np.sum(mask) / (end - warm))
    return EnergyQueueStats(occupancy=occ, empty_fraction=float(occ[0]),
                            shutdown_rate=rate)

"""M/D/1 analysis of the battery process.

Energy units arrive as a Poisson stream (rate lambda_e) and are drained one
at a time with deterministic service time 1/mu_e.  The stationary queue-length
law is obtained from the embedded Markov chain at departure epochs, which for
M/D/1 coincides with the time-stationary law.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import ParameterError

TAIL_BOUND = 1e-10


class UnstableQueueError(ValueError):
    """lambda_e >= mu_e: the battery grows without bound (energy always sufficient)."""


@dataclass(frozen=True)
class QueueStationary:
    """Stationary battery-level distribution of the stable queue."""

    rho: float
    q: np.ndarray

    @property
    def q0(self) -> float:
        return float(self.q[0])

    @property
    def q1(self) -> float:
        return float(self.q[1]) if len(self.q) > 1 else 0.0


def arrival_probability(i: int, rho: float) -> float:
    """Probability of ``i`` energy arrivals during one deterministic service."""
    if rho <= 0:
        raise ParameterError("rho must be > 0")
    if i < 0:
        raise ParameterError("i must be >= 0")
    return math.exp(-rho + i * math.log(rho) - math.lgamma(i + 1.0))


def _embedded_matrix(rho: float, n: int) -> np.ndarray:
    i = np.arange(n)
    a = np.exp(-rho + i * math.log(rho) - np.array([math.lgamma(k + 1.0) for k in i]))
    A = np.zeros((n, n))
    A[0, :] = a
    for r in range(1, n):
        A[r, r - 1:] = a[: n - r + 1]
    # fold the truncated tail into the last column so each row stays stochastic
    A[:, -1] += 1.0 - A.sum(axis=1)
    return A


def stationary_distribution(lambda_e: float, mu_e: float,
                            l_max: int | None = None,
                            tol: float = 1e-8) -> QueueStationary:
    """Solve pi = pi A for the truncated embedded chain of the battery queue."""
    if mu_e <= 0:
        raise ParameterError("mu_e must be > 0")
    if lambda_e <= 0:
        raise ParameterError("lambda_e must be > 0")
    rho = lambda_e / mu_e
    if rho >= 1:
        raise UnstableQueueError(
            f"lambda_e/mu_e = {rho} >= 1: harvested energy is always sufficient")

    sizes = [l_max + 1] if l_max is not None else [64, 128, 256, 512, 1024, 4096]
    pi = None
    for n in sizes:
        A = _embedded_matrix(rho, n)
        M = A.T - np.eye(n)
        M[-1, :] = 1.0
        b = np.zeros(n)
        b[-1] = 1.0
        pi = np.linalg.solve(M, b)
        pi = np.clip(pi, 0.0, None)
        pi /= pi.sum()
        if pi[-1] < TAIL_BOUND:
            break
    assert pi is not None
    if abs(pi[0] - (1 - rho)) > max(tol, 1e-6):
        raise RuntimeError(
            f"truncated solve q0={pi[0]} deviates from 1-rho={1-rho}; raise l_max")
    return QueueStationary(rho=rho, q=pi)


def empty_probability(lambda_e: float, mu_e: float) -> float:
    """Long-run fraction of time the battery is empty; 0 when lambda_e >= mu_e."""
    if mu_e <= 0:
        raise ParameterError("mu_e must be > 0")
    if lambda_e < 0:
        raise ParameterError("lambda_e must be >= 0")
    return max(0.0, 1.0 - lambda_e / mu_e)


def handover_power(lambda_e: float, mu_e: float, c_ho: float, active: int | bool) -> float:
    """Average power spent on shutdown/reactivation handovers of an active RSBS.

    Evaluates 2*(1-x)*(1-e^-x)*mu_e*c_ho with x = lambda_e/mu_e for the stable
    queue and 0 otherwise (the battery never empties).
    """
    if mu_e <= 0:
        raise ParameterError("mu_e must be > 0")
    if lambda_e < 0 or c_ho < 0:
        raise ParameterError("lambda_e and c_ho must be >= 0")
    if not active or lambda_e >= mu_e:
        return 0.0
    x = lambda_e / mu_e
    return 2.0 * (1.0 - x) * (1.0 - math.exp(-x)) * mu_e * c_ho

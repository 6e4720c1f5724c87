"""Thin HTTP client for the planning service.

Without a base URL the client mounts the FastAPI app in-process, so the CLI
works standalone; pass ``base_url`` to talk to a remote ``hcnplan serve``.
"""
from __future__ import annotations

import httpx


class ServiceError(RuntimeError):
    """The service rejected a request; ``detail`` carries its message."""

    def __init__(self, status_code: int, detail: str):
        super().__init__(f"service returned {status_code}: {detail}")
        self.status_code = status_code
        self.detail = detail


class PlannerClient:
    def __init__(self, base_url: str | None = None):
        if base_url is None:
            import warnings
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", DeprecationWarning)
                from fastapi.testclient import TestClient
            from .service import create_app
            self._http = TestClient(create_app())
        else:
            self._http = httpx.Client(base_url=base_url, timeout=600.0)

    def close(self) -> None:
        self._http.close()

    def __enter__(self) -> "PlannerClient":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def _post(self, path: str, payload: dict) -> dict:
        response = self._http.post(path, json=payload)
        if response.status_code != 200:
            try:
                detail = response.json().get("detail", response.text)
            except ValueError:
                detail = response.text
            raise ServiceError(response.status_code, str(detail))
        return response.json()

    def health(self) -> dict:
        response = self._http.get("/health")
        if response.status_code != 200:
            raise ServiceError(response.status_code, response.text)
        return response.json()

    def validate_scenario(self, document: dict) -> dict:
        return self._post("/scenario/validate", document)

    def validate_outage(self, trials: int = 10000, seed: int = 12345) -> dict:
        return self._post("/outage/validate", {"trials": trials, "seed": seed})

    def analyze_queue(self, lambda_e: float, mu_e: float, *, simulate: bool = True,
                      trials: int = 10000, horizon: float | None = None,
                      seed: int = 12345) -> dict:
        return self._post("/queue/analyze",
                          {"lambda_e": lambda_e, "mu_e": mu_e, "simulate": simulate,
                           "trials": trials, "horizon": horizon, "seed": seed})

    def cell_sweep(self, scenario: dict, cell: int, param: str,
                   values: list[float]) -> dict:
        return self._post("/cell/sweep", {"scenario": scenario, "cell": cell,
                                          "param": param, "values": values})

    def plan(self, scenario: dict, method: str = "teato") -> dict:
        return self._post("/plan", {"scenario": scenario, "method": method})

    def daily(self, scenario: dict, methods: list[str],
              profiles: dict | None = None) -> dict:
        payload: dict = {"scenario": scenario, "methods": methods}
        if profiles is not None:
            payload["profiles"] = profiles
        return self._post("/daily", payload)

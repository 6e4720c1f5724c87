"""Command-line front end; every subcommand is a thin client of the planning service.

Exit codes: 0 success, 1 input error, 2 validation criterion failed,
3 plan infeasible.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bundled_scenario_path
from .client import PlannerClient, ServiceError

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CRITERION = 2
EXIT_INFEASIBLE = 3

DEFAULT_SEED = 12345
QUEUE_TV_LIMIT = 0.01


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_text(out: str, text: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _write_csv(out: str, header: list[str], rows: list[list]) -> None:
    lines = [",".join(header)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    _write_text(out, "\n".join(lines) + "\n")


def _write_json(out: str, payload) -> None:
    _write_text(out, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _load_document(spec: str) -> dict:
    path = spec
    if spec in ("table3", "default5"):
        path = bundled_scenario_path(spec)
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SystemExit(_fail(f"cannot load scenario {spec!r}: {exc}"))


def _fail(message: str, code: int = EXIT_INPUT) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _seed_from(args) -> int:
    if args.seed is None:
        if args.strict:
            raise SystemExit(_fail("--strict requires an explicit --seed for Monte Carlo runs"))
        return DEFAULT_SEED
    return args.seed


def cmd_validate_outage(args, client: PlannerClient) -> int:
    result = client.validate_outage(trials=args.trials, seed=_seed_from(args))
    header = ["case", "rate_req", "bandwidth", "closed_form", "monte_carlo",
              "rel_error", "regime_ok", "counted"]
    rows = [[r["case"], r["rate_req"], r["bandwidth"], r["closed_form"],
             r["monte_carlo"], r["rel_error"], r["regime_ok"], r["counted"]]
            for r in result["rows"]]
    if args.json:
        _write_json(args.out, result)
    else:
        _write_csv(args.out, header, rows)
    return EXIT_OK if result["passed"] else EXIT_CRITERION


def cmd_queue(args, client: PlannerClient) -> int:
    result = client.analyze_queue(args.lam, args.mu, simulate=not args.no_sim,
                                  trials=args.trials, horizon=args.horizon,
                                  seed=_seed_from(args))
    if args.json:
        _write_json(args.out, result)
    else:
        analytic = result.get("q") or []
        empirical = result.get("empirical") or []
        rows = []
        for k in range(max(len(analytic), len(empirical))):
            rows.append([k,
                         analytic[k] if k < len(analytic) else 0.0,
                         empirical[k] if k < len(empirical) else 0.0])
        _write_csv(args.out, ["level", "analytic", "empirical"], rows)
    if not result["stable"]:
        return EXIT_OK     # energy always sufficient; nothing to check
    tv = result.get("tv_distance")
    if tv is not None and tv >= QUEUE_TV_LIMIT:
        return EXIT_CRITERION
    return EXIT_OK


def _parse_sweep(spec: str) -> tuple[str, list[float]]:
    try:
        param, start, stop, points = spec.split(":")
        start_f, stop_f, n = float(start), float(stop), int(points)
    except ValueError:
        raise SystemExit(_fail("sweep spec must be PARAM:START:STOP:POINTS"))
    if n < 1:
        raise SystemExit(_fail("sweep needs at least one point"))
    if param == "lambda_e":
        param = "energy_arrival"
    step = (stop_f - start_f) / (n - 1) if n > 1 else 0.0
    return param, [start_f + step * i for i in range(n)]


def cmd_single(args, client: PlannerClient) -> int:
    document = _load_document(args.scenario)
    param, values = _parse_sweep(args.sweep)
    result = client.cell_sweep(document, args.cell, param, values)
    rows = [[r["value"], r["gain_optimal"], r["gain_greedy"], r["mu_opt"], r["active"]]
            for r in result["rows"]]
    if args.json:
        _write_json(args.out, result)
    else:
        _write_csv(args.out, ["value", "gain_optimal", "gain_greedy", "mu_opt", "active"],
                   rows)
    return EXIT_OK


def cmd_plan(args, client: PlannerClient) -> int:
    document = _load_document(args.scenario)
    methods = args.method.split(",")
    if len(methods) != 1:
        return _fail("plan takes exactly one --method")
    result = client.plan(document, methods[0])
    _write_json(args.out, result)
    return EXIT_OK if result["feasible"] else EXIT_INFEASIBLE


def cmd_daily(args, client: PlannerClient) -> int:
    document = _load_document(args.scenario)
    methods = [m for m in args.method.split(",") if m]
    if not methods:
        return _fail("daily needs a non-empty --method list")
    profiles = None
    if args.profile_kind:
        profiles = {"kind": args.profile_kind}
    elif args.profiles:
        profiles = _profiles_csv_to_spec(args.profiles)
    result = client.daily(document, methods, profiles)
    if args.json:
        _write_json(args.out, result)
    else:
        header = ["period", "method", "feasible", "p_mbs", "p_sbs_total", "p_ho",
                  "total", "normalized"]
        rows = [[r["period"], r["method"], r["feasible"], r["p_mbs"],
                 r["p_sbs_total"], r["p_ho"], r["total"], r["normalized"]]
                for r in result["rows"]]
        _write_csv(args.out, header, rows)
        if args.summary:
            _write_json(args.summary, result["summary"])
    return EXIT_OK


def _profiles_csv_to_spec(path: str) -> dict:
    import csv

    try:
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames != ["period", "traffic", "energy"]:
                raise SystemExit(_fail("profiles CSV must have header period,traffic,energy"))
            rows = sorted((int(r["period"]), float(r["traffic"]), float(r["energy"]))
                          for r in reader)
    except OSError as exc:
        raise SystemExit(_fail(f"cannot read profiles CSV: {exc}"))
    return {"periods": len(rows),
            "traffic_shape": [r[1] for r in rows],
            "energy_shape": [r[2] for r in rows]}


def cmd_sweep(args, client: PlannerClient) -> int:
    document = _load_document(args.scenario)
    param, values = _parse_sweep(args.sweep)
    methods = [m for m in args.method.split(",") if m]
    if not methods:
        return _fail("sweep needs a non-empty --method list")
    if not document.get("cells") or not 0 <= args.cell < len(document["cells"]):
        return _fail(f"cell index {args.cell} out of range")
    rows = []
    for value in values:
        doc = json.loads(json.dumps(document))
        doc["cells"][args.cell][param] = value
        for method in methods:
            plan = client.plan(doc, method)
            rows.append([value, method, plan["power"]["total"], plan["feasible"]])
    if args.json:
        _write_json(args.out, {"param": param, "cell": args.cell,
                               "rows": [{"value": r[0], "method": r[1],
                                         "total": r[2], "feasible": r[3]}
                                        for r in rows]})
    else:
        _write_csv(args.out, ["value", "method", "total", "feasible"], rows)
    return EXIT_OK


def cmd_serve(args, _client=None) -> int:
    import uvicorn

    from .service import create_app
    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hcnplan",
        description="Energy-aware traffic offloading planner (CLI client)")
    parser.add_argument("--server", default=None,
                        help="base URL of a running service (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scenario=True):
        if scenario:
            p.add_argument("--scenario", default="default5",
                           help="scenario JSON path, or bundled name (table3, default5)")
        p.add_argument("--out", default="-", help="output path, '-' for stdout")
        p.add_argument("--json", action="store_true", help="emit JSON instead of CSV")
        p.add_argument("--seed", type=int, default=None, help="Monte Carlo seed")
        p.add_argument("--trials", type=int, default=10000, help="Monte Carlo trials")
        p.add_argument("--strict", action="store_true",
                       help="require an explicit seed for Monte Carlo subcommands")

    p = sub.add_parser("validate-outage",
                       help="closed-form outage vs Monte Carlo sweeps")
    common(p, scenario=False)
    p.set_defaults(func=cmd_validate_outage)

    p = sub.add_parser("queue", help="battery queue analysis (analytic vs simulated)")
    common(p, scenario=False)
    p.add_argument("--lam", type=float, required=True, help="energy arrival rate (units/s)")
    p.add_argument("--mu", type=float, required=True, help="energy consumption rate (units/s)")
    p.add_argument("--horizon", type=float, default=None, help="simulated seconds")
    p.add_argument("--no-sim", action="store_true", help="skip the event-driven oracle")
    p.set_defaults(func=cmd_queue)

    p = sub.add_parser("single", help="single-cell gain sweep (optimal vs greedy)")
    common(p)
    p.add_argument("--cell", type=int, default=0)
    p.add_argument("--sweep", required=True,
                   help="PARAM:START:STOP:POINTS with PARAM in "
                        "{lambda_e, user_density, handover_cost}")
    p.set_defaults(func=cmd_single)

    p = sub.add_parser("plan", help="plan the network with one method")
    common(p)
    p.add_argument("--method", default="teato",
                   help="teato | greedy_no_sleep | greedy_with_sleep | exhaustive")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("daily", help="per-period daily run for several methods")
    common(p)
    p.add_argument("--method", default="teato,greedy_no_sleep,greedy_with_sleep",
                   help="comma-separated method list")
    p.add_argument("--profile-kind", choices=["sunny", "cloudy"], default=None,
                   help="synthetic profile overriding the scenario's")
    p.add_argument("--profiles", default=None,
                   help="CSV of measured shapes (period,traffic,energy)")
    p.add_argument("--summary", default=None, help="also write a summary JSON here")
    p.set_defaults(func=cmd_daily)

    p = sub.add_parser("sweep", help="total-power parameter sweep across methods")
    common(p)
    p.add_argument("--cell", type=int, default=0)
    p.add_argument("--sweep", required=True, help="PARAM:START:STOP:POINTS")
    p.add_argument("--method", default="teato", help="comma-separated method list")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("serve", help="run the planning service with uvicorn")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:     # argparse exits 2 on usage errors; that's an input error
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    if args.command == "serve":
        return cmd_serve(args)
    client = PlannerClient(base_url=args.server)
    try:
        return args.func(args, client)
    except ServiceError as exc:
        return _fail(exc.detail)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    finally:
        client.close()


if __name__ == "__main__":
    sys.exit(main())

"""Command-line client for the emission engine.

Every data-bearing subcommand builds the same response models the HTTP API
serves and renders them as aligned text, JSON (byte-identical to the HTTP
body) or CSV. ``serve`` starts the HTTP service itself.

Exit codes: 0 on success, 2 on usage errors, 1 on domain or data errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Iterable, Sequence

from pydantic import ValidationError

from . import __version__
from .datasets import load_dataset
from .errors import DomainError, MobishiftError
from .fleet import (
    FleetUsageEntry,
    LifetimeEntry,
    average_private_ltm,
    extract_elvs,
    fleet_annual_mileage,
    read_inspection_csv,
    regress_elvs,
)
from .service import api
from .service.schemas import CalculationRequest

TABLE = "table"
JSON_FORMAT = "json"
CSV_FORMAT = "csv"

CASE_CHOICES = (
    "nl",
    "netherlands",
    "sf",
    "san-francisco",
    "san_francisco",
    "calgary",
)


def _print_rows(rows: Iterable[Sequence[str]]) -> None:
    table = [list(r) for r in rows]
    if not table:
        return
    widths = [max(len(row[i]) for row in table) for i in range(len(table[0]))]
    for row in table:
        cells = [
            cell.ljust(widths[i]) if i == 0 else cell.rjust(widths[i])
            for i, cell in enumerate(row)
        ]
        print("  ".join(cells).rstrip())


def _fmt(value: float, digits: int = 1) -> str:
    return f"{value:.{digits}f}"


# ---------------------------------------------------------------------------
# Subcommands


def cmd_factors(args: argparse.Namespace) -> int:
    ds = load_dataset(args.data_dir)
    response = api.factors_response(ds, grid=args.grid, scenario=args.scenario)
    if args.format == JSON_FORMAT:
        print(api.render_json(response))
        return 0
    scenario = ds.scenario(response.scenario)
    print(
        f"grid: {response.grid.label} ({_fmt(response.grid.g_per_kwh)} g CO2-eq/kWh)"
        f"   scenario: {scenario.id} ({scenario.label})"
    )
    print()
    rows = [["mode", "g/PKT", "provenance"]]
    for f in response.factors:
        rows.append([f.mode.value, _fmt(f.g_per_pkt), f.provenance])
    _print_rows(rows)
    return 0


def cmd_case(args: argparse.Namespace) -> int:
    ds = load_dataset(args.data_dir)
    report = api.case_report(
        ds,
        args.region,
        scenario=args.scenario,
        no_modal_shift=args.no_modal_shift,
        factor_mode=args.factor_mode,
    )
    if args.format == JSON_FORMAT:
        print(api.render_json(report))
        return 0

    modes = list(report.during.distances)
    for mode in report.before.distances:
        if mode not in modes:
            modes.append(mode)
    if args.format == CSV_FORMAT:
        print("mode,before_km,during_km,g_per_pkt,delta_kg")
        for mode in modes:
            print(
                f"{mode.value},{report.before.distances.get(mode, 0.0)},"
                f"{report.during.distances.get(mode, 0.0)},"
                f"{report.factors.get(mode, '')},"
                f"{report.per_mode_delta.get(mode, 0.0)}"
            )
        print(f"total,{report.before_total_km},{report.during_total_km},,{report.total_delta_kg}")
        return 0

    print(f"case: {report.case} ({report.label})")
    shift = "off" if report.no_modal_shift else "on"
    print(
        f"scenario: {report.scenario}   factors: {report.factor_mode}   "
        f"grid: {report.grid.label} ({_fmt(report.grid.g_per_kwh)} g/kWh)   "
        f"modal shift: {shift}"
    )
    print()
    rows = [["mode", "before_km", "during_km", "g/PKT", "delta_kg"]]
    for mode in modes:
        factor = report.factors.get(mode)
        rows.append(
            [
                mode.value,
                _fmt(report.before.distances.get(mode, 0.0)),
                _fmt(report.during.distances.get(mode, 0.0)),
                _fmt(factor) if factor is not None else "",
                _fmt(report.per_mode_delta.get(mode, 0.0)),
            ]
        )
    rows.append(
        [
            "total",
            _fmt(report.before_total_km),
            _fmt(report.during_total_km),
            "",
            _fmt(report.total_delta_kg),
        ]
    )
    _print_rows(rows)
    print()
    if report.reduction_rate is not None:
        print(
            f"change vs before: {_fmt(report.total_delta_kg)} kg CO2-eq per member-year "
            f"({_fmt(report.reduction_rate * 100)}% reduction)"
        )
    return 0


def cmd_calc(args: argparse.Namespace) -> int:
    ds = load_dataset(args.data_dir)
    raw = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
    try:
        request = CalculationRequest.model_validate_json(raw)
    except ValidationError as exc:
        first = exc.errors()[0] if exc.errors() else {}
        loc = ".".join(str(p) for p in first.get("loc", []))
        print(f"error: invalid request ({loc}: {first.get('msg', exc)})", file=sys.stderr)
        return 1
    print(api.render_json(api.calculate(ds, request)))
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    ds = load_dataset(args.data_dir)
    points = None
    if args.points:
        points = [p.strip() for p in args.points.split(",") if p.strip()]
    response = api.sweep(
        ds,
        args.parameter,
        case=args.case,
        scenario=args.scenario,
        factor_mode=args.factor_mode,
        points=points,
        minimum=args.min,
        maximum=args.max,
        steps=args.steps,
    )
    if args.format == JSON_FORMAT:
        print(api.render_json(response))
        return 0
    if args.format == CSV_FORMAT:
        print(f"{response.parameter},label,total_delta_kg")
        for p in response.points:
            print(f"{p.value},{p.label or ''},{p.total_delta_kg}")
        return 0
    print(
        f"sweep: {response.parameter} ({response.unit})   case: {response.case}   "
        f"scenario: {response.scenario}   factors: {response.factor_mode}"
    )
    print(
        f"baseline: {response.baseline.value} -> "
        f"{_fmt(response.baseline.total_delta_kg)} kg"
    )
    print()
    rows = [[response.parameter, "label", "delta_kg"]]
    for p in response.points:
        rows.append([_fmt(p.value, 1), p.label or "", _fmt(p.total_delta_kg)])
    _print_rows(rows)
    return 0


def cmd_regress(args: argparse.Namespace) -> int:
    records, skipped_rows = read_inspection_csv(args.csv)
    extraction = extract_elvs(
        records, reference_year=args.reference_year, lookahead_years=args.lookahead
    )
    result = regress_elvs(
        extraction.observations,
        predictor=args.predictor,
        balance=not args.no_balance,
        seed=args.seed,
    )
    if args.format == JSON_FORMAT:
        payload = {
            "predictor": result.predictor,
            "n_observations": result.n_observations,
            "elv_count": extraction.elv_count,
            "rejected_records": extraction.rejected_records,
            "skipped_rows": skipped_rows,
            "coefficient": result.coefficient,
            "intercept": result.intercept,
            "std_error": result.std_error,
            "z_value": result.z_value,
            "p_value": result.p_value,
            "pseudo_r2": result.pseudo_r2,
            "converged": result.converged,
            "iterations": result.iterations,
        }
        print(json.dumps(payload, ensure_ascii=False, separators=(",", ":")))
        return 0
    unit = "years" if result.predictor == "age" else "1000 km"
    print(
        f"retirement regression on {result.predictor} ({unit})   "
        f"n: {result.n_observations}   retired: {extraction.elv_count}"
    )
    if extraction.rejected_records or skipped_rows:
        print(
            f"ignored input: {skipped_rows} unparseable rows, "
            f"{extraction.rejected_records} invalid records"
        )
    print()
    rows = [
        ["", "coef", "std err", "z", "P>|z|"],
        [
            result.predictor,
            f"{result.coefficient:.4f}",
            f"{result.std_error:.4f}",
            f"{result.z_value:.4f}",
            f"{result.p_value:.4f}",
        ],
        [
            "intercept",
            f"{result.intercept:.4f}",
            f"{result.intercept_std_error:.4f}",
            "",
            "",
        ],
    ]
    _print_rows(rows)
    print()
    converged = "yes" if result.converged else "NO"
    print(
        f"pseudo R2: {result.pseudo_r2:.4f}   converged: {converged} "
        f"({result.iterations} iterations)"
    )
    return 0


def _load_entries(path: str, kind: str) -> list[dict]:
    data = json.loads(Path(path).read_text())
    if not isinstance(data, list):
        raise MobishiftError(f"{kind} file must hold a JSON list", field=kind)
    return data


def cmd_fleet(args: argparse.Namespace) -> int:
    if not args.usage and not args.lifetimes:
        print("error: give --usage and/or --lifetimes", file=sys.stderr)
        return 2
    payload: dict = {}
    if args.usage:
        entries = [
            FleetUsageEntry(
                city=e["city"],
                vkt_per_year=float(e["vkt_per_year"]),
                fleet_size=int(e["fleet_size"]),
            )
            for e in _load_entries(args.usage, "usage")
        ]
        report = fleet_annual_mileage(entries)
        payload["usage"] = {
            "per_city_km": report.per_city_km,
            "per_city_rounded_km": report.per_city_rounded_km,
            "average_rounded_km": report.average_rounded_km,
        }
        if args.format == TABLE:
            rows = [["city", "km/vehicle/year", "rounded"]]
            for city, raw_km in report.per_city_km.items():
                rows.append(
                    [city, _fmt(raw_km), _fmt(report.per_city_rounded_km[city], 0)]
                )
            _print_rows(rows)
            print()
            print(f"average (rounded to 100 km): {_fmt(report.average_rounded_km, 0)}")
    if args.lifetimes:
        entries = [
            LifetimeEntry(
                label=str(e.get("label", i)),
                age_years=float(e["age_years"]),
                annual_km=float(e["annual_km"]),
                ltm_km=float(e["ltm_km"]),
            )
            for i, e in enumerate(_load_entries(args.lifetimes, "lifetimes"))
        ]
        avg = average_private_ltm(entries)
        payload["lifetimes"] = {
            "average_age_years": avg.age_years,
            "average_annual_km": avg.annual_km,
            "average_ltm_km": avg.ltm_km,
        }
        if args.format == TABLE:
            if args.usage:
                print()
            rows = [["vehicle", "age_years", "annual_km", "lifetime_km"]]
            for e in entries:
                rows.append(
                    [e.label, _fmt(e.age_years), _fmt(e.annual_km, 0), _fmt(e.ltm_km, 0)]
                )
            rows.append(
                ["average", _fmt(avg.age_years), _fmt(avg.annual_km, 0), _fmt(avg.ltm_km, 0)]
            )
            _print_rows(rows)
    if args.format == JSON_FORMAT:
        print(json.dumps(payload, ensure_ascii=False, separators=(",", ":")))
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import create_app

    ui_dir = args.ui_dir
    if ui_dir is None:
        candidate = Path("frontend") / "dist"
        if candidate.is_dir():
            ui_dir = candidate
    app = create_app(data_dir=args.data_dir, ui_dir=ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mobishift",
        description="Emission accounting for car-sharing mobility shifts.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--data-dir",
        default=None,
        help="alternative data directory (default: bundled data, "
        "or MOBISHIFT_DATA_DIR)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factors", help="per-mode emission factors")
    p.add_argument("--grid", default=None, help="grid label or intensity in g/kWh")
    p.add_argument("--scenario", type=int, default=None, help="lifetime scenario id")
    p.add_argument("--format", choices=[TABLE, JSON_FORMAT], default=TABLE)
    p.set_defaults(func=cmd_factors)

    p = sub.add_parser("case", help="run a bundled case study")
    p.add_argument("region", choices=CASE_CHOICES)
    p.add_argument("--scenario", type=int, default=None)
    p.add_argument(
        "--no-modal-shift",
        action="store_true",
        help="count only displaced car-km and added shared-car-km",
    )
    p.add_argument(
        "--factor-mode", choices=["canonical", "computed"], default="canonical"
    )
    p.add_argument("--format", choices=[TABLE, JSON_FORMAT, CSV_FORMAT], default=TABLE)
    p.set_defaults(func=cmd_case)

    p = sub.add_parser("calc", help="emissions for a custom before/during pair")
    p.add_argument("--input", required=True, help="request JSON file, or - for stdin")
    p.set_defaults(func=cmd_calc)

    p = sub.add_parser("sweep", help="sensitivity sweeps")
    p.add_argument("parameter", choices=["bus-occupancy", "grid"])
    p.add_argument("--case", default=None)
    p.add_argument("--scenario", type=int, default=None)
    p.add_argument(
        "--factor-mode", choices=["canonical", "computed"], default="canonical"
    )
    p.add_argument(
        "--points",
        default=None,
        help="comma-separated values (grid sweeps also accept labels)",
    )
    p.add_argument("--min", type=float, default=None)
    p.add_argument("--max", type=float, default=None)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--format", choices=[TABLE, JSON_FORMAT, CSV_FORMAT], default=TABLE)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("regress", help="retirement regression on an inspection CSV")
    p.add_argument("--csv", required=True)
    p.add_argument("--predictor", choices=["age", "mileage"], default="age")
    p.add_argument("--reference-year", type=int, required=True)
    p.add_argument("--lookahead", type=int, default=2)
    p.add_argument("--seed", type=int, default=0, help="seed for class balancing")
    p.add_argument(
        "--no-balance", action="store_true", help="skip majority-class subsampling"
    )
    p.add_argument("--format", choices=[TABLE, JSON_FORMAT], default=TABLE)
    p.set_defaults(func=cmd_regress)

    p = sub.add_parser("fleet", help="fleet mileage tables")
    p.add_argument("--usage", default=None, help="per-city fleet usage JSON")
    p.add_argument("--lifetimes", default=None, help="private-car lifetime JSON")
    p.add_argument("--format", choices=[TABLE, JSON_FORMAT], default=TABLE)
    p.set_defaults(func=cmd_fleet)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--ui-dir", default=None, help="static UI build to serve at /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: "Sequence[str] | None" = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MobishiftError as exc:
        # an unknown scenario id is a usage mistake, same as an unknown
        # subcommand; everything else is a domain or data problem
        if isinstance(exc, DomainError) and exc.field == "scenario":
            print(f"usage error: {exc}", file=sys.stderr)
            return 2
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON input ({exc})", file=sys.stderr)
        return 1
    except (KeyError, TypeError, ValueError) as exc:
        print(f"error: bad input data ({exc})", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

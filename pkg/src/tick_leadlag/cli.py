"""Command line interface for tick-leadlag.

Usage:
    tick-leadlag ingest    --data DIR --ric FCE
    tick-leadlag stats     --data DIR --ric FCE TOTF.PA
    tick-leadlag xcorr     --data DIR --leader FCE --lagger TOTF.PA
    tick-leadlag intraday  --data DIR --leader FCE --lagger TOTF.PA
    tick-leadlag threshold --data DIR --leader FCE --lagger TOTF.PA
    tick-leadlag response  --data DIR --leader FCE --lagger TOTF.PA
    tick-leadlag backtest  --data DIR --leader FCE --lagger TOTF.PA
    tick-leadlag simulate  [--lambda2 0.2 0.1 0.04 0.02]
    tick-leadlag oracle    --lambda1 0.3 --lambda2 0.5 --T 20 --lags 0 1 2 5 10
    tick-leadlag surrogate --data DIR --leader FCE --lagger TOTF.PA
    tick-leadlag network   --data DIR --ric FCE TOTF.PA BNPP.PA

Every command writes its artifacts and a manifest.json under --out.

Exit codes:
    0 success; 1 usage or contract error; 2 data, estimator or network error;
    3 oracle guard exceeded.
"""

import argparse
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Optional

import numpy as np
import pandas as pd

from tick_leadlag import __version__
from tick_leadlag.contracts import (
    ContractValidationError,
    validate_backtest_report_json,
    validate_manifest_json,
    validate_settings_json,
    validate_xcorr_report_json,
)
from tick_leadlag.exports import (
    frame_to_csv_bytes,
    json_to_bytes,
    sha256_file,
    to_jsonable,
    write_artifact,
)
from tick_leadlag.forecast import (
    audit_no_lookahead,
    benchmark_forecasts,
    compare_reports,
    coarse_tick_sweep,
    evaluate_forecasts,
    model_forecasts,
)
from tick_leadlag.guardrails import (
    OracleGuardError,
    check_oracle_exponent,
    log_messages,
    normalize_simulation_settings,
)
from tick_leadlag.hycorr import (
    EstimatorError,
    LagGrid,
    cross_correlation_curve,
    curve_report,
    extract_summary,
    intraday_profile,
    mirror_curve,
    previous_tick_curve,
    thresholded_curve,
)
from tick_leadlag.liquidity import compute_liquidity_stats, liquidity_table
from tick_leadlag.network import NetworkError, build_mst, graph_to_gml, summarize_pairs
from tick_leadlag.response import (
    default_response_lags,
    quotes_by_day,
    response_curves,
    response_frame,
)
from tick_leadlag.settings import build_lag_grid, load_settings
from tick_leadlag.simkit import (
    SimConfig,
    generate_surrogate,
    oracle_table,
    simulate_estimators,
)
from tick_leadlag.tickdata import (
    InstrumentData,
    TickDataError,
    common_session,
    list_days,
    load_instrument,
    load_instrument_meta,
    load_pair,
    write_quotes,
    write_tick_series,
    write_trades,
)

logger = logging.getLogger("tick_leadlag")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_GUARD = 3


class RunContext:
    """Output directory, settings and the artifact list of one command."""

    def __init__(self, args: argparse.Namespace, settings: dict[str, Any]):
        self.args = args
        self.settings = settings
        self.out = Path(args.out)
        self.fmt = settings["run"]["format"]
        self.artifacts: list[dict[str, str]] = []
        self.messages: list[dict[str, Any]] = []
        self.inputs: dict[str, str] = {}
        if getattr(args, "config", None) is not None:
            self.add_input(Path(args.config), Path(args.config).as_posix())

    def write_bytes(self, name: str, data: bytes) -> None:
        entry = write_artifact(self.out / name, data)
        entry["path"] = Path(name).as_posix()
        self.artifacts.append(entry)
        logger.info("Wrote %s", self.out / name)

    def record(self, path: Path) -> None:
        """Register a file written by a library writer."""
        self.artifacts.append(
            {"path": path.relative_to(self.out).as_posix(), "sha256": sha256_file(path)}
        )

    def write_frame(self, stem: str, df: pd.DataFrame) -> None:
        if self.fmt == "csv":
            self.write_bytes(f"{stem}.csv", frame_to_csv_bytes(df))
        else:
            records = {"columns": list(df.columns), "rows": df.to_dict(orient="records")}
            self.write_bytes(f"{stem}.json", json_to_bytes(records))

    def write_json(self, name: str, obj: dict[str, Any]) -> None:
        self.write_bytes(name, json_to_bytes(obj))

    def add_input(self, path: Path, label: Optional[str] = None) -> None:
        """Hash a file the command read; labels default to paths under --data."""
        if label is None:
            label = path.relative_to(Path(self.args.data)).as_posix()
        self.inputs[label] = sha256_file(path)

    def add_instruments(self, *instruments: InstrumentData) -> None:
        """Record the files and per-day messages of loaded instruments."""
        for inst in instruments:
            for path in inst.sources:
                self.add_input(path)
            for day, data in inst.days.items():
                for msg in data.messages:
                    self.messages.append({**msg, "ric": inst.meta.ric, "day": day})


# ============================================================================
# ARGUMENTS
# ============================================================================


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="Random seed")
    common.add_argument("--jobs", type=int, default=None, help="Worker processes")
    common.add_argument("--format", choices=["json", "csv"], default=None, help="Output format")
    common.add_argument("--out", type=Path, default=Path("out"), help="Output directory")
    common.add_argument("--dry-run", action="store_true", help="Check inputs, write nothing")
    common.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level",
    )
    common.add_argument("--config", type=Path, default=None, help="Settings JSON file")
    common.add_argument("--trim-minutes", type=float, default=None, help="Session trim")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="tick-leadlag",
        description="Lead/lag analysis of tick data with the Hayashi-Yoshida estimator",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def data_cmd(name: str, help_text: str, *, pair: bool) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--data", type=Path, required=True, help="Dataset directory")
        p.add_argument("--tolerance-ms", type=float, default=None, help="Timestamp tolerance")
        if pair:
            p.add_argument("--leader", required=True, help="First instrument (X)")
            p.add_argument("--lagger", required=True, help="Second instrument (Y)")
        return p

    p = data_cmd("ingest", "Clean raw files into tick-time series", pair=False)
    p.add_argument("--ric", required=True)
    p.add_argument("--theta-ticks", type=float, default=0.0, help="Coarse tick-time threshold")

    p = data_cmd("stats", "Liquidity summary table", pair=False)
    p.add_argument("--ric", nargs="+", required=True)

    p = data_cmd("xcorr", "Lagged cross-correlation, LLR and maximum lag", pair=True)
    p.add_argument("--previous-tick-mesh", type=float, default=None, help="Also run PT (s)")

    data_cmd("intraday", "Lead/lag indicators per intraday slice", pair=True)
    data_cmd("threshold", "Thresholded cross-correlations", pair=True)
    data_cmd("response", "Lagger quote response to leader moves", pair=True)

    p = data_cmd("backtest", "Out-of-sample lead/lag forecasting backtest", pair=True)
    p.add_argument("--execution", choices=["midquote", "cross_spread"], default=None)
    p.add_argument("--benchmark", choices=["random", "autocorrelation"], default=None)
    p.add_argument(
        "--coarse-ticks", type=float, nargs="+", default=None,
        help="Also backtest with the lagger in coarse tick time at these thresholds (ticks)",
    )

    p = sub.add_parser("simulate", parents=[common], help="HY vs previous-tick on simulations")
    p.add_argument("--lambda1", type=float, default=None)
    p.add_argument("--lambda2", type=float, nargs="+", default=None)
    p.add_argument("--rho", type=float, default=None)
    p.add_argument("--T", type=float, default=None)
    p.add_argument("--mesh", type=float, default=None)
    p.add_argument("--reps", type=int, default=None)
    p.add_argument("--advanced", action="store_true", help="Lift the safe repetition cap")

    p = sub.add_parser("oracle", parents=[common], help="Expected HY covariance table")
    p.add_argument("--lambda1", type=float, required=True)
    p.add_argument("--lambda2", type=float, required=True)
    p.add_argument("--rho", type=float, default=0.8)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--lags", type=float, nargs="+", default=[0.0])
    p.add_argument("--reps", type=int, default=0, help="Monte Carlo repetitions (0 = none)")
    p.add_argument("--no-series", action="store_true", help="Skip the series evaluation")

    p = data_cmd("surrogate", "Surrogate pair on the real timestamps", pair=True)
    p.add_argument("--rho", type=float, default=None, help="Default: HY correlation at lag 0")
    p.add_argument("--mesh", type=float, default=1.0)

    p = data_cmd("network", "Lead/lag minimum spanning tree", pair=False)
    p.add_argument("--ric", nargs="+", required=True)
    return parser


def _resolve_settings(args: argparse.Namespace) -> dict[str, Any]:
    settings = load_settings(args.config)
    run = settings["run"]
    if args.seed is not None:
        run["seed"] = max(int(args.seed), 0)
    if args.jobs is not None:
        run["jobs"] = max(int(args.jobs), 1)
    if args.format is not None:
        run["format"] = args.format
    if args.trim_minutes is not None:
        settings["session"]["trim_minutes"] = max(float(args.trim_minutes), 0.0)
    tolerance = getattr(args, "tolerance_ms", None)
    if tolerance is not None:
        settings["session"]["timestamp_tolerance_ms"] = max(float(tolerance), 0.0)
    validate_settings_json(settings)
    return settings


def _load_pair(ctx: RunContext) -> tuple[InstrumentData, InstrumentData]:
    sess = ctx.settings["session"]
    x, y = load_pair(
        ctx.args.data,
        ctx.args.leader,
        ctx.args.lagger,
        trim_minutes=sess["trim_minutes"],
        tolerance_ms=sess["timestamp_tolerance_ms"],
    )
    ctx.add_instruments(x, y)
    return x, y


# ============================================================================
# COMMANDS
# ============================================================================


def cmd_ingest(ctx: RunContext) -> None:
    sess = ctx.settings["session"]
    inst = load_instrument(
        ctx.args.data,
        ctx.args.ric,
        trim_minutes=sess["trim_minutes"],
        tolerance_ms=sess["timestamp_tolerance_ms"],
        theta_ticks=ctx.args.theta_ticks,
    )
    ctx.add_instruments(inst)
    rows = []
    for day, data in inst.days.items():
        path = ctx.out / "ticks" / inst.meta.ric / f"{day}.csv"
        write_tick_series(data.series, path)
        ctx.record(path)
        rows.append(
            {
                "day": day,
                "n_trades": len(data.trades),
                "n_epochs": len(data.series),
                "n_trade_through": int(data.trades["trade_through"].sum()),
            }
        )
    ctx.write_frame("ingest_summary", pd.DataFrame(rows))


def cmd_stats(ctx: RunContext) -> None:
    sess = ctx.settings["session"]
    stats = []
    for ric in ctx.args.ric:
        inst = load_instrument(
            ctx.args.data,
            ric,
            trim_minutes=sess["trim_minutes"],
            tolerance_ms=sess["timestamp_tolerance_ms"],
        )
        ctx.add_instruments(inst)
        trades = {d: data.trades for d, data in inst.days.items()}
        quotes = quotes_by_day(inst.days) or None
        stats.append(compute_liquidity_stats(trades, quotes, inst.meta))
    ctx.write_frame("stats", liquidity_table(stats))


def _xcorr_report(ctx: RunContext, x: InstrumentData, y: InstrumentData) -> dict[str, Any]:
    grid = build_lag_grid(ctx.settings)
    summ = ctx.settings["summary"]
    jobs = ctx.settings["run"]["jobs"]
    curve = cross_correlation_curve(x.series_by_day(), y.series_by_day(), grid, jobs=jobs)
    if curve.n_days == 0:
        raise EstimatorError("no usable common day")
    summary = extract_summary(curve, mesh=summ["spline_mesh_s"], use_abs=summ["use_abs"])
    reverse = extract_summary(
        mirror_curve(curve), mesh=summ["spline_mesh_s"], use_abs=summ["use_abs"]
    )
    report = {
        "pair": {"leader": x.meta.ric, "lagger": y.meta.ric},
        **curve_report(curve, summary),
        "reverse": {
            "llr": reverse.llr,
            "max_corr": reverse.max_corr,
            "max_lag_s": reverse.max_lag_s,
        },
    }
    mesh = getattr(ctx.args, "previous_tick_mesh", None)
    if mesh is not None:
        pt = previous_tick_curve(x.series_by_day(), y.series_by_day(), grid, mesh, jobs=jobs)
        report["previous_tick"] = curve_report(pt, extract_summary(pt))
        report["previous_tick"]["mesh_s"] = mesh
    return report


def cmd_xcorr(ctx: RunContext) -> None:
    x, y = _load_pair(ctx)
    report = _xcorr_report(ctx, x, y)
    if ctx.fmt == "csv":
        df = pd.DataFrame(
            {"lag_s": report["grid"], "rho": report["rho_mean"], "ci95": report["ci95"]}
        )
        ctx.write_bytes("xcorr.csv", frame_to_csv_bytes(df))
    else:
        validate_xcorr_report_json(to_jsonable(report))
        ctx.write_json("xcorr_report.json", report)


def cmd_intraday(ctx: RunContext) -> None:
    x, y = _load_pair(ctx)
    window = common_session([x.meta, y.meta], ctx.settings["session"]["trim_minutes"])
    intra = ctx.settings["intraday"]
    profile = intraday_profile(
        x.series_by_day(),
        y.series_by_day(),
        window,
        slice_minutes=intra["slice_minutes"],
        max_lag=intra["max_lag_s"],
        grid=build_lag_grid(ctx.settings),
        use_abs=ctx.settings["summary"]["use_abs"],
    )
    ctx.write_frame("intraday", profile)


def cmd_threshold(ctx: RunContext) -> None:
    x, y = _load_pair(ctx)
    grid = build_lag_grid(ctx.settings)
    rows, curves = [], []
    for half in ctx.settings["threshold"]["theta_halfticks"]:
        theta = half * x.meta.tick_size / 2
        curve = thresholded_curve(x.series_by_day(), y.series_by_day(), grid, theta)
        row = {
            "theta_halfticks": half,
            "theta": theta,
            "rho_zero_leader_side": float(curve.rho[grid.zero_index]),
            "rho_zero_lagger_side": curve.extras["rho_zero_lagger_side"],
        }
        try:
            row.update(extract_summary(curve).to_dict())
        except EstimatorError as e:
            logger.info("theta = %d half-ticks: %s", half, e)
        rows.append(row)
        curves.append(
            pd.DataFrame(
                {"theta_halfticks": half, "lag_s": curve.lags, "rho": curve.rho,
                 "ci95": curve.ci95}
            )
        )
    ctx.write_frame("threshold_summary", pd.DataFrame(rows))
    ctx.write_frame("threshold_curves", pd.concat(curves, ignore_index=True))


def cmd_response(ctx: RunContext) -> None:
    x, y = _load_pair(ctx)
    resp = ctx.settings["response"]
    quotes = quotes_by_day(y.days)
    if not quotes:
        raise TickDataError(f"No quotes for {y.meta.ric}")
    curves = response_curves(
        x.series_by_day(),
        quotes,
        leader_tick=x.meta.tick_size,
        lagger_tick=y.meta.tick_size,
        thetas=resp["theta_halfticks"],
        lags=default_response_lags(resp["max_lag_s"], resp["step_s"]),
    )
    ctx.write_bytes("response.csv", frame_to_csv_bytes(response_frame(curves)))


def cmd_backtest(ctx: RunContext) -> None:
    x, y = _load_pair(ctx)
    fc = ctx.settings["forecast"]
    execution = ctx.args.execution or fc["execution"]
    benchmark = ctx.args.benchmark or fc["benchmark"]
    grid = build_lag_grid(ctx.settings)
    xs, ys = x.series_by_day(), y.series_by_day()

    calib = {
        "window_days": fc["window_days"],
        "grid": grid,
        "max_lag": fc["max_lag_s"],
        "z": fc["z"],
    }
    trades, models = model_forecasts(xs, ys, **calib)
    report = evaluate_forecasts(trades, execution)
    bench_trades = benchmark_forecasts(ys, benchmark, seed=ctx.settings["run"]["seed"], **calib)
    bench = evaluate_forecasts(bench_trades, execution)
    comparison: dict[str, Any] = {}
    if report.n_trades and bench.n_trades:
        comparison = compare_reports(report, bench)
        report.attach_comparison(benchmark, comparison)
    audit = audit_no_lookahead(models, xs, ys, max_checks_per_day=50)

    doc = {
        "pair": {"leader": x.meta.ric, "lagger": y.meta.ric},
        "window_days": fc["window_days"],
        "model": report.to_dict(),
        "benchmark": {"kind": benchmark, **bench.to_dict()},
        "comparison": comparison,
        "audit": audit,
        "n_test_days": len(models),
    }
    validate_backtest_report_json(to_jsonable(doc))
    ctx.write_json("backtest_report.json", doc)
    ctx.write_bytes("trades.csv", frame_to_csv_bytes(report.trades_frame()))

    if ctx.args.coarse_ticks:
        sweep = coarse_tick_sweep(
            xs, ys, y.meta.tick_size, ctx.args.coarse_ticks, execution=execution, **calib
        )
        rows = [{"theta_ticks": theta, **r.to_dict()} for theta, r in sweep.items()]
        ctx.write_frame("coarse_tick_sweep", pd.DataFrame(rows))


def _simulation_settings(ctx: RunContext) -> dict[str, Any]:
    sim = dict(ctx.settings["simulation"])
    for key, attr in (("lambda1", "lambda1"), ("rho", "rho"), ("T", "T"), ("mesh", "mesh")):
        value = getattr(ctx.args, attr)
        if value is not None:
            sim[key] = value
    if ctx.args.lambda2 is not None:
        sim["lambda2s"] = ctx.args.lambda2
    if ctx.args.reps is not None:
        sim["n_reps"] = ctx.args.reps
    sim, messages = normalize_simulation_settings(sim, advanced_unlocked=ctx.args.advanced)
    log_messages(messages, logger)
    ctx.messages.extend(messages)
    return sim


def cmd_simulate(ctx: RunContext) -> None:
    sim = _simulation_settings(ctx)

    cfg = SimConfig(
        lambda1=sim["lambda1"],
        lambda2=sim["lambda2s"][0],
        rho=sim["rho"],
        T=sim["T"],
        mesh=sim["mesh"],
        seed=ctx.settings["run"]["seed"],
        n_reps=sim["n_reps"],
    )
    results = simulate_estimators(
        cfg, sim["lambda2s"], build_lag_grid(ctx.settings), jobs=ctx.settings["run"]["jobs"]
    )
    ctx.write_frame("simulate_summary", pd.DataFrame([r.summary_row() for r in results]))
    curves = []
    for r in results:
        for name, curve in (("hy", r.hy), ("previous_tick", r.previous_tick)):
            curves.append(
                pd.DataFrame(
                    {"lambda2": r.lambda2, "estimator": name, "lag_s": curve.lags,
                     "rho": curve.rho, "ci95": curve.ci95}
                )
            )
    ctx.write_frame("simulate_curves", pd.concat(curves, ignore_index=True))


def cmd_oracle(ctx: RunContext) -> None:
    a = ctx.args
    table = oracle_table(
        a.lambda1,
        a.lambda2,
        a.rho,
        a.T,
        a.lags,
        n_reps=a.reps,
        seed=ctx.settings["run"]["seed"],
        series=not a.no_series,
    )
    ctx.write_frame("oracle", table)


def cmd_surrogate(ctx: RunContext) -> None:
    x, y = _load_pair(ctx)
    rho = ctx.args.rho
    if rho is None:
        zero_grid = LagGrid.from_positive([1.0])
        curve = cross_correlation_curve(x.series_by_day(), y.series_by_day(), zero_grid)
        rho = float(np.clip(curve.rho[curve.grid.zero_index], -1.0, 1.0))
        if not math.isfinite(rho):
            raise EstimatorError("cannot estimate the pair correlation at lag 0")
    logger.info("Surrogate correlation %.4f", rho)

    seed = ctx.settings["run"]["seed"]
    base = ctx.out / "surrogate"
    for inst in (x, y):
        meta_path = base / inst.meta.ric / "meta.json"
        ctx.write_json(meta_path.relative_to(ctx.out).as_posix(), inst.meta.to_dict())
    for k, day in enumerate(sorted(set(x.days) & set(y.days))):
        sx, sy = x.days[day].series, y.days[day].series
        if len(sx) == 0 or len(sy) == 0:
            continue
        gx, gy = generate_surrogate(sx, sy, rho, ctx.args.mesh, seed, rep=k)
        for inst, series in ((x, gx), (y, gy)):
            _write_surrogate_day(ctx, base / inst.meta.ric, day, series, inst.meta.tick_size)


def _write_surrogate_day(ctx: RunContext, folder: Path, day: str, series, tick: float) -> None:
    ts = series.ts.astype(np.int64)
    trades = pd.DataFrame({"ts_ms": ts, "price": series.mid, "qty": 1})
    # one quote 1 ms before each trade carries the surrogate midquote
    quotes = pd.DataFrame(
        {
            "ts_ms": ts - 1,
            "bid": series.mid - tick / 2,
            "bid_qty": 1,
            "ask": series.mid + tick / 2,
            "ask_qty": 1,
        }
    )
    for name, df, writer in (
        (f"{day}.trades.csv", trades, write_trades),
        (f"{day}.quotes.csv", quotes, write_quotes),
    ):
        path = folder / name
        writer(df, path)
        ctx.record(path)


def cmd_network(ctx: RunContext) -> None:
    sess = ctx.settings["session"]
    rics = sorted(set(ctx.args.ric))
    metas = [load_instrument_meta(ctx.args.data, r) for r in rics]
    window = common_session(metas, sess["trim_minutes"])
    days = sorted(set.intersection(*(set(list_days(ctx.args.data, r)) for r in rics)))
    if not days:
        raise TickDataError("No common day across the selected instruments")

    series = {}
    for ric in rics:
        inst = load_instrument(
            ctx.args.data, ric, window=window, tolerance_ms=sess["timestamp_tolerance_ms"],
            days=days,
        )
        ctx.add_instruments(inst)
        series[ric] = inst.series_by_day()
    pairs = summarize_pairs(
        series,
        build_lag_grid(ctx.settings),
        correlation=ctx.settings["network"]["correlation"],
        jobs=ctx.settings["run"]["jobs"],
    )
    graph = build_mst(pairs, nodes=rics)
    ctx.write_bytes("edges.csv", frame_to_csv_bytes(graph.edges_frame()))
    ctx.write_bytes("network.gml", graph_to_gml(graph).encode("utf-8"))
    ctx.write_frame(
        "pairs",
        pd.DataFrame(
            [{"x": p.x, "y": p.y, "rho": p.rho, "llr": p.llr, "max_lag_s": p.max_lag_s}
             for p in pairs]
        ),
    )


COMMANDS = {
    "ingest": cmd_ingest,
    "stats": cmd_stats,
    "xcorr": cmd_xcorr,
    "intraday": cmd_intraday,
    "threshold": cmd_threshold,
    "response": cmd_response,
    "backtest": cmd_backtest,
    "simulate": cmd_simulate,
    "oracle": cmd_oracle,
    "surrogate": cmd_surrogate,
    "network": cmd_network,
}


def _manifest(ctx: RunContext) -> dict[str, Any]:
    args = {
        k: v
        for k, v in sorted(vars(ctx.args).items())
        if k not in ("out", "log_level", "dry_run", "config")
    }
    return {
        "tool": "tick-leadlag",
        "version": __version__,
        "command": ctx.args.command,
        "args": to_jsonable(args),
        "settings": ctx.settings,
        "inputs": [{"path": p, "sha256": h} for p, h in sorted(ctx.inputs.items())],
        "artifacts": sorted(ctx.artifacts, key=lambda a: a["path"]),
        "messages": ctx.messages,
    }


def _requested_rics(args: argparse.Namespace) -> list[str]:
    if getattr(args, "leader", None) is not None:
        return [args.leader, args.lagger]
    ric = args.ric
    return [ric] if isinstance(ric, str) else sorted(set(ric))


def _dry_run(ctx: RunContext) -> dict[str, Any]:
    """Check metadata contracts, day files and guards without reading any tick.

    Raises the same errors the command would raise on those inputs.
    """
    args = ctx.args
    plan: dict[str, Any] = {"command": args.command, "out": str(args.out)}

    if args.command == "simulate":
        plan["simulation"] = _simulation_settings(ctx)
    elif args.command == "oracle":
        plan["exponent"] = check_oracle_exponent(args.lambda1, args.lambda2, args.T)

    data = getattr(args, "data", None)
    if data is not None:
        if not Path(data).is_dir():
            raise TickDataError(f"Dataset directory not found: {data}")
        rics = _requested_rics(args)
        metas = [load_instrument_meta(data, ric) for ric in rics]
        day_sets = {ric: list_days(data, ric) for ric in rics}
        if args.command in ("ingest", "stats"):
            days = day_sets
        else:
            common = sorted(set.intersection(*(set(d) for d in day_sets.values())))
            days = {ric: common for ric in rics}
            start, end = common_session(metas, ctx.settings["session"]["trim_minutes"])
            if start >= end:
                raise TickDataError(f"Trading sessions of {rics} do not overlap")
        for ric in rics:
            if not days[ric]:
                raise TickDataError(f"No trading day for {ric} in {data}")
            folder = Path(data) / ric
            ctx.add_input(folder / "meta.json")
            for day in days[ric]:
                ctx.add_input(folder / f"{day}.trades.csv")
                if (folder / f"{day}.quotes.csv").exists():
                    ctx.add_input(folder / f"{day}.quotes.csv")
        plan["days"] = days

    plan["inputs"] = [{"path": p, "sha256": h} for p, h in sorted(ctx.inputs.items())]
    plan["messages"] = ctx.messages
    return plan


def _configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def run(args: argparse.Namespace) -> int:
    settings = _resolve_settings(args)
    ctx = RunContext(args, settings)
    if args.dry_run:
        print(json.dumps(to_jsonable(_dry_run(ctx)), sort_keys=True))
        return EXIT_OK

    COMMANDS[args.command](ctx)
    manifest = to_jsonable(_manifest(ctx))
    validate_manifest_json(manifest)
    ctx.write_bytes("manifest.json", json_to_bytes(manifest))
    ctx.artifacts.pop()
    print(f"OK: {args.command} -> {ctx.out}")
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    """Main CLI entry point.

    Returns:
        Exit code (see module docstring).
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    _configure_logging(args.log_level)

    try:
        return run(args)
    except ContractValidationError as e:
        print(f"FAIL: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OracleGuardError as e:
        print(f"FAIL: {e.message}", file=sys.stderr)
        return EXIT_GUARD
    except (TickDataError, FileNotFoundError, EstimatorError, NetworkError) as e:
        details = getattr(e, "details", None)
        print(f"FAIL: {e}", file=sys.stderr)
        if details:
            print(f"  {details}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as e:
        print(f"FAIL: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python
"""E2E Smoke Test - Headless Pipeline Verification.

Usage:
    python scripts/e2e_smoke.py [--fast]

Options:
    --fast      Fewer synthetic days and a shorter session

Exit Code:
    0 = PASS
    1 = FAIL
"""

import argparse
import json
import sys
import tempfile
import traceback
from pathlib import Path

# Ensure src is in path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

LEADER = "LEAD.X"
LAGGER = "LAG.Y"
TICK = 0.01
LAG_S = 2.0


def log(msg: str, level: str = "INFO"):
    """Simple logger."""
    print(f"[{level}] {msg}")


def write_dataset(root: Path, xs: dict, ys: dict, session_ms: int) -> None:
    """Write synthetic day mappings in the dataset layout."""
    import numpy as np
    import pandas as pd

    from tick_leadlag.tickdata import write_quotes, write_trades

    for ric, days in ((LEADER, xs), (LAGGER, ys)):
        folder = root / ric
        folder.mkdir(parents=True, exist_ok=True)
        meta = {
            "ric": ric,
            "tick_size": TICK,
            "session_open_ms": 0,
            "session_close_ms": session_ms,
        }
        (folder / "meta.json").write_text(json.dumps(meta, indent=2))
        for day, series in days.items():
            ts = np.floor(series.ts).astype(np.int64) + 1
            write_trades(pd.DataFrame({"ts_ms": ts, "price": series.mid, "qty": 100}),
                         folder / f"{day}.trades.csv")
            write_quotes(
                pd.DataFrame(
                    {"ts_ms": ts - 1, "bid": series.bid, "bid_qty": 10,
                     "ask": series.ask, "ask_qty": 10}
                ),
                folder / f"{day}.quotes.csv",
            )


def run_smoke(fast: bool = False) -> bool:
    """Run full smoke test pipeline."""

    log("=" * 60)
    log("tick-leadlag E2E Smoke Test")
    log("=" * 60)

    n_days = 4 if fast else 8
    T = 1800.0 if fast else 3600.0
    work = Path(tempfile.mkdtemp(prefix="tick_leadlag_smoke_"))

    # Step 1: Synthetic lead/lag days
    log("Step 1: Generating synthetic days...")
    try:
        from tick_leadlag.simkit import SimConfig, synthetic_days

        cfg = SimConfig(lambda1=0.5, lambda2=0.2, rho=0.8, T=T, seed=7, sigma=0.01)
        xs, ys = synthetic_days(cfg, n_days, lag_d=LAG_S, spread=TICK)
        write_dataset(work / "data", xs, ys, int(T * 1000) + 2)
        log(f"  {n_days} days, {sum(len(s) for s in xs.values())} leader epochs")

    except Exception as e:
        log(f"FAIL: {e}", "ERROR")
        traceback.print_exc()
        return False

    # Step 2: Reload through the ingest path
    log("Step 2: Loading the pair...")
    try:
        from tick_leadlag.tickdata import load_pair

        x, y = load_pair(work / "data", LEADER, LAGGER, trim_minutes=0)
        if len(x.days) != n_days:
            log(f"FAIL: expected {n_days} days, got {len(x.days)}", "ERROR")
            return False
        n_messages = sum(len(d.messages) for d in x.days.values())
        log(f"  Loaded {len(x.days)} common days ({n_messages} leader messages)")

    except Exception as e:
        log(f"FAIL: {e}", "ERROR")
        traceback.print_exc()
        return False

    # Step 3: Cross-correlation and lead/lag summary
    log("Step 3: Hayashi-Yoshida cross-correlation...")
    try:
        from tick_leadlag.hycorr import (
            LagGrid,
            cross_correlation_curve,
            curve_report,
            extract_summary,
        )

        grid = LagGrid.from_positive([0.5, 1, 1.5, 2, 2.5, 3, 4, 5, 10, 20, 30])
        curve = cross_correlation_curve(x.series_by_day(), y.series_by_day(), grid)
        summary = extract_summary(curve)
        log(f"  LLR = {summary.llr:.3f}, max lag = {summary.max_lag_s:.2f} s")
        if not summary.llr > 1:
            log("  Leader not detected as leading", "WARN")

        from tick_leadlag.contracts import validate_xcorr_report_json
        from tick_leadlag.exports import to_jsonable

        report = {
            "pair": {"leader": LEADER, "lagger": LAGGER},
            **curve_report(curve, summary),
            "reverse": {"llr": 1 / summary.llr, "max_corr": None, "max_lag_s": None},
        }
        validate_xcorr_report_json(to_jsonable(report))
        log("  Report valid")

    except Exception as e:
        log(f"FAIL: {e}", "ERROR")
        traceback.print_exc()
        return False

    # Step 4: Forecast backtest
    log("Step 4: Backtesting the forecaster...")
    try:
        from tick_leadlag.forecast import audit_no_lookahead, evaluate_forecasts, model_forecasts

        trades, models = model_forecasts(
            x.series_by_day(), y.series_by_day(), window_days=2, grid=grid, max_lag=10
        )
        report = evaluate_forecasts(trades, "midquote")
        audit = audit_no_lookahead(
            models, x.series_by_day(), y.series_by_day(), max_checks_per_day=20
        )
        log(f"  {report.n_trades} trades, accuracy {report.accuracy:.3f}")
        if audit["n_mismatch"]:
            log(f"FAIL: look-ahead audit found {audit['n_mismatch']} mismatches", "ERROR")
            return False

    except Exception as e:
        log(f"FAIL: {e}", "ERROR")
        traceback.print_exc()
        return False

    # Step 5: Oracle sanity check
    log("Step 5: Expected covariance oracle...")
    try:
        from tick_leadlag.simkit import oracle_expected_cov

        at_zero = oracle_expected_cov(0.3, 0.5, 0.8, 20.0, 0.0).expected_cov
        at_end = oracle_expected_cov(0.3, 0.5, 0.8, 20.0, 20.0).expected_cov
        log(f"  E[cov](0) = {at_zero:.6f}, E[cov](T) = {at_end:.6f}")
        if abs(at_zero - 0.8) > 1e-6 or at_end != 0:
            log("FAIL: oracle endpoints off", "ERROR")
            return False

    except Exception as e:
        log(f"FAIL: {e}", "ERROR")
        traceback.print_exc()
        return False

    # Step 6: CLI round
    log("Step 6: CLI xcorr + network...")
    try:
        from tick_leadlag.cli import main

        out = work / "out"
        common = ["--data", str(work / "data"), "--trim-minutes", "0", "--jobs", "1"]
        code = main(["xcorr", *common, "--leader", LEADER, "--lagger", LAGGER,
                     "--out", str(out / "xcorr")])
        if code != 0:
            log(f"FAIL: xcorr exit code {code}", "ERROR")
            return False
        code = main(["network", *common, "--ric", LEADER, LAGGER, "--out", str(out / "net")])
        if code != 0:
            log(f"FAIL: network exit code {code}", "ERROR")
            return False
        manifest = json.loads((out / "xcorr" / "manifest.json").read_text())
        log(f"  Manifest lists {len(manifest['artifacts'])} artifact(s)")

    except Exception as e:
        log(f"FAIL: {e}", "ERROR")
        traceback.print_exc()
        return False

    log("=" * 60)
    log("PASS: all smoke steps completed")
    log(f"Artifacts in {work}")
    log("=" * 60)
    return True


def main() -> int:
    parser = argparse.ArgumentParser(description="tick-leadlag E2E smoke test")
    parser.add_argument("--fast", action="store_true", help="Smaller synthetic dataset")
    args = parser.parse_args()
    return 0 if run_smoke(fast=args.fast) else 1


if __name__ == "__main__":
    sys.exit(main())

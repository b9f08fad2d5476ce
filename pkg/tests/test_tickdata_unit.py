"""Unit tests for tick data ingestion and preprocessing."""

from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from tick_leadlag.tickdata import (
    InstrumentMeta,
    QuoteEvent,
    TickDataError,
    TickSeries,
    TradeEvent,
    aggregate_same_timestamp,
    build_midquote_series,
    common_session,
    days_of,
    load_instrument,
    load_instrument_meta,
    load_pair,
    parse_quotes,
    parse_trades,
    prepare_day,
    quotes_frame,
    read_tick_series,
    session_filter,
    to_tick_time,
    trades_frame,
    write_tick_series,
    write_trades,
)

FIXTURES_DIR = Path(__file__).parent / "fixtures"
HAND_DIR = FIXTURES_DIR / "hand_instance"

# session 09:00 - 17:30 in ms since midnight
META = InstrumentMeta("TOTF.PA", 0.005, 9 * 3_600_000, 17 * 3_600_000 + 1_800_000)


class TestInstrumentMeta:
    """Tests for instrument metadata."""

    def test_session_window_trims_both_ends(self):
        start, end = META.session_window(30)
        assert start == META.session_open_ms + 1_800_000
        assert end == META.session_close_ms - 1_800_000

    def test_rejects_nonpositive_tick(self):
        with pytest.raises(ValueError):
            InstrumentMeta("BAD", 0.0, 0, 10)

    def test_load_from_dataset(self):
        meta = load_instrument_meta(HAND_DIR, "X")
        assert meta.ric == "X"
        assert meta.tick_size == 1.0
        assert meta.to_dict()["currency"] == "EUR"

    def test_missing_meta_raises(self, tmp_path):
        with pytest.raises(TickDataError):
            load_instrument_meta(tmp_path, "NOPE")

    def test_invalid_meta_raises(self, tmp_path):
        (tmp_path / "BAD").mkdir()
        (tmp_path / "BAD" / "meta.json").write_text('{"ric": "BAD", "tick_size": -1}')
        with pytest.raises(TickDataError) as exc_info:
            load_instrument_meta(tmp_path, "BAD")
        assert exc_info.value.details


class TestParsing:
    """Tests for trades/quotes CSV parsing."""

    def test_well_formed_trades(self):
        df, messages = parse_trades(HAND_DIR / "X" / "2010-03-01.trades.csv")
        assert len(df) == 3
        assert df["ts_ms"].tolist() == [10, 12, 14]
        assert messages == []

    def test_malformed_rows_skipped_with_lines(self):
        df, messages = parse_trades(FIXTURES_DIR / "trades_messy.csv")
        # both same-timestamp rows kept; bad price and zero qty dropped
        assert df["ts_ms"].tolist() == [1000, 1000, 1020]
        codes = {m["code"]: m for m in messages}
        assert codes["ROW_MALFORMED"]["details"]["lines"] == [4]
        assert codes["TRADE_NONPOSITIVE"]["details"]["lines"] == [5]

    def test_bad_header_raises(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text("time,price,qty\n1,10,1\n")
        with pytest.raises(TickDataError) as exc_info:
            parse_trades(path)
        assert "header" in exc_info.value.message

    def test_non_monotone_beyond_tolerance_raises(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text("ts_ms,price,qty\n100,10,1\n50,10,1\n")
        with pytest.raises(TickDataError) as exc_info:
            parse_trades(path)
        assert "line 3" in exc_info.value.details

    def test_non_monotone_within_tolerance_sorted(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text("ts_ms,price,qty\n100,10,1\n95,11,1\n120,12,1\n")
        df, messages = parse_trades(path, tolerance_ms=10)
        assert df["ts_ms"].tolist() == [95, 100, 120]
        assert messages[0]["code"] == "TS_REORDERED"

    def test_crossed_quotes_dropped(self, tmp_path):
        path = tmp_path / "q.csv"
        path.write_text(
            "ts_ms,bid,bid_qty,ask,ask_qty\n1,10,1,10.5,1\n2,11,1,10.5,1\n3,10,1,10.5,1\n"
        )
        df, messages = parse_quotes(path)
        assert df["ts_ms"].tolist() == [1, 3]
        assert messages[0]["code"] == "QUOTE_CROSSED"

    def test_write_then_parse_trades(self, tmp_path):
        df, _ = parse_trades(HAND_DIR / "Y" / "2010-03-01.trades.csv")
        write_trades(df, tmp_path / "out.trades.csv")
        again, _ = parse_trades(tmp_path / "out.trades.csv")
        pd.testing.assert_frame_equal(df, again)


class TestAggregation:
    """Tests for same-timestamp aggregation."""

    def test_vwap_of_two_prices(self):
        trades = trades_frame([TradeEvent(1000, 10.0, 100), TradeEvent(1000, 10.01, 50)])
        out = aggregate_same_timestamp(trades)
        assert len(out) == 1
        assert out["price"].iloc[0] == pytest.approx(10.00333333, abs=1e-8)
        assert out["qty"].iloc[0] == 150
        assert bool(out["trade_through"].iloc[0])

    def test_single_trade_unchanged(self):
        trades = trades_frame([TradeEvent(1000, 10.0, 100), TradeEvent(2000, 10.5, 10)])
        out = aggregate_same_timestamp(trades)
        assert out["price"].tolist() == [10.0, 10.5]
        assert not out["trade_through"].any()

    def test_equal_prices_not_trade_through(self):
        trades = trades_frame([TradeEvent(1000, 10.0, 100), TradeEvent(1000, 10.0, 50)])
        out = aggregate_same_timestamp(trades)
        assert out["price"].iloc[0] == 10.0
        assert out["qty"].iloc[0] == 150
        assert not bool(out["trade_through"].iloc[0])

    def test_idempotent(self):
        trades = trades_frame(
            [TradeEvent(1, 10.0, 3), TradeEvent(1, 10.03, 7), TradeEvent(5, 9.9, 1)]
        )
        once = aggregate_same_timestamp(trades)
        twice = aggregate_same_timestamp(once)
        pd.testing.assert_frame_equal(once, twice)


class TestSessionFilter:
    """Tests for session trimming."""

    def test_boundaries(self):
        start, _ = META.session_window(30)
        trades = trades_frame(
            [
                TradeEvent(META.session_open_ms + 60_000, 10.0, 1),
                TradeEvent(start, 10.0, 1),
                TradeEvent(start + 1, 10.0, 1),
            ]
        )
        out = session_filter(trades, META, trim_minutes=30)
        assert out["ts_ms"].tolist() == [start, start + 1]

    def test_uniform_stream_count(self):
        ts = np.linspace(META.session_open_ms, META.session_close_ms, 1000, endpoint=False)
        trades = trades_frame(TradeEvent(int(t), 10.0, 1) for t in ts)
        out = session_filter(trades, META, trim_minutes=30)
        span = META.session_close_ms - META.session_open_ms
        kept = 1 - 2 * 1_800_000 / span
        assert abs(len(out) - 1000 * kept) <= 2

    def test_tick_series_input(self):
        series = TickSeries(np.array([0.0, 50.0, 150.0]), np.array([1.0, 2.0, 3.0]))
        out = session_filter(series, window=(0, 100))
        assert out.ts.tolist() == [0.0, 50.0]

    def test_common_session_intersects(self):
        other = InstrumentMeta("FCE", 0.5, 8 * 3_600_000, 22 * 3_600_000)
        assert common_session([META, other], 0) == (META.session_open_ms, META.session_close_ms)


class TestMidquotes:
    """Tests for midquote attachment and tick time."""

    def test_strictly_before(self):
        quotes = quotes_frame([QuoteEvent(1, 9.5, 1, 10.5, 1), QuoteEvent(2, 10.5, 1, 11.5, 1)])
        trades = trades_frame([TradeEvent(2, 10.0, 1)])
        out, messages = build_midquote_series(quotes, trades)
        assert out["mid"].tolist() == [10.0]
        assert out["spread"].tolist() == [1.0]
        assert messages == []

    def test_trade_before_first_quote_excluded(self):
        quotes = quotes_frame([QuoteEvent(5, 9.5, 1, 10.5, 1)])
        trades = trades_frame([TradeEvent(5, 10.0, 1), TradeEvent(6, 10.0, 1)])
        out, messages = build_midquote_series(quotes, trades)
        assert out["ts_ms"].tolist() == [6]
        assert messages[0]["code"] == "TRADE_WITHOUT_QUOTE"

    def test_matches_brute_force_scan(self):
        rng = np.random.default_rng(5)
        q_ts = np.sort(rng.choice(1000, size=100, replace=False))
        t_ts = np.sort(rng.choice(1000, size=100, replace=False))
        bids = np.round(rng.uniform(9, 10, size=100), 2)
        quotes = quotes_frame(QuoteEvent(int(t), b, 1, b + 0.01, 1) for t, b in zip(q_ts, bids))
        trades = trades_frame(TradeEvent(int(t), 10.0, 1) for t in t_ts)
        out, _ = build_midquote_series(quotes, trades)

        expected = []
        for t in t_ts:
            before = [k for k, q in enumerate(q_ts) if q < t]
            if before:
                expected.append(bids[before[-1]] + 0.005)
        np.testing.assert_allclose(out["mid"].to_numpy(), expected)

    def test_tick_time_keeps_changes(self):
        frame = pd.DataFrame({"ts_ms": [1, 2, 3, 4, 5], "mid": [10, 10, 10.005, 10.005, 10]})
        series = to_tick_time(frame)
        assert series.ts.tolist() == [1.0, 3.0, 5.0]
        np.testing.assert_allclose(series.increments, [0.005, -0.005])

    def test_coarse_tick_time(self):
        frame = pd.DataFrame({"ts_ms": [1, 2, 3], "mid": [10.0, 10.0025, 10.005]})
        series = to_tick_time(frame, theta_ticks=1, tick_size=0.005)
        assert series.ts.tolist() == [1.0, 3.0]

    def test_constant_stream_is_empty(self):
        frame = pd.DataFrame({"ts_ms": [1, 2, 3], "mid": [10.0, 10.0, 10.0]})
        series = to_tick_time(frame)
        assert len(series) == 0
        assert series.n_increments == 0

    def test_coarse_without_move_is_empty(self):
        frame = pd.DataFrame({"ts_ms": [1, 2, 3], "mid": [10.0, 10.0025, 10.0]})
        assert len(to_tick_time(frame, theta_ticks=1, tick_size=0.005)) == 0

    def test_trade_time_and_tick_time_differ(self):
        # the midquote does not move between the last two trades
        frame = pd.DataFrame({"ts_ms": [0, 2, 3, 5], "mid": [10.0, 11.0, 11.0, 12.0]})
        trade_time = TickSeries(frame["ts_ms"], frame["mid"])
        tick_time = to_tick_time(frame)
        assert trade_time.n_increments == 3
        assert tick_time.n_increments == 2
        assert tick_time.ts.tolist() == [0.0, 2.0, 5.0]


class TestDatasetLoading:
    """Tests for loading days from the dataset layout."""

    def test_hand_instance_pair(self):
        x, y = load_pair(HAND_DIR, "X", "Y", trim_minutes=0)
        sx = x.days["2010-03-01"].series
        sy = y.days["2010-03-01"].series
        assert sx.ts.tolist() == [10.0, 12.0, 14.0]
        assert sx.mid.tolist() == [10.0, 11.0, 10.0]
        assert sy.mid.tolist() == [20.0, 21.0, 23.0]
        assert sx.has_quotes

    def test_no_quotes_day(self):
        trades = trades_frame([TradeEvent(10, 10.0, 1)])
        data = prepare_day(trades, None, load_instrument_meta(HAND_DIR, "X"), trim_minutes=0)
        assert len(data.series) == 0
        assert data.messages[0]["code"] == "NO_QUOTES"

    def test_days_of_accepts_all_shapes(self):
        inst = load_instrument(HAND_DIR, "X", trim_minutes=0)
        series = inst.days["2010-03-01"].series
        assert list(days_of(inst)) == ["2010-03-01"]
        assert list(days_of(series)) == ["day"]
        assert days_of({"a": series})["a"] is series

    def test_tick_series_file_round_trip(self, tmp_path):
        series = TickSeries(
            np.array([1.0, 5.0]), np.array([10.0025, 10.0075]), np.array([10.0, 10.005]),
            np.array([10.005, 10.01]),
        )
        write_tick_series(series, tmp_path / "s.csv")
        again = read_tick_series(tmp_path / "s.csv")
        assert again.ts.tolist() == series.ts.tolist()
        assert again.mid.tolist() == series.mid.tolist()
        assert again.bid.tolist() == series.bid.tolist()


class TestTickSeries:
    """Tests for the TickSeries container."""

    def test_rejects_unsorted(self):
        with pytest.raises(ValueError):
            TickSeries(np.array([2.0, 1.0]), np.array([1.0, 1.0]))

    def test_until_is_inclusive(self):
        series = TickSeries(np.array([1.0, 2.0, 3.0]), np.array([1.0, 2.0, 3.0]))
        assert series.until(2.0).ts.tolist() == [1.0, 2.0]

    def test_between_half_open(self):
        series = TickSeries(np.array([1.0, 2.0, 3.0]), np.array([1.0, 2.0, 3.0]))
        assert series.between(1.0, 3.0, closed=False).ts.tolist() == [1.0, 2.0]

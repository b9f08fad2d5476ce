"""Trades/quotes ingestion, preprocessing and tick-time series.

Raw events live in pandas frames (one row per TradeEvent or QuoteEvent); the
estimator input is the array-backed TickSeries. Dataset layout on disk:

    <data_dir>/<ric>/meta.json
    <data_dir>/<ric>/<day>.trades.csv   (ts_ms,price,qty)
    <data_dir>/<ric>/<day>.quotes.csv   (ts_ms,bid,bid_qty,ask,ask_qty)
"""

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional

import numpy as np
import pandas as pd

from tick_leadlag._jit import njit
from tick_leadlag.contracts import ContractValidationError, load_json, validate_instrument_json
from tick_leadlag.guardrails import make_message

logger = logging.getLogger(__name__)

TRADE_COLUMNS = ["ts_ms", "price", "qty"]
QUOTE_COLUMNS = ["ts_ms", "bid", "bid_qty", "ask", "ask_qty"]
TICK_SERIES_COLUMNS = ["ts_ms", "mid"]

MS_PER_MINUTE = 60_000
DEFAULT_TRIM_MINUTES = 30
# tolerance, in tick units, for threshold comparisons on decimal prices
TICK_EPS = 1e-9


class TickDataError(Exception):
    """Error reading or validating tick data."""

    def __init__(self, message: str, details: Optional[str] = None):
        self.message = message
        self.details = details
        super().__init__(message)


# ============================================================================
# DOMAIN TYPES
# ============================================================================


@dataclass(frozen=True)
class InstrumentMeta:
    """Static description of an instrument."""

    ric: str
    tick_size: float
    session_open_ms: int
    session_close_ms: int
    currency: str = "EUR"

    def __post_init__(self):
        if not self.tick_size > 0:
            raise ValueError(f"{self.ric}: tick_size must be > 0, got {self.tick_size}")
        if not self.session_open_ms < self.session_close_ms:
            raise ValueError(f"{self.ric}: session_open_ms must precede session_close_ms")

    @classmethod
    def from_dict(cls, obj: dict[str, Any]) -> "InstrumentMeta":
        """Build from a meta.json object after contract validation."""
        validate_instrument_json(obj)
        return cls(
            ric=obj["ric"],
            tick_size=float(obj["tick_size"]),
            session_open_ms=int(obj["session_open_ms"]),
            session_close_ms=int(obj["session_close_ms"]),
            currency=obj.get("currency", "EUR"),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "ric": self.ric,
            "tick_size": self.tick_size,
            "session_open_ms": self.session_open_ms,
            "session_close_ms": self.session_close_ms,
            "currency": self.currency,
        }

    def session_window(self, trim_minutes: float = DEFAULT_TRIM_MINUTES) -> tuple[int, int]:
        """Closed window [open + trim, close - trim] in milliseconds."""
        trim = int(round(trim_minutes * MS_PER_MINUTE))
        return self.session_open_ms + trim, self.session_close_ms - trim


@dataclass(frozen=True)
class TradeEvent:
    ts_ms: int
    price: float
    qty: int
    trade_through: bool = False


@dataclass(frozen=True)
class QuoteEvent:
    ts_ms: int
    bid: float
    bid_qty: int
    ask: float
    ask_qty: int

    @property
    def spread(self) -> float:
        return self.ask - self.bid

    @property
    def mid(self) -> float:
        return (self.bid + self.ask) / 2


def trades_frame(events: Iterable[TradeEvent]) -> pd.DataFrame:
    """Build a trades frame from TradeEvent rows."""
    rows = [(e.ts_ms, e.price, e.qty, e.trade_through) for e in events]
    df = pd.DataFrame(rows, columns=TRADE_COLUMNS + ["trade_through"])
    return df.astype({"ts_ms": "int64", "price": "float64", "qty": "int64", "trade_through": bool})


def quotes_frame(events: Iterable[QuoteEvent]) -> pd.DataFrame:
    """Build a quotes frame from QuoteEvent rows."""
    rows = [(e.ts_ms, e.bid, e.bid_qty, e.ask, e.ask_qty) for e in events]
    df = pd.DataFrame(rows, columns=QUOTE_COLUMNS)
    return df.astype(
        {
            "ts_ms": "int64",
            "bid": "float64",
            "bid_qty": "int64",
            "ask": "float64",
            "ask_qty": "int64",
        }
    )


@dataclass(frozen=True, eq=False)
class TickSeries:
    """Observation epochs (ms) and the midquote at each epoch.

    `bid`/`ask` hold the prevailing quotes at each epoch when known.
    """

    ts: np.ndarray
    mid: np.ndarray
    bid: Optional[np.ndarray] = None
    ask: Optional[np.ndarray] = None

    def __post_init__(self):
        ts = np.ascontiguousarray(self.ts, dtype=np.float64)
        mid = np.ascontiguousarray(self.mid, dtype=np.float64)
        if ts.shape != mid.shape or ts.ndim != 1:
            raise ValueError("ts and mid must be 1-d arrays of equal length")
        if ts.size > 1 and not np.all(np.diff(ts) > 0):
            raise ValueError("TickSeries timestamps must be strictly increasing")
        object.__setattr__(self, "ts", ts)
        object.__setattr__(self, "mid", mid)
        for name in ("bid", "ask"):
            arr = getattr(self, name)
            if arr is not None:
                arr = np.ascontiguousarray(arr, dtype=np.float64)
                if arr.shape != ts.shape:
                    raise ValueError(f"{name} must align with ts")
                object.__setattr__(self, name, arr)

    def __len__(self) -> int:
        return int(self.ts.size)

    @property
    def increments(self) -> np.ndarray:
        return np.diff(self.mid)

    @property
    def n_increments(self) -> int:
        return max(len(self) - 1, 0)

    @property
    def has_quotes(self) -> bool:
        return self.bid is not None and self.ask is not None

    def _take(self, mask_or_index) -> "TickSeries":
        return TickSeries(
            self.ts[mask_or_index],
            self.mid[mask_or_index],
            None if self.bid is None else self.bid[mask_or_index],
            None if self.ask is None else self.ask[mask_or_index],
        )

    def between(self, start_ms: float, end_ms: float, *, closed: bool = True) -> "TickSeries":
        """Epochs with start_ms <= ts <= end_ms (ts < end_ms when closed is False)."""
        upper = self.ts <= end_ms if closed else self.ts < end_ms
        return self._take((self.ts >= start_ms) & upper)

    def until(self, now_ms: float) -> "TickSeries":
        """Epochs observed at or before now_ms."""
        return self._take(slice(0, int(np.searchsorted(self.ts, now_ms, side="right"))))

    def shifted(self, offset_ms: float) -> "TickSeries":
        return TickSeries(self.ts + offset_ms, self.mid, self.bid, self.ask)

    @classmethod
    def empty(cls) -> "TickSeries":
        return cls(np.empty(0), np.empty(0))


@dataclass
class DayData:
    """One preprocessed trading day of one instrument."""

    trades: pd.DataFrame
    quotes: Optional[pd.DataFrame]
    series: TickSeries
    messages: list[dict[str, Any]] = field(default_factory=list)


@dataclass
class InstrumentData:
    meta: InstrumentMeta
    days: dict[str, DayData]
    # files read to build this object, in reading order
    sources: list[Path] = field(default_factory=list)

    def series_by_day(self) -> dict[str, TickSeries]:
        return {day: data.series for day, data in self.days.items()}


# ============================================================================
# PARSING
# ============================================================================


def _parse_number(text: Any) -> float:
    try:
        return float(text)
    except (TypeError, ValueError):
        return math.nan


def _numeric_column(series: pd.Series) -> pd.Series:
    try:
        return series.astype("float64")
    except ValueError:
        return series.map(_parse_number).astype("float64")


def _read_event_csv(path: str | Path, columns: list[str]) -> pd.DataFrame:
    path = Path(path)
    try:
        raw = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except FileNotFoundError:
        raise TickDataError(f"File not found: {path}")
    except (OSError, UnicodeDecodeError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise TickDataError(f"Unreadable file: {path}", details=str(e))

    header = [c.strip() for c in raw.columns]
    if header != columns:
        raise TickDataError(
            f"Unexpected header in {path}",
            details=f"expected {','.join(columns)}, got {','.join(header)}",
        )
    raw.columns = columns
    return raw


def _coerce_events(
    raw: pd.DataFrame,
    path: Path,
    int_columns: list[str],
    messages: list[dict[str, Any]],
) -> pd.DataFrame:
    """Convert string columns to numbers, dropping malformed rows with line numbers."""
    df = pd.DataFrame({col: _numeric_column(raw[col]) for col in raw.columns})
    # header is line 1
    df["line"] = np.arange(len(df), dtype=np.int64) + 2

    bad = df[raw.columns].isna().any(axis=1) | ~np.isfinite(df[raw.columns]).all(axis=1)
    for col in int_columns:
        bad |= df[col].notna() & (df[col] != np.floor(df[col]))
    if bad.any():
        lines = df.loc[bad, "line"].tolist()
        messages.append(
            make_message(
                "warning",
                "ROW_MALFORMED",
                f"{path.name}: {len(lines)} malformed row(s) skipped",
                {"lines": lines},
            )
        )
        logger.warning("%s: skipped malformed rows at lines %s", path, lines[:10])
        df = df.loc[~bad]
    return df


def _check_monotone(
    df: pd.DataFrame, path: Path, tolerance_ms: float, messages: list[dict[str, Any]]
) -> pd.DataFrame:
    if len(df) < 2:
        return df
    ts = df["ts_ms"].to_numpy()
    running_max = np.maximum.accumulate(ts)
    back = running_max - ts
    if np.any(back > tolerance_ms):
        pos = int(np.argmax(back > tolerance_ms))
        line = int(df["line"].iloc[pos])
        raise TickDataError(
            f"Non-monotone timestamps in {path}",
            details=f"line {line} goes back {back[pos]:g} ms (tolerance {tolerance_ms:g} ms)",
        )
    if np.any(back > 0):
        messages.append(
            make_message(
                "warning",
                "TS_REORDERED",
                f"{path.name}: out-of-order timestamps within tolerance were re-sorted",
                {"n_rows": int(np.count_nonzero(back > 0))},
            )
        )
        df = df.sort_values("ts_ms", kind="stable")
    return df


def parse_trades(
    path: str | Path,
    meta: Optional[InstrumentMeta] = None,
    *,
    tolerance_ms: float = 0,
) -> tuple[pd.DataFrame, list[dict[str, Any]]]:
    """Parse a trades CSV into a frame sorted by timestamp.

    Args:
        path: CSV with header ts_ms,price,qty.
        meta: Instrument metadata (used for labelling messages).
        tolerance_ms: Largest backward timestamp step that is re-sorted instead of rejected.

    Returns:
        Tuple of (frame with ts_ms, price, qty, trade_through; messages).

    Raises:
        TickDataError: Unreadable file, bad header or non-monotone timestamps.
    """
    path = Path(path)
    messages: list[dict[str, Any]] = []
    raw = _read_event_csv(path, TRADE_COLUMNS)
    df = _coerce_events(raw, path, ["ts_ms", "qty"], messages)

    nonpositive = (df["price"] <= 0) | (df["qty"] <= 0)
    if nonpositive.any():
        lines = df.loc[nonpositive, "line"].tolist()
        messages.append(
            make_message(
                "warning",
                "TRADE_NONPOSITIVE",
                f"{path.name}: {len(lines)} trade(s) with non-positive price or qty skipped",
                {"lines": lines},
            )
        )
        df = df.loc[~nonpositive]

    df = _check_monotone(df, path, tolerance_ms, messages)
    out = pd.DataFrame(
        {
            "ts_ms": df["ts_ms"].astype("int64").to_numpy(),
            "price": df["price"].to_numpy(),
            "qty": df["qty"].astype("int64").to_numpy(),
            "trade_through": np.zeros(len(df), dtype=bool),
        }
    )
    if meta is not None:
        out.attrs["ric"] = meta.ric
    logger.debug("Parsed %d trades from %s", len(out), path)
    return out, messages


def parse_quotes(
    path: str | Path,
    meta: Optional[InstrumentMeta] = None,
    *,
    tolerance_ms: float = 0,
) -> tuple[pd.DataFrame, list[dict[str, Any]]]:
    """Parse a quotes CSV; crossed or locked books are rejected row by row.

    Returns:
        Tuple of (frame with ts_ms, bid, bid_qty, ask, ask_qty; messages).

    Raises:
        TickDataError: Unreadable file, bad header or non-monotone timestamps.
    """
    path = Path(path)
    messages: list[dict[str, Any]] = []
    raw = _read_event_csv(path, QUOTE_COLUMNS)
    df = _coerce_events(raw, path, ["ts_ms", "bid_qty", "ask_qty"], messages)

    invalid = (df["bid"] <= 0) | (df["bid"] >= df["ask"]) | (df["bid_qty"] < 0) | (
        df["ask_qty"] < 0
    )
    if invalid.any():
        lines = df.loc[invalid, "line"].tolist()
        messages.append(
            make_message(
                "warning",
                "QUOTE_CROSSED",
                f"{path.name}: {len(lines)} crossed or invalid quote(s) skipped",
                {"lines": lines},
            )
        )
        df = df.loc[~invalid]

    df = _check_monotone(df, path, tolerance_ms, messages)
    out = pd.DataFrame(
        {
            "ts_ms": df["ts_ms"].astype("int64").to_numpy(),
            "bid": df["bid"].to_numpy(),
            "bid_qty": df["bid_qty"].astype("int64").to_numpy(),
            "ask": df["ask"].to_numpy(),
            "ask_qty": df["ask_qty"].astype("int64").to_numpy(),
        }
    )
    if meta is not None:
        out.attrs["ric"] = meta.ric
    return out, messages


def write_trades(trades: pd.DataFrame, path: str | Path) -> None:
    """Write trades in the ingest CSV format (shortest round-trip float repr)."""
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    trades[TRADE_COLUMNS].to_csv(path, index=False, lineterminator="\n")


def write_quotes(quotes: pd.DataFrame, path: str | Path) -> None:
    """Write quotes in the ingest CSV format."""
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    quotes[QUOTE_COLUMNS].to_csv(path, index=False, lineterminator="\n")


# ============================================================================
# PREPROCESSING
# ============================================================================


def aggregate_same_timestamp(trades: pd.DataFrame) -> pd.DataFrame:
    """Collapse trades sharing a timestamp into one VWAP trade.

    A group is flagged as a trade-through when it holds at least two different
    consecutive prices. Single-trade groups keep their price untouched, which makes
    the operation idempotent.
    """
    if trades.empty:
        return trades.copy()

    ts = trades["ts_ms"]
    price = trades["price"]
    qty = trades["qty"]
    flags = (
        trades["trade_through"]
        if "trade_through" in trades
        else pd.Series(False, index=trades.index)
    )

    same_ts_as_prev = ts.eq(ts.shift())
    price_switch = same_ts_as_prev & price.ne(price.shift())

    grouped = trades.groupby(ts, sort=True)
    count = grouped.size()
    total_qty = qty.groupby(ts).sum()
    notional = (price * qty).groupby(ts).sum()
    first_price = price.groupby(ts).first()

    vwap = np.where(count.to_numpy() > 1, (notional / total_qty).to_numpy(), first_price)
    through = price_switch.groupby(ts).any() | flags.groupby(ts).any()

    return pd.DataFrame(
        {
            "ts_ms": count.index.to_numpy(dtype=np.int64),
            "price": vwap.astype(np.float64),
            "qty": total_qty.to_numpy(dtype=np.int64),
            "trade_through": through.to_numpy(dtype=bool),
        }
    )


def common_session(
    metas: Iterable[InstrumentMeta], trim_minutes: float = DEFAULT_TRIM_MINUTES
) -> tuple[int, int]:
    """Intersection of the trimmed sessions of several instruments."""
    windows = [m.session_window(trim_minutes) for m in metas]
    if not windows:
        raise ValueError("At least one instrument is required")
    return max(w[0] for w in windows), min(w[1] for w in windows)


def session_filter(
    events,
    meta: Optional[InstrumentMeta] = None,
    *,
    trim_minutes: float = DEFAULT_TRIM_MINUTES,
    window: Optional[tuple[float, float]] = None,
):
    """Keep events inside the closed window [open + trim, close - trim].

    Args:
        events: Frame with a ts_ms column, or a TickSeries.
        meta: Instrument metadata providing the session bounds.
        trim_minutes: Minutes trimmed at both ends of the session.
        window: Explicit (start_ms, end_ms), e.g. from common_session; overrides meta.

    Returns:
        Filtered events of the same type. An empty result is legal.
    """
    if window is None:
        if meta is None:
            raise ValueError("session_filter needs meta or an explicit window")
        window = meta.session_window(trim_minutes)
    start, end = window

    if isinstance(events, TickSeries):
        out = events.between(start, end)
        n_in, n_out = len(events), len(out)
    else:
        mask = (events["ts_ms"] >= start) & (events["ts_ms"] <= end)
        out = events.loc[mask].reset_index(drop=True)
        n_in, n_out = len(events), len(out)
    if n_out == 0 and n_in > 0:
        logger.info("session_filter removed all %d events (window %s-%s)", n_in, start, end)
    return out


def build_midquote_series(
    quotes: pd.DataFrame, trades: pd.DataFrame
) -> tuple[pd.DataFrame, list[dict[str, Any]]]:
    """Attach to every trade the last quote strictly before its timestamp.

    Returns:
        Tuple of (trade frame extended with bid, ask, mid, spread; messages). Trades
        with no earlier quote are dropped and reported.
    """
    messages: list[dict[str, Any]] = []
    q_ts = quotes["ts_ms"].to_numpy()
    t_ts = trades["ts_ms"].to_numpy()
    idx = np.searchsorted(q_ts, t_ts, side="left") - 1
    has_quote = idx >= 0

    if not has_quote.all():
        n_missing = int(np.count_nonzero(~has_quote))
        messages.append(
            make_message(
                "warning",
                "TRADE_WITHOUT_QUOTE",
                f"{n_missing} trade(s) before the first quote excluded",
                {"n_trades": n_missing},
            )
        )
        logger.info("%d trades precede the first quote and were excluded", n_missing)

    out = trades.loc[has_quote].reset_index(drop=True).copy()
    idx = idx[has_quote]
    bid = quotes["bid"].to_numpy()[idx]
    ask = quotes["ask"].to_numpy()[idx]
    out["bid"] = bid
    out["ask"] = ask
    out["mid"] = (bid + ask) / 2
    out["spread"] = ask - bid
    return out, messages


@njit(cache=True)
def _coarse_epoch_mask(mid, step):
    n = mid.shape[0]
    mask = np.zeros(n, dtype=np.bool_)
    if n == 0:
        return mask
    mask[0] = True
    last = mid[0]
    for k in range(1, n):
        if abs(mid[k] - last) / step >= 1.0 - 1e-9:
            mask[k] = True
            last = mid[k]
    return mask


def to_tick_time(
    midquotes,
    theta_ticks: float = 0.0,
    tick_size: Optional[float] = None,
) -> TickSeries:
    """Sample a midquote stream in tick time.

    Standard tick time (theta_ticks == 0) keeps the first observation and every
    observation whose midquote differs from the previous one. Coarse tick time keeps
    an observation once the midquote has moved by at least theta_ticks * tick_size
    from the last kept epoch.

    Args:
        midquotes: Frame with ts_ms and mid (optionally bid/ask), or a TickSeries.
        theta_ticks: Threshold in ticks; 0 for standard tick time, otherwise >= 0.5.
        tick_size: Tick size, required for coarse tick time.

    Returns:
        TickSeries; empty when the midquote never moves, so a constant stream has no
        epochs at all.
    """
    if isinstance(midquotes, TickSeries):
        ts, mid, bid, ask = midquotes.ts, midquotes.mid, midquotes.bid, midquotes.ask
    else:
        ts = midquotes["ts_ms"].to_numpy(dtype=np.float64)
        mid = midquotes["mid"].to_numpy(dtype=np.float64)
        bid = midquotes["bid"].to_numpy(dtype=np.float64) if "bid" in midquotes else None
        ask = midquotes["ask"].to_numpy(dtype=np.float64) if "ask" in midquotes else None

    if theta_ticks < 0:
        raise ValueError(f"theta_ticks must be >= 0, got {theta_ticks}")

    if mid.size == 0:
        return TickSeries.empty()

    if theta_ticks == 0:
        mask = np.empty(mid.size, dtype=bool)
        mask[0] = True
        mask[1:] = mid[1:] != mid[:-1]
    else:
        if tick_size is None or tick_size <= 0:
            raise ValueError("Coarse tick time needs a positive tick_size")
        mask = _coarse_epoch_mask(mid, float(theta_ticks) * float(tick_size))

    if np.count_nonzero(mask) < 2:
        return TickSeries.empty()

    return TickSeries(
        ts[mask],
        mid[mask],
        None if bid is None else bid[mask],
        None if ask is None else ask[mask],
    )


# ============================================================================
# DATASET LAYOUT
# ============================================================================


def load_instrument_meta(data_dir: str | Path, ric: str) -> InstrumentMeta:
    """Read and validate <data_dir>/<ric>/meta.json.

    Raises:
        TickDataError: Missing or invalid metadata.
    """
    path = Path(data_dir) / ric / "meta.json"
    try:
        return InstrumentMeta.from_dict(load_json(path))
    except FileNotFoundError:
        raise TickDataError(f"Missing instrument metadata: {path}")
    except ContractValidationError as e:
        raise TickDataError(f"Invalid instrument metadata: {path}", details=str(e))
    except ValueError as e:
        raise TickDataError(f"Invalid instrument metadata: {path}", details=str(e))


def list_days(data_dir: str | Path, ric: str) -> list[str]:
    """Sorted day labels that have a trades file."""
    folder = Path(data_dir) / ric
    if not folder.is_dir():
        raise TickDataError(f"No data directory for {ric}: {folder}")
    return sorted(p.name[: -len(".trades.csv")] for p in folder.glob("*.trades.csv"))


def prepare_day(
    trades: pd.DataFrame,
    quotes: Optional[pd.DataFrame],
    meta: InstrumentMeta,
    *,
    window: Optional[tuple[float, float]] = None,
    trim_minutes: float = DEFAULT_TRIM_MINUTES,
    theta_ticks: float = 0.0,
) -> DayData:
    """Aggregate, session-filter and sample one day of raw events."""
    messages: list[dict[str, Any]] = []
    trades = aggregate_same_timestamp(trades)
    trades = session_filter(trades, meta, trim_minutes=trim_minutes, window=window)

    if quotes is None:
        messages.append(
            make_message("warning", "NO_QUOTES", f"{meta.ric}: no quotes, midquotes unavailable")
        )
        return DayData(trades=trades, quotes=None, series=TickSeries.empty(), messages=messages)

    # quotes before the window still set the prevailing state at its start
    start, end = window if window is not None else meta.session_window(trim_minutes)
    quotes = quotes.loc[quotes["ts_ms"] <= end].reset_index(drop=True)

    with_mid, mid_messages = build_midquote_series(quotes, trades)
    messages.extend(mid_messages)
    series = to_tick_time(with_mid, theta_ticks, meta.tick_size)
    return DayData(trades=with_mid, quotes=quotes, series=series, messages=messages)


def load_day(
    data_dir: str | Path,
    meta: InstrumentMeta,
    day: str,
    *,
    window: Optional[tuple[float, float]] = None,
    trim_minutes: float = DEFAULT_TRIM_MINUTES,
    tolerance_ms: float = 0,
    theta_ticks: float = 0.0,
) -> DayData:
    """Parse and preprocess one day of one instrument."""
    folder = Path(data_dir) / meta.ric
    trades, messages = parse_trades(folder / f"{day}.trades.csv", meta, tolerance_ms=tolerance_ms)
    quotes_path = folder / f"{day}.quotes.csv"
    quotes = None
    if quotes_path.exists():
        quotes, quote_messages = parse_quotes(quotes_path, meta, tolerance_ms=tolerance_ms)
        messages.extend(quote_messages)

    data = prepare_day(
        trades, quotes, meta, window=window, trim_minutes=trim_minutes, theta_ticks=theta_ticks
    )
    data.messages[:0] = messages
    return data


def load_instrument(
    data_dir: str | Path,
    ric: str,
    *,
    window: Optional[tuple[float, float]] = None,
    trim_minutes: float = DEFAULT_TRIM_MINUTES,
    tolerance_ms: float = 0,
    theta_ticks: float = 0.0,
    days: Optional[Iterable[str]] = None,
) -> InstrumentData:
    """Load every (or the selected) day of an instrument from the dataset layout."""
    meta = load_instrument_meta(data_dir, ric)
    selected = list(days) if days is not None else list_days(data_dir, ric)
    folder = Path(data_dir) / ric
    sources = [folder / "meta.json"]
    for day in selected:
        sources.append(folder / f"{day}.trades.csv")
        if (folder / f"{day}.quotes.csv").exists():
            sources.append(folder / f"{day}.quotes.csv")
    loaded = {
        day: load_day(
            data_dir,
            meta,
            day,
            window=window,
            trim_minutes=trim_minutes,
            tolerance_ms=tolerance_ms,
            theta_ticks=theta_ticks,
        )
        for day in selected
    }
    logger.info("Loaded %d day(s) for %s", len(loaded), ric)
    return InstrumentData(meta=meta, days=loaded, sources=sources)


def load_pair(
    data_dir: str | Path,
    leader: str,
    lagger: str,
    *,
    trim_minutes: float = DEFAULT_TRIM_MINUTES,
    tolerance_ms: float = 0,
    theta_ticks: float = 0.0,
) -> tuple[InstrumentData, InstrumentData]:
    """Load two instruments on their common days and simultaneous trading hours."""
    meta_x = load_instrument_meta(data_dir, leader)
    meta_y = load_instrument_meta(data_dir, lagger)
    window = common_session([meta_x, meta_y], trim_minutes)
    days = sorted(set(list_days(data_dir, leader)) & set(list_days(data_dir, lagger)))
    if not days:
        raise TickDataError(f"No common days for {leader} and {lagger}")
    x = load_instrument(
        data_dir, leader, window=window, tolerance_ms=tolerance_ms, theta_ticks=theta_ticks,
        days=days,
    )
    y = load_instrument(
        data_dir, lagger, window=window, tolerance_ms=tolerance_ms, theta_ticks=theta_ticks,
        days=days,
    )
    return x, y


def write_tick_series(series: TickSeries, path: str | Path) -> None:
    """Write a tick series as ts_ms,mid[,bid,ask]."""
    data = {"ts_ms": series.ts.astype(np.int64), "mid": series.mid}
    if series.has_quotes:
        data["bid"] = series.bid
        data["ask"] = series.ask
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(data).to_csv(path, index=False, lineterminator="\n")


def read_tick_series(path: str | Path) -> TickSeries:
    """Read a tick series written by write_tick_series."""
    try:
        df = pd.read_csv(path, float_precision="round_trip")
    except FileNotFoundError:
        raise TickDataError(f"File not found: {path}")
    missing = [c for c in TICK_SERIES_COLUMNS if c not in df.columns]
    if missing:
        raise TickDataError(f"Tick series file {path} lacks columns {missing}")
    return TickSeries(
        df["ts_ms"].to_numpy(dtype=np.float64),
        df["mid"].to_numpy(dtype=np.float64),
        df["bid"].to_numpy() if "bid" in df else None,
        df["ask"].to_numpy() if "ask" in df else None,
    )


def days_of(data) -> Mapping[str, TickSeries]:
    """Normalize a single TickSeries or a day mapping into a day mapping."""
    if isinstance(data, TickSeries):
        return {"day": data}
    if isinstance(data, InstrumentData):
        return data.series_by_day()
    return data

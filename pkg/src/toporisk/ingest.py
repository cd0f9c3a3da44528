"""Price ingestion, log-returns and Z-score normalization."""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    ColumnNotFound,
    EmptyInput,
    IngestError,
    MalformedRow,
    NonMonotonicTimestamps,
    NonPositivePrice,
    TooShort,
    WrongKind,
    ZeroVariance,
)


class SeriesKind(enum.Enum):
    PRICE = "Price"
    LOG_RETURN = "LogReturn"
    NORMALIZED = "Normalized"


def _frozen(a, dtype):
    arr = np.array(a, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TimeSeries:
    values: np.ndarray
    kind: SeriesKind = SeriesKind.PRICE
    timestamps: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        values = _frozen(self.values, np.float64)
        if values.ndim != 1:
            raise ValueError("values must be one-dimensional")
        object.__setattr__(self, "values", values)
        if self.timestamps is not None:
            ts = _frozen(self.timestamps, np.int64)
            if ts.shape != values.shape:
                raise ValueError("timestamps and values differ in length")
            bad = np.flatnonzero(np.diff(ts) <= 0)
            if bad.size:
                raise NonMonotonicTimestamps(int(bad[0]) + 2)
            object.__setattr__(self, "timestamps", ts)
        if self.kind is SeriesKind.PRICE:
            if len(values) < 2:
                raise TooShort(2, len(values))
            bad = np.flatnonzero(~(values > 0))
            if bad.size:
                raise NonPositivePrice(int(bad[0]) + 1)

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        if not isinstance(other, TimeSeries):
            return NotImplemented
        if self.kind is not other.kind or not np.array_equal(self.values, other.values):
            return False
        if self.timestamps is None or other.timestamps is None:
            return self.timestamps is None and other.timestamps is None
        return np.array_equal(self.timestamps, other.timestamps)


@dataclass(frozen=True)
class CsvConfig:
    price_col: str = "price"
    time_col: Optional[str] = None


def parse_price_csv(raw: bytes, config: CsvConfig = CsvConfig()) -> TimeSeries:
    """Parse a comma-separated price file with a header row.

    Row indices in errors count data rows from 1 (the header is not counted).
    """
    try:
        text = raw.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise IngestError(f"input is not valid UTF-8: {exc}") from None
    reader = csv.reader(io.StringIO(text, newline=""))
    header = next(reader, None)
    if header is None or not any(h.strip() for h in header):
        raise EmptyInput()
    header = [h.strip() for h in header]
    if config.price_col not in header:
        raise ColumnNotFound(config.price_col, header)
    p_idx = header.index(config.price_col)
    t_idx = None
    if config.time_col is not None:
        if config.time_col not in header:
            raise ColumnNotFound(config.time_col, header)
        t_idx = header.index(config.time_col)

    prices, stamps = [], []
    row_no = 0
    for row in reader:
        if not row or all(not c.strip() for c in row):
            continue
        row_no += 1
        if len(row) != len(header):
            raise MalformedRow(row_no, f"expected {len(header)} fields, got {len(row)}")
        try:
            price = float(row[p_idx])
        except ValueError:
            raise MalformedRow(row_no, f"unparseable price {row[p_idx]!r}") from None
        if not math.isfinite(price):
            raise MalformedRow(row_no, f"non-finite price {row[p_idx]!r}")
        if price <= 0:
            raise NonPositivePrice(row_no)
        if t_idx is not None:
            try:
                stamp = int(row[t_idx])
            except ValueError:
                raise MalformedRow(row_no, f"unparseable timestamp {row[t_idx]!r}") from None
            if stamps and stamp <= stamps[-1]:
                raise NonMonotonicTimestamps(row_no)
            stamps.append(stamp)
        prices.append(price)

    if not prices:
        raise EmptyInput()
    return TimeSeries(prices, SeriesKind.PRICE, stamps if t_idx is not None else None)


def log_returns(prices: TimeSeries) -> TimeSeries:
    if prices.kind is not SeriesKind.PRICE:
        raise WrongKind(SeriesKind.PRICE.value, prices.kind.value)
    if len(prices) < 2:
        raise TooShort(2, len(prices))
    p = prices.values
    r = np.log(p[1:] / p[:-1])
    ts = None if prices.timestamps is None else prices.timestamps[1:]
    return TimeSeries(r, SeriesKind.LOG_RETURN, ts)


def zscore_normalize(series: TimeSeries) -> TimeSeries:
    """Center and scale by the population standard deviation.

    A second centering/scaling pass on the already O(1) values removes the
    rounding residue of the first, so the output moments hold to ~1e-15.
    Already-normalized input is accepted and comes back unchanged up to
    rounding.
    """
    if series.kind is SeriesKind.PRICE:
        raise WrongKind(SeriesKind.LOG_RETURN.value, series.kind.value)
    if len(series) < 2:
        raise TooShort(2, len(series))
    x = series.values
    y = x - x.mean()
    sd = y.std()
    if not sd > 0:
        raise ZeroVariance()
    y = y / sd
    y = (y - y.mean()) / y.std()
    return TimeSeries(y, SeriesKind.NORMALIZED, series.timestamps)

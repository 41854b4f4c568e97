"""Loading, validation, caching, and alignment of monthly price series.

Input CSVs are UTF-8 with a header row; the date column accepts the layouts
``YYYY-MM`` and ``YYYY-MM-DD``. Month stamps are ``(year, month)`` integer
pairs throughout the library; any day-of-month in the source is only used to
pick the last observation within a month.
"""

from __future__ import annotations

import csv
import hashlib
import io
import os
import re
import threading
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import requests

from switchvar.errors import (
    AlignmentError,
    FetchError,
    RowParseError,
    SchemaError,
    SeriesValidationError,
)

Month = tuple[int, int]

_DATE_RE = re.compile(r"^(\d{4})-(\d{2})(?:-(\d{2}))?$")


def parse_date_stamp(text: str) -> tuple[Month, int | None]:
    """Parse ``YYYY-MM`` or ``YYYY-MM-DD`` into ((year, month), day-or-None)."""
    m = _DATE_RE.match(text.strip())
    if m is None:
        raise ValueError(f"unsupported date layout: {text!r}")
    year, month = int(m.group(1)), int(m.group(2))
    day = int(m.group(3)) if m.group(3) is not None else None
    if not 1 <= month <= 12:
        raise ValueError(f"month out of range: {text!r}")
    if day is not None and not 1 <= day <= 31:
        raise ValueError(f"day out of range: {text!r}")
    return (year, month), day


def month_str(month: Month) -> str:
    return f"{month[0]:04d}-{month[1]:02d}"


def month_range(start: Month, count: int) -> list[Month]:
    """``count`` consecutive months starting at ``start``."""
    year, month = start
    out = []
    for _ in range(count):
        out.append((year, month))
        month += 1
        if month == 13:
            year, month = year + 1, 1
    return out


@dataclass(frozen=True)
class SeriesSpec:
    """Where and how to read one series."""

    name: str
    source: str  # local path or http(s) URL
    date_column: str = "date"
    value_column: str = "value"

    def is_remote(self) -> bool:
        return self.source.startswith(("http://", "https://"))


@dataclass(frozen=True)
class DatasetConfig:
    """Input configuration for the bivariate pipeline.

    ``start``/``end`` bound the sample window (inclusive); ``None`` leaves
    that side open. At least two series must be configured.
    """

    series: tuple[SeriesSpec, ...]
    cache_dir: Path | None = None
    start: Month | None = None
    end: Month | None = None

    def __post_init__(self):
        if len(self.series) < 2:
            raise SeriesValidationError("at least two series must be configured")
        if self.start is not None and self.end is not None and self.start > self.end:
            raise SeriesValidationError(
                f"sample window start {month_str(self.start)} is after end {month_str(self.end)}"
            )


@dataclass(frozen=True)
class PriceSeries:
    """Monthly level observations for one instrument.

    Invariants: periods strictly increasing with no duplicate months, values
    strictly positive and finite, equal lengths of at least 2.
    """

    name: str
    periods: tuple[Month, ...]
    values: np.ndarray = field(compare=False)

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if len(self.periods) != len(self.values):
            raise SeriesValidationError(
                f"{self.name}: {len(self.periods)} periods vs {len(self.values)} values"
            )
        if len(self.periods) < 2:
            raise SeriesValidationError(f"{self.name}: need at least 2 observations")
        for prev, cur in zip(self.periods, self.periods[1:]):
            if cur <= prev:
                raise SeriesValidationError(
                    f"{self.name}: periods not strictly increasing at {month_str(cur)}"
                )
        if not np.all(np.isfinite(self.values)) or np.any(self.values <= 0):
            raise SeriesValidationError(f"{self.name}: values must be positive and finite")

    def __len__(self) -> int:
        return len(self.values)


def parse_csv(
    raw_text: str,
    series: SeriesSpec,
    start: Month | None = None,
    end: Month | None = None,
) -> PriceSeries:
    """Parse one CSV into a validated monthly :class:`PriceSeries`.

    Rows outside the ``[start, end]`` window are dropped, as are rows whose
    value cell is empty (treated as missing). A non-empty but non-numeric
    value, or an unparsable date, raises :class:`RowParseError` with the
    line number. When the source carries several dated observations within
    one month, the last one (largest day) is kept as the closing value; an
    exactly repeated date stamp is a validation error.
    """
    reader = csv.reader(io.StringIO(raw_text))
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError(f"{series.name}: empty input") from None
    header = [h.strip() for h in header]
    for col in (series.date_column, series.value_column):
        if col not in header:
            raise SchemaError(
                f"{series.name}: column {col!r} not found in header {header}"
            )
    date_idx = header.index(series.date_column)
    value_idx = header.index(series.value_column)

    # month -> (day-or-None, value); later days within a month win
    by_month: dict[Month, tuple[int | None, float]] = {}
    for line_no, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) <= max(date_idx, value_idx):
            raise RowParseError(f"{series.name}: too few columns", line_no)
        raw_value = row[value_idx].strip()
        if raw_value == "":
            continue  # missing value: reject the row silently
        try:
            month, day = parse_date_stamp(row[date_idx])
        except ValueError as exc:
            raise RowParseError(f"{series.name}: {exc}", line_no) from None
        try:
            value = float(raw_value)
        except ValueError:
            raise RowParseError(
                f"{series.name}: non-numeric value {raw_value!r}", line_no
            ) from None
        if start is not None and month < start:
            continue
        if end is not None and month > end:
            continue
        if month in by_month:
            prev_day, _ = by_month[month]
            if prev_day is None or day is None or prev_day == day:
                raise SeriesValidationError(
                    f"{series.name}: duplicate observation for {month_str(month)}"
                )
            if day < prev_day:
                continue
        by_month[month] = (day, value)

    months = sorted(by_month)
    values = np.array([by_month[m][1] for m in months], dtype=float)
    return PriceSeries(name=series.name, periods=tuple(months), values=values)


# One lock per cache file so concurrent fetches of the same URL serialize.
_cache_locks: dict[str, threading.Lock] = {}
_cache_locks_guard = threading.Lock()


def _cache_path(url: str, cache_dir: Path) -> Path:
    return Path(cache_dir) / hashlib.sha256(url.encode("utf-8")).hexdigest()


def _download(url: str, timeout: float) -> bytes:
    resp = requests.get(url, timeout=timeout)
    if resp.status_code != 200:
        raise FetchError(
            f"GET {url} returned status {resp.status_code}", status=resp.status_code
        )
    return resp.content


def fetch_remote(
    url: str, cache_dir: Path | str, *, refetch: bool = False, timeout: float = 30.0
) -> bytes:
    """Return the bytes behind ``url``, caching them under ``cache_dir``.

    A cache hit never touches the network and re-reads are bit-identical.
    Cached files never expire; pass ``refetch=True`` to force a download.
    """
    cache_dir = Path(cache_dir)
    path = _cache_path(url, cache_dir)
    with _cache_locks_guard:
        lock = _cache_locks.setdefault(str(path), threading.Lock())
    with lock:
        if path.exists() and not refetch:
            return path.read_bytes()
        try:
            content = _download(url, timeout)
        except FetchError:
            raise
        except Exception as exc:
            raise FetchError(f"GET {url} failed: {exc}") from exc
        cache_dir.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_bytes(content)
        os.replace(tmp, path)
        return content


def align_series(a: PriceSeries, b: PriceSeries) -> tuple[PriceSeries, PriceSeries]:
    """Restrict both series to their common months, preserving order."""
    common = set(a.periods) & set(b.periods)
    if not common:
        raise AlignmentError(f"{a.name} and {b.name} share no months")
    keep_a = [i for i, m in enumerate(a.periods) if m in common]
    keep_b = [i for i, m in enumerate(b.periods) if m in common]
    out_a = PriceSeries(a.name, tuple(a.periods[i] for i in keep_a), a.values[keep_a])
    out_b = PriceSeries(b.name, tuple(b.periods[i] for i in keep_b), b.values[keep_b])
    return out_a, out_b


def load_dataset(
    config: DatasetConfig, *, refetch: bool = False
) -> list[PriceSeries]:
    """Fetch/read, parse, and mutually align every configured series."""
    loaded = []
    for spec in config.series:
        if spec.is_remote():
            if config.cache_dir is None:
                raise FetchError(f"{spec.name}: remote source but no cache directory")
            raw = fetch_remote(spec.source, config.cache_dir, refetch=refetch).decode(
                "utf-8"
            )
        else:
            path = Path(spec.source)
            if not path.exists():
                raise SchemaError(f"{spec.name}: input file not found: {path}")
            raw = path.read_text(encoding="utf-8")
        loaded.append(parse_csv(raw, spec, start=config.start, end=config.end))
    aligned = loaded
    for _ in range(2):  # two passes make every pair share the full intersection
        for i in range(len(aligned) - 1):
            aligned[i], aligned[i + 1] = align_series(aligned[i], aligned[i + 1])
    return aligned


def file_sha256(path: Path | str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()

"""Data loading, validation, caching, alignment."""

import numpy as np
import pytest

from switchvar.errors import (
    AlignmentError,
    FetchError,
    RowParseError,
    SchemaError,
    SeriesValidationError,
)
from switchvar.ingest import (
    PriceSeries,
    SeriesSpec,
    _cache_path,
    align_series,
    fetch_remote,
    parse_csv,
    parse_date_stamp,
)

SPEC = SeriesSpec(name="x", source="unused.csv")


def make_series(months, values, name="s"):
    return PriceSeries(name=name, periods=tuple(months), values=np.asarray(values, float))


class TestParseDateStamp:
    def test_monthly_layout(self):
        assert parse_date_stamp("1970-01") == ((1970, 1), None)

    def test_daily_layout(self):
        assert parse_date_stamp("1970-01-15") == ((1970, 1), 15)

    @pytest.mark.parametrize("bad", ["1970/01", "01-1970", "1970-13", "1970-00-01", "nope"])
    def test_rejects_other_layouts(self, bad):
        with pytest.raises(ValueError):
            parse_date_stamp(bad)


class TestParseCsv:
    def test_two_row_parse(self):
        series = parse_csv("date,value\n1970-01,810.78\n1970-02,820.00\n", SPEC)
        assert len(series) == 2
        assert series.periods == ((1970, 1), (1970, 2))
        np.testing.assert_allclose(series.values, [810.78, 820.00])

    def test_duplicate_month_is_error(self):
        text = "date,value\n1970-01,810.78\n1970-01,820.00\n"
        with pytest.raises(SeriesValidationError, match="duplicate"):
            parse_csv(text, SPEC)

    def test_missing_column_is_schema_error(self):
        with pytest.raises(SchemaError, match="value"):
            parse_csv("date,price\n1970-01,810.78\n", SPEC)

    def test_non_numeric_value_carries_line_number(self):
        text = "date,value\n1970-01,810.78\n1970-02,oops\n"
        with pytest.raises(RowParseError, match="line 3"):
            parse_csv(text, SPEC)

    def test_unparsable_date_carries_line_number(self):
        text = "date,value\n01/1970,810.78\n"
        with pytest.raises(RowParseError, match="line 2"):
            parse_csv(text, SPEC)

    def test_missing_value_rows_are_dropped(self):
        text = "date,value\n1970-01,810.78\n1970-02,\n1970-03,830.0\n"
        series = parse_csv(text, SPEC)
        assert series.periods == ((1970, 1), (1970, 3))

    def test_window_filter(self):
        text = "date,value\n1969-12,1.0\n1970-01,2.0\n1970-02,3.0\n1970-03,4.0\n"
        series = parse_csv(text, SPEC, start=(1970, 1), end=(1970, 2))
        assert series.periods == ((1970, 1), (1970, 2))

    def test_daily_rows_keep_last_of_month(self):
        text = "date,value\n1970-01-05,1.0\n1970-01-28,2.0\n1970-02-10,3.0\n"
        series = parse_csv(text, SPEC)
        np.testing.assert_allclose(series.values, [2.0, 3.0])

    def test_repeated_exact_date_is_error(self):
        text = "date,value\n1970-01-05,1.0\n1970-01-05,2.0\n"
        with pytest.raises(SeriesValidationError, match="duplicate"):
            parse_csv(text, SPEC)

    def test_deterministic(self):
        text = "date,value\n1970-02,2.0\n1970-01,1.0\n"
        a = parse_csv(text, SPEC)
        b = parse_csv(text, SPEC)
        assert a.periods == b.periods
        np.testing.assert_array_equal(a.values, b.values)

    def test_fixture_file_has_617_observations(self, data_dir):
        series = parse_csv(
            (data_dir / "tsx.csv").read_text(encoding="utf-8"),
            SeriesSpec(name="tsx", source="tsx.csv"),
            start=(1970, 1),
            end=(2021, 5),
        )
        assert len(series) == 617


class TestPriceSeriesInvariants:
    def test_rejects_decreasing_periods(self):
        with pytest.raises(SeriesValidationError, match="increasing"):
            make_series([(1970, 2), (1970, 1)], [1.0, 2.0])

    def test_rejects_nonpositive_values(self):
        with pytest.raises(SeriesValidationError, match="positive"):
            make_series([(1970, 1), (1970, 2)], [1.0, 0.0])

    def test_rejects_single_observation(self):
        with pytest.raises(SeriesValidationError):
            make_series([(1970, 1)], [1.0])

    def test_rejects_length_mismatch(self):
        with pytest.raises(SeriesValidationError):
            make_series([(1970, 1), (1970, 2)], [1.0, 2.0, 3.0])


class TestAlignSeries:
    def test_identical_periods_unchanged(self):
        a = make_series([(1970, 1), (1970, 2)], [1.0, 2.0], "a")
        b = make_series([(1970, 1), (1970, 2)], [3.0, 4.0], "b")
        out_a, out_b = align_series(a, b)
        assert out_a.periods == a.periods
        np.testing.assert_array_equal(out_b.values, b.values)

    def test_partial_overlap_trims_to_intersection(self):
        months_a = [(1970, m) for m in range(1, 13)]
        months_b = [(1970, m) for m in range(6, 13)] + [(1971, m) for m in range(1, 7)]
        a = make_series(months_a, np.arange(1.0, 13.0), "a")
        b = make_series(months_b, np.arange(1.0, 14.0), "b")
        out_a, out_b = align_series(a, b)
        assert len(out_a) == len(out_b) == 7
        assert out_a.periods == tuple((1970, m) for m in range(6, 13))
        assert out_a.periods == out_b.periods

    def test_empty_intersection_raises(self):
        a = make_series([(1970, 1), (1970, 2)], [1.0, 2.0], "a")
        b = make_series([(1980, 1), (1980, 2)], [1.0, 2.0], "b")
        with pytest.raises(AlignmentError):
            align_series(a, b)

    def test_fixture_pair_aligns_to_617(self, dataset):
        a, b = dataset
        assert len(a) == len(b) == 617
        assert a.periods == b.periods


class TestFetchRemote:
    URL = "https://example.invalid/data.csv"

    def test_cache_hit_reads_without_network(self, tmp_path, monkeypatch):
        path = _cache_path(self.URL, tmp_path)
        path.write_bytes(b"cached-bytes")

        def boom(url, timeout):
            raise AssertionError("network touched on cache hit")

        monkeypatch.setattr("switchvar.ingest._download", boom)
        assert fetch_remote(self.URL, tmp_path) == b"cached-bytes"

    def test_cold_cache_unreachable_host_raises(self, tmp_path):
        with pytest.raises(FetchError):
            fetch_remote("https://127.0.0.1:1/never.csv", tmp_path, timeout=2)

    def test_http_error_status_is_carried(self, tmp_path, monkeypatch):
        class FakeResponse:
            status_code = 404
            content = b""

        monkeypatch.setattr(
            "switchvar.ingest.requests.get", lambda url, timeout: FakeResponse()
        )
        with pytest.raises(FetchError) as excinfo:
            fetch_remote(self.URL, tmp_path)
        assert excinfo.value.status == 404

    def test_second_read_is_byte_identical_and_offline(self, tmp_path, monkeypatch):
        calls = []

        def fake_download(url, timeout):
            calls.append(url)
            return b"payload-123"

        monkeypatch.setattr("switchvar.ingest._download", fake_download)
        first = fetch_remote(self.URL, tmp_path)
        second = fetch_remote(self.URL, tmp_path)
        assert first == second == b"payload-123"
        assert len(calls) == 1

    def test_refetch_forces_download(self, tmp_path, monkeypatch):
        monkeypatch.setattr(
            "switchvar.ingest._download", lambda url, timeout: b"fresh"
        )
        path = _cache_path(self.URL, tmp_path)
        path.write_bytes(b"stale")
        assert fetch_remote(self.URL, tmp_path, refetch=True) == b"fresh"
        assert path.read_bytes() == b"fresh"

import io

import pytest

from accrete.results import HEADER, ResultRow, ResultTable, read_results, write_results


def sample_table():
    rows = (
        ResultRow(t=1.0, r=1.5, F_rr=0.25, F_tt=2.0, F_pp=2.0,
                  sigma_rr=-0.1, sigma_tt=0.3, sigma_pp=0.3, p=0.7,
                  region="boundary", tau=0.125),
        ResultRow(t=0.5, r=1.2, F_rr=1.0, F_tt=1.0, region="initial"),
        ResultRow(t=1.0, r=1.0, F_rr=1.0, F_tt=1.0, F_pp=1.0,
                  region="boundary", tau=1.0),
    )
    return ResultTable(rows)


class TestTable:
    def test_header_spelling(self):
        assert HEADER == ("t", "r", "F_rr", "F_tt", "F_pp",
                          "sigma_rr", "sigma_tt", "sigma_pp", "p",
                          "region", "tau")

    def test_rows_sorted_by_time_then_radius(self):
        table = sample_table()
        keys = [(row.t, row.r) for row in table.rows]
        assert keys == sorted(keys)
        assert keys[0] == (0.5, 1.2)

    def test_times_and_slicing(self):
        table = sample_table()
        assert table.times() == [0.5, 1.0]
        assert len(table.at_time(1.0)) == 2
        assert len(table) == 3

    def test_row_casts_to_float(self):
        row = ResultRow(t=1, r=2)
        assert isinstance(row.t, float) and isinstance(row.r, float)


class TestSerialization:
    def test_header_line(self):
        data = io.BytesIO()
        write_results(ResultTable(()), data)
        assert data.getvalue() == b"t,r,F_rr,F_tt,F_pp,sigma_rr,sigma_tt,sigma_pp,p,region,tau\n"

    def test_byte_count(self):
        data = io.BytesIO()
        n = write_results(sample_table(), data)
        assert n == len(data.getvalue())

    def test_absent_columns_are_empty_fields(self):
        data = io.BytesIO()
        write_results(ResultTable((ResultRow(t=0.5, r=1.2, F_rr=1.0, F_tt=1.0,
                                             region="initial"),)), data)
        line = data.getvalue().decode().splitlines()[1]
        assert line == "0.5,1.2,1.0,1.0,,,,,,initial,"

    def test_round_trip_is_bit_exact(self):
        table = ResultTable((
            ResultRow(t=0.1, r=1.0 / 3.0, F_rr=0.6944444444444445,
                      F_tt=1.2, F_pp=1.2, sigma_rr=-0.4893770092658085,
                      region="boundary", tau=2.0 ** -30),
        ))
        data = io.BytesIO()
        write_results(table, data)
        back = read_results(data.getvalue())
        row = back.rows[0]
        assert row.r == 1.0 / 3.0
        assert row.sigma_rr == -0.4893770092658085
        assert row.tau == 2.0 ** -30
        assert back == table

    def test_path_round_trip(self, tmp_path):
        path = tmp_path / "results.csv"
        table = sample_table()
        write_results(table, path)
        assert read_results(path) == table

    def test_reads_string_payload(self):
        data = io.BytesIO()
        write_results(sample_table(), data)
        text = data.getvalue().decode("utf-8")
        assert read_results(text) == sample_table()

    def test_write_twice_identical(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_results(sample_table(), a)
        write_results(sample_table(), b)
        assert a.read_bytes() == b.read_bytes()

    def test_rejects_foreign_header(self):
        with pytest.raises(ValueError):
            read_results("time,radius\n0,1\n")

    def test_rejects_short_rows(self):
        data = io.BytesIO()
        write_results(sample_table(), data)
        text = data.getvalue().decode() + "1.0,2.0\n"
        with pytest.raises(ValueError):
            read_results(text)

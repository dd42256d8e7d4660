"""Result tables and their CSV form.

One fixed schema serves both problems:

    t,r,F_rr,F_tt,F_pp,sigma_rr,sigma_tt,sigma_pp,p,region,tau

Columns that do not apply to a row (the out-of-plane components in plane
strain, the attachment time of initial material, stresses that were not
requested) are written as empty fields.  Floats are serialized with
repr, the shortest decimal form that round-trips to the same double, so
parse(write(table)) reproduces every float bit-exactly and repeated runs
of the same scenario produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass

__all__ = ["HEADER", "ResultRow", "ResultTable", "write_results", "read_results"]

HEADER = ("t", "r", "F_rr", "F_tt", "F_pp",
          "sigma_rr", "sigma_tt", "sigma_pp", "p", "region", "tau")

_FLOAT_FIELDS = tuple(name for name in HEADER if name != "region")


@dataclass(frozen=True)
class ResultRow:
    """One sampled point; None marks a column that does not apply."""

    t: float
    r: float
    F_rr: float | None = None
    F_tt: float | None = None
    F_pp: float | None = None
    sigma_rr: float | None = None
    sigma_tt: float | None = None
    sigma_pp: float | None = None
    p: float | None = None
    region: str = ""
    tau: float | None = None

    def __post_init__(self):
        for name in _FLOAT_FIELDS:
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, float(value))


@dataclass(frozen=True)
class ResultTable:
    """Rows sorted by (t, r); construction normalizes the order."""

    rows: tuple

    def __post_init__(self):
        ordered = tuple(sorted(self.rows, key=lambda row: (row.t, row.r)))
        object.__setattr__(self, "rows", ordered)

    def __len__(self) -> int:
        return len(self.rows)

    def times(self) -> list[float]:
        seen: list[float] = []
        for row in self.rows:
            if not seen or row.t != seen[-1]:
                seen.append(row.t)
        return seen

    def at_time(self, t: float) -> list[ResultRow]:
        return [row for row in self.rows if row.t == t]


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return repr(value)


def write_results(table: ResultTable, sink) -> int:
    """Write the table as CSV to a path or file object; returns bytes written."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADER)
    for row in table.rows:
        writer.writerow([_cell(getattr(row, name)) for name in HEADER])
    data = buf.getvalue().encode("utf-8")
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "wb") as fh:
            fh.write(data)
    elif hasattr(sink, "buffer"):
        sink.write(data.decode("utf-8"))
    else:
        try:
            sink.write(data)
        except TypeError:
            sink.write(data.decode("utf-8"))
    return len(data)


def read_results(source) -> ResultTable:
    """Parse CSV written by write_results (path, file object, str or bytes)."""
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, (str, os.PathLike)) and not (
            isinstance(source, str) and "\n" in source):
        with open(source, "rb") as fh:
            text = fh.read().decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(header) != HEADER:
        raise ValueError(f"unexpected results header: {header}")
    rows = []
    for record in reader:
        if len(record) != len(HEADER):
            raise ValueError(f"malformed results row: {record}")
        kwargs = {}
        for name, cell in zip(HEADER, record):
            if name == "region":
                kwargs[name] = cell
            else:
                kwargs[name] = float(cell) if cell != "" else None
        rows.append(ResultRow(**kwargs))
    return ResultTable(tuple(rows))

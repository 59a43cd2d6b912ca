"""Strict reader for the semicolon-separated study table.

Format: UTF-8, ``;`` between fields, ``.`` as decimal separator, no quoting.
The header must read exactly::

    study;variable;n_1;n_2;mean_1;std_1;mean_2;std_2;condition_1[;condition_2...]

LF and CRLF line endings are both accepted. Blank lines are ignored.
"""

from __future__ import annotations

import io
from collections import OrderedDict
from dataclasses import dataclass
from typing import BinaryIO

from .domain import MANDATORY_COLUMNS, StudyRecord, validate_record
from .errors import (
    BadHeader,
    BadSeparator,
    DuplicateKey,
    EmptyConditionValue,
    EncodingError,
    RaggedRow,
    TrailingSeparator,
)

SEPARATOR = ";"


@dataclass(frozen=True)
class InputTable:
    records: tuple[StudyRecord, ...]
    condition_column_names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        object.__setattr__(
            self, "condition_column_names", tuple(self.condition_column_names)
        )
        m = len(self.condition_column_names)
        if m < 1:
            raise ValueError("at least one condition column is required")
        for r in self.records:
            if len(r.conditions) != m:
                raise ValueError(f"record {r.key} has {len(r.conditions)} conditions, expected {m}")

    @property
    def condition_column_count(self) -> int:
        return len(self.condition_column_names)

    @property
    def header(self) -> tuple[str, ...]:
        return MANDATORY_COLUMNS + self.condition_column_names


def _decode(data: bytes) -> str:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data[: exc.start].count(b"\n") + 1
        raise EncodingError("input is not valid UTF-8", line) from None
    if text.startswith("\ufeff"):
        text = text[1:]
    return text


def _split(line: str, lineno: int, expected: int | None) -> list[str]:
    if SEPARATOR not in line and "," in line:
        raise BadSeparator("fields are separated by ',' instead of ';'", lineno)
    if line.rstrip().endswith(SEPARATOR):
        raise TrailingSeparator("line ends with ';'", lineno)
    fields = [f.strip() for f in line.split(SEPARATOR)]
    if expected is not None and len(fields) != expected:
        if len(line.split(",")) == expected:
            raise BadSeparator("fields are separated by ',' instead of ';'", lineno)
        raise RaggedRow(f"expected {expected} fields, found {len(fields)}", lineno)
    return fields


def _check_header(fields: list[str], lineno: int) -> tuple[str, ...]:
    if len(fields) < len(MANDATORY_COLUMNS) + 1:
        raise BadHeader(
            f"expected at least {len(MANDATORY_COLUMNS) + 1} columns, found {len(fields)}",
            lineno,
        )
    for i, (got, want) in enumerate(zip(fields, MANDATORY_COLUMNS), start=1):
        if got != want:
            raise BadHeader(f"column {i} must be {want!r}, found {got!r}", lineno)
    conditions = tuple(fields[len(MANDATORY_COLUMNS):])
    for j, name in enumerate(conditions, start=1):
        if name != f"condition_{j}":
            raise BadHeader(
                f"column {len(MANDATORY_COLUMNS) + j} must be 'condition_{j}', found {name!r}",
                lineno,
            )
    return conditions


def parse_input(source: bytes | BinaryIO) -> InputTable:
    """Parse and validate a whole input file.

    Raises a subclass of :class:`~metasweep.errors.IngestError` carrying the
    1-based line number of the first problem.
    """
    data = source if isinstance(source, (bytes, bytearray)) else source.read()
    text = _decode(bytes(data))
    lines = text.replace("\r\n", "\n").split("\n")

    header = None
    conditions: tuple[str, ...] = ()
    records: list[StudyRecord] = []
    seen: dict[tuple, int] = {}
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        if "\r" in line:
            raise RaggedRow("stray carriage return", lineno)
        if header is None:
            header = _split(line, lineno, None)
            conditions = _check_header(header, lineno)
            continue
        fields = _split(line, lineno, len(header))
        raw = OrderedDict(zip(header, fields))
        for j in range(1, len(conditions) + 1):
            if not raw[f"condition_{j}"]:
                raise EmptyConditionValue(f"condition_{j} is empty", lineno)
        record = validate_record(raw, lineno)
        if record.key in seen:
            raise DuplicateKey(
                f"{record.study!r} / {record.variable!r} / {'|'.join(record.conditions)} "
                f"already defined on line {seen[record.key]}",
                lineno,
            )
        seen[record.key] = lineno
        records.append(record)

    if header is None:
        raise BadHeader("file is empty (no header line)", 1)
    return InputTable(tuple(records), conditions)


def read_input(path) -> InputTable:
    with open(path, "rb") as fh:
        return parse_input(fh)


def format_number(x: float | int) -> str:
    """Shortest text that parses back to exactly ``x`` ("13", "7.34", "-0.12")."""
    if isinstance(x, int):
        return str(x)
    text = repr(float(x))
    if text.endswith(".0"):
        text = text[:-2]
    return text


def format_table(table: InputTable) -> str:
    """Serialize a table in the input format (LF line endings)."""
    out = io.StringIO()
    out.write(SEPARATOR.join(table.header) + "\n")
    for r in table.records:
        fields = [
            r.study,
            r.variable,
            format_number(r.group1.n),
            format_number(r.group2.n),
            format_number(r.group1.mean),
            format_number(r.group1.sd),
            format_number(r.group2.mean),
            format_number(r.group2.sd),
            *r.conditions,
        ]
        out.write(SEPARATOR.join(fields) + "\n")
    return out.getvalue()


def summarize_table(table: InputTable) -> str:
    """One-line human summary of a parsed table."""
    n = len(table.records)
    if n == 0:
        return "0 rows"
    studies = {r.study for r in table.records}
    variables = {r.variable for r in table.records}
    parts = [
        f"{n} row{'s' if n != 1 else ''}",
        f"{len(studies)} stud{'ies' if len(studies) != 1 else 'y'}",
        f"{len(variables)} variable{'s' if len(variables) != 1 else ''}",
    ]
    for j, name in enumerate(table.condition_column_names):
        values = list(dict.fromkeys(r.conditions[j] for r in table.records))
        parts.append(f"{name}: {{{', '.join(values)}}}")
    return ", ".join(parts)

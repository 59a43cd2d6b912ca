import string

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metasweep.domain import GroupStats, StudyRecord
from metasweep.errors import (
    BadHeader,
    BadSeparator,
    CommaDecimal,
    DuplicateKey,
    EmptyConditionValue,
    EncodingError,
    IngestError,
    RaggedRow,
    TrailingSeparator,
)
from metasweep.ingest import InputTable, format_table, parse_input, summarize_table

from conftest import DATA

HEADER = "study;variable;n_1;n_2;mean_1;std_1;mean_2;std_2;condition_1;condition_2"

MISTAKES = [
    ("comma_separator.csv", BadSeparator, 3),
    ("comma_everywhere.csv", BadSeparator, 1),
    ("trailing_semicolon.csv", TrailingSeparator, 4),
    ("comma_decimal.csv", CommaDecimal, 5),
    ("prose_header_order.csv", BadHeader, 1),
    ("std_1_twice.csv", BadHeader, 1),
    ("empty_condition.csv", EmptyConditionValue, 7),
    ("duplicate_row.csv", DuplicateKey, 14),
    ("ragged_row.csv", RaggedRow, 9),
]


def test_sample_parses(table):
    assert len(table.records) == 12
    assert table.condition_column_count == 2
    assert table.condition_column_names == ("condition_1", "condition_2")
    assert table.records[0].study == "Howcroft, 2015"
    konig = table.records[8]
    assert konig.study == "König, 2014"
    assert konig.group2 == GroupStats(42, -0.12, 0.12)


def test_sample_round_trips_byte_exact(sample_path, table):
    text = sample_path.read_text(encoding="utf-8")
    assert format_table(table) == text
    assert parse_input(format_table(table).encode("utf-8")) == table


def test_crlf_and_lf_agree(sample_path, table):
    crlf = sample_path.read_bytes().replace(b"\n", b"\r\n")
    assert parse_input(crlf) == table


def test_utf8_bom_is_ignored(sample_path, table):
    assert parse_input(b"\xef\xbb\xbf" + sample_path.read_bytes()) == table


@pytest.mark.parametrize("name, error, line", MISTAKES)
def test_formatting_mistakes(name, error, line):
    with pytest.raises(error) as exc:
        parse_input((DATA / "mistakes" / name).read_bytes())
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_header_only_file():
    table = parse_input((HEADER + "\n").encode())
    assert table.records == ()
    assert summarize_table(table) == "0 rows"


def test_empty_file_is_bad_header():
    with pytest.raises(BadHeader):
        parse_input(b"")


def test_single_condition_column_header():
    table = parse_input(
        b"study;variable;n_1;n_2;mean_1;std_1;mean_2;std_2;condition_1\n"
        b"A;X;10;10;1;1;0;1;c\n"
    )
    assert table.records[0].conditions == ("c",)


@pytest.mark.parametrize(
    "header",
    [
        "study;variable;n_1;n_2;mean_1;std_1;mean_2;std_2",
        "study;variable;n_1;n_2;mean_1;std_1;mean_2;std_2;condition_2",
        "study;variable;n_1;n_2;mean_1;std_1;mean_2;std_2;condition_1;cond_2",
        "Study;variable;n_1;n_2;mean_1;std_1;mean_2;std_2;condition_1",
    ],
)
def test_bad_headers(header):
    with pytest.raises(BadHeader):
        parse_input((header + "\n").encode())


def test_non_utf8_rejected_with_line():
    data = (HEADER + "\n").encode() + "König, 2014;X;42;42;0.15;1.48;-0.12;0.12;EC;Retro\n".encode(
        "latin-1"
    )
    with pytest.raises(EncodingError) as exc:
        parse_input(data)
    assert exc.value.line == 2


def test_whitespace_trimmed_but_interior_kept():
    line = "  Quijoux, 2020 ; AP mean velocity ;10;10; 1.5 ;1;0;1; EO ; Retro "
    table = parse_input(f"{HEADER}\n{line}\n".encode())
    rec = table.records[0]
    assert rec.study == "Quijoux, 2020"
    assert rec.variable == "AP mean velocity"
    assert rec.conditions == ("EO", "Retro")
    assert rec.group1.mean == 1.5


def test_special_characters_accepted():
    study = "Smith_#1 {x} 50% $\\"
    line = study + ";Var;10;10;1;1;0;1;EO;Retro"
    table = parse_input(f"{HEADER}\n{line}\n".encode())
    assert table.records[0].study == study


def test_case_sensitive_values_are_distinct():
    body = "\n".join(
        [
            HEADER,
            "A;AP mean velocity;10;10;1;1;0;1;EO;Retro",
            "A;Ap mean velocity;10;10;1;1;0;1;EO;Retro",
            "A;ap mean velocity;10;10;1;1;0;1;eo;Retro",
        ]
    )
    table = parse_input(body.encode())
    assert len({r.variable for r in table.records}) == 3


def test_summary_of_sample(table):
    assert summarize_table(table) == (
        "12 rows, 7 studies, 1 variable, "
        "condition_1: {EO, EC}, condition_2: {Retro, Pro}"
    )


def test_summary_lists_every_condition_column():
    text = (
        "study;variable;n_1;n_2;mean_1;std_1;mean_2;std_2;condition_1;condition_2;condition_3\n"
        "A;X;10;10;1;1;0;1;a;b;c\n"
        "B;X;10;10;1;1;0;1;a;b;c\n"
    )
    summary = summarize_table(parse_input(text.encode()))
    assert summary == (
        "2 rows, 2 studies, 1 variable, condition_1: {a}, condition_2: {b}, condition_3: {c}"
    )


def test_every_ingest_error_has_a_line():
    for name, _, _ in MISTAKES:
        try:
            parse_input((DATA / "mistakes" / name).read_bytes())
        except IngestError as exc:
            assert isinstance(exc.line, int) and exc.line >= 1


label = st.text(
    alphabet=string.ascii_letters + string.digits + " ,.-äöü#%_$", min_size=1, max_size=12
).filter(lambda s: s.strip() == s and s)
real = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)
sd = st.floats(0, 1e6, allow_nan=False, allow_infinity=False)
record = st.builds(
    lambda s, v, n1, m1, s1, n2, m2, s2, c: StudyRecord(
        s, v, GroupStats(n1, m1, s1), GroupStats(n2, m2, s2), c
    ),
    label, label, st.integers(2, 10**6), real, sd, st.integers(2, 10**6), real, sd,
    st.tuples(label, label),
)


@settings(max_examples=200, deadline=None)
@given(st.lists(record, max_size=8, unique_by=lambda r: r.key))
def test_round_trip_property(records):
    table = InputTable(tuple(records), ("condition_1", "condition_2"))
    text = format_table(table)
    assert parse_input(text.encode("utf-8")) == table
    assert parse_input(text.replace("\n", "\r\n").encode("utf-8")) == table

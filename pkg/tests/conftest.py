import random
from pathlib import Path

import pytest

from metasweep.domain import GroupStats, StudyRecord, Subgroup, SubgroupKey
from metasweep.ingest import read_input
from metasweep.subgrouping import enumerate_subgroups

DATA = Path(__file__).parent / "data"
SAMPLE = DATA / "sample.csv"


@pytest.fixture
def sample_path():
    return SAMPLE


@pytest.fixture(scope="session")
def table():
    return read_input(SAMPLE)


@pytest.fixture(scope="session")
def subgroups(table):
    return enumerate_subgroups(table)


def make_subgroup(rows, variable="X", value="A"):
    """Subgroup from (n1, mean1, sd1, n2, mean2, sd2) tuples, studies S00, S01, ..."""
    members = [
        StudyRecord(
            f"S{i:02d}", variable, GroupStats(n1, m1, s1), GroupStats(n2, m2, s2), (value,)
        )
        for i, (n1, m1, s1, n2, m2, s2) in enumerate(rows)
    ]
    return Subgroup(SubgroupKey(variable, ((1, value),)), tuple(members))


def random_rows(rng: random.Random, k=None):
    k = k if k is not None else rng.randint(2, 10)
    rows = []
    for _ in range(k):
        rows.append(
            (
                rng.randint(2, 500),
                rng.uniform(-50, 50),
                rng.uniform(0.05, 30),
                rng.randint(2, 500),
                rng.uniform(-50, 50),
                rng.uniform(0.05, 30),
            )
        )
    return rows


# --- acceptance reporting ------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

"""Enumeration of every (variable, condition combination) subgroup."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .domain import StudyRecord, Subgroup, SubgroupKey
from .ingest import InputTable

TOO_FEW_STUDIES = "too few studies"
AMBIGUOUS_MEMBERSHIP = "ambiguous membership"


@dataclass(frozen=True)
class Skipped:
    key: SubgroupKey
    reason: str
    detail: str = ""


@dataclass(frozen=True)
class SubgroupSet:
    subgroups: tuple[Subgroup, ...]
    skipped: tuple[Skipped, ...]

    def __len__(self) -> int:
        return len(self.subgroups)

    def __iter__(self):
        return iter(self.subgroups)

    def get(self, variable: str, *values: str, columns: tuple[int, ...] | None = None):
        """Look a subgroup up by variable and condition values (test helper)."""
        for sub in self.subgroups:
            if sub.key.variable != variable or sub.key.values != values:
                continue
            if columns is None or sub.key.columns == columns:
                return sub
        raise KeyError((variable, values))


def column_subsets(m: int):
    """Non-empty subsets of the 1-based columns ``1..m`` in lexicographic order."""
    subsets = [c for r in range(1, m + 1) for c in combinations(range(1, m + 1), r)]
    return sorted(subsets)


def enumerate_subgroups(table: InputTable, *, strict_membership: bool = False) -> SubgroupSet:
    """Every analyzable subgroup of ``table`` in one pass.

    For each variable and each non-empty subset of condition columns, every
    observed combination of values on that subset defines a candidate made of
    all matching records. Candidates with fewer than two records are listed in
    ``skipped``. Combinations absent from the data are not produced.

    A study may contribute several records to a candidate that leaves one of
    its condition columns unconstrained (e.g. its eyes-open and eyes-closed rows
    both fall under "Retro"). These are kept as separate entries by default;
    with ``strict_membership=True`` such candidates are skipped instead.
    """
    by_variable: dict[str, list[StudyRecord]] = {}
    for r in table.records:
        by_variable.setdefault(r.variable, []).append(r)

    subgroups: list[Subgroup] = []
    skipped: list[Skipped] = []
    subsets = column_subsets(table.condition_column_count)
    for variable in sorted(by_variable):
        records = by_variable[variable]
        for cols in subsets:
            groups: dict[tuple[str, ...], list[StudyRecord]] = {}
            for r in records:
                values = tuple(r.conditions[c - 1] for c in cols)
                groups.setdefault(values, []).append(r)
            for values in sorted(groups):
                key = SubgroupKey(variable, tuple(zip(cols, values)))
                members = sorted(groups[values], key=lambda r: (r.study, r.conditions))
                if len(members) < 2:
                    skipped.append(
                        Skipped(key, TOO_FEW_STUDIES, f"K={len(members)}, at least 2 needed")
                    )
                    continue
                counts = Counter(r.study for r in members)
                repeated = sorted(s for s, c in counts.items() if c > 1)
                if strict_membership and repeated:
                    skipped.append(
                        Skipped(
                            key,
                            AMBIGUOUS_MEMBERSHIP,
                            "studies with several rows: " + ", ".join(repeated),
                        )
                    )
                    continue
                subgroups.append(Subgroup(key, tuple(members)))
    return SubgroupSet(tuple(subgroups), tuple(skipped))


def folder_name(key: SubgroupKey) -> str:
    """``"{variable}-{v1|v2|...}"`` with values in column order."""
    return f"{key.variable}-{'|'.join(key.values)}"

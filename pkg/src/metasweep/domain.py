"""Value types shared by every stage of the pipeline.

All types are frozen dataclasses that validate themselves on construction,
so an instance that exists is an instance that satisfies its invariants.
"""

from __future__ import annotations

import enum
import math
import re
from collections import Counter
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from .errors import (
    CommaDecimal,
    EmptyConditionValue,
    EmptyLabel,
    InsufficientStudies,
    InvalidAlpha,
    InvalidNumber,
    NegativeSd,
    NonFiniteNumber,
    NonPositiveCount,
)

MANDATORY_COLUMNS = (
    "study",
    "variable",
    "n_1",
    "n_2",
    "mean_1",
    "std_1",
    "mean_2",
    "std_2",
)

_DECIMAL = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_COMMA_DECIMAL = re.compile(r"[+-]?\d*,\d+")
_INTEGER = re.compile(r"\+?\d+")
_NONFINITE = re.compile(r"[+-]?(?:nan|inf|infinity)", re.IGNORECASE)


class EffectSizeKind(enum.Enum):
    COHEN = "Cohen"
    HEDGES = "Hedges"

    def __str__(self) -> str:
        return self.value


class Model(enum.Enum):
    FIXED = "FixedEffects"
    RANDOM = "RandomEffects"

    def __str__(self) -> str:
        return self.value


def parse_real(text: str, column: str, line: int | None = None) -> float:
    """Parse a "."-decimal real number, rejecting everything else."""
    s = text.strip()
    if _NONFINITE.fullmatch(s):
        raise NonFiniteNumber(f"{column}: non-finite number {text!r}", line)
    if _COMMA_DECIMAL.fullmatch(s):
        raise CommaDecimal(
            f"{column}: {text!r} uses ',' as decimal separator (use '.')", line
        )
    if not _DECIMAL.fullmatch(s):
        raise InvalidNumber(f"{column}: not a number: {text!r}", line)
    value = float(s)
    if not math.isfinite(value):
        raise NonFiniteNumber(f"{column}: {text!r} overflows", line)
    return value


def parse_count(text: str, column: str, line: int | None = None) -> int:
    s = text.strip()
    if not _INTEGER.fullmatch(s):
        # give the more specific diagnosis when we can
        parse_real(s, column, line)
        raise InvalidNumber(f"{column}: expected a whole number, got {text!r}", line)
    return int(s)


@dataclass(frozen=True)
class GroupStats:
    """Sample size, mean and unbiased standard deviation of one group."""

    n: int
    mean: float
    sd: float

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int):
            raise InvalidNumber(f"n must be an integer, got {self.n!r}")
        if self.n < 2:
            raise NonPositiveCount(f"group size must be at least 2, got {self.n}")
        for name in ("mean", "sd"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise NonFiniteNumber(f"{name} must be finite, got {value!r}")
        if self.sd < 0:
            raise NegativeSd(f"standard deviation must be non-negative, got {self.sd}")


@dataclass(frozen=True)
class StudyRecord:
    study: str
    variable: str
    group1: GroupStats
    group2: GroupStats
    conditions: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "conditions", tuple(self.conditions))
        if not self.study or not self.study.strip():
            raise EmptyLabel("study label is empty")
        if not self.variable or not self.variable.strip():
            raise EmptyLabel("variable label is empty")
        if not self.conditions:
            raise EmptyConditionValue("at least one condition value is required")
        for i, value in enumerate(self.conditions, start=1):
            if not value or not value.strip():
                raise EmptyConditionValue(f"condition_{i} is empty")

    @property
    def key(self) -> tuple[str, str, tuple[str, ...]]:
        return (self.study, self.variable, self.conditions)


def validate_record(raw: Mapping[str, str], line: int | None = None) -> StudyRecord:
    """Build a :class:`StudyRecord` from a mapping of column name to raw text.

    Condition columns are taken in ``condition_1, condition_2, ...`` order and
    must be contiguous. Errors carry ``line`` when given.
    """
    missing = [c for c in MANDATORY_COLUMNS if c not in raw]
    if missing:
        raise InvalidNumber(f"missing fields: {', '.join(missing)}", line)
    conditions = []
    i = 1
    while f"condition_{i}" in raw:
        conditions.append(raw[f"condition_{i}"].strip())
        i += 1
    if not conditions:
        raise EmptyConditionValue("at least one condition column is required", line)

    study = raw["study"].strip()
    variable = raw["variable"].strip()
    if not study:
        raise EmptyLabel("study label is empty", line)
    if not variable:
        raise EmptyLabel("variable label is empty", line)
    for j, value in enumerate(conditions, start=1):
        if not value:
            raise EmptyConditionValue(f"condition_{j} is empty", line)

    groups = []
    for g in ("1", "2"):
        n = parse_count(raw[f"n_{g}"], f"n_{g}", line)
        mean = parse_real(raw[f"mean_{g}"], f"mean_{g}", line)
        sd = parse_real(raw[f"std_{g}"], f"std_{g}", line)
        if n < 2:
            raise NonPositiveCount(f"n_{g} must be at least 2, got {n}", line)
        if sd < 0:
            raise NegativeSd(f"std_{g} must be non-negative, got {sd}", line)
        groups.append(GroupStats(n, mean, sd))
    return StudyRecord(study, variable, groups[0], groups[1], tuple(conditions))


@dataclass(frozen=True)
class SubgroupKey:
    """A variable plus one value for each of a subset of condition columns.

    ``selected`` holds ``(column_index, value)`` pairs with 1-based,
    strictly increasing column indices.
    """

    variable: str
    selected: tuple[tuple[int, str], ...]

    def __post_init__(self):
        selected = tuple((int(c), str(v)) for c, v in self.selected)
        object.__setattr__(self, "selected", selected)
        if not selected:
            raise ValueError("a subgroup key needs at least one condition")
        columns = [c for c, _ in selected]
        if columns[0] < 1 or any(b <= a for a, b in zip(columns, columns[1:])):
            raise ValueError(f"column indices must be >= 1 and increasing: {columns}")

    @property
    def columns(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self.selected)

    @property
    def values(self) -> tuple[str, ...]:
        return tuple(v for _, v in self.selected)

    def matches(self, record: StudyRecord) -> bool:
        return record.variable == self.variable and all(
            record.conditions[c - 1] == v for c, v in self.selected
        )

    def sort_key(self):
        return (self.variable, self.columns, self.values)


@dataclass(frozen=True)
class Subgroup:
    """The records that share a :class:`SubgroupKey`.

    When a study contributes several rows (possible when the key leaves a
    condition column unconstrained), its display label is suffixed with the
    values of the unconstrained columns so that labels stay unique.
    """

    key: SubgroupKey
    members: tuple[StudyRecord, ...]
    labels: tuple[str, ...] = field(init=False, repr=False)

    def __post_init__(self):
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        if len(members) < 2:
            raise InsufficientStudies(
                f"a subgroup needs at least 2 studies, got {len(members)}"
            )
        for r in members:
            if not self.key.matches(r):
                raise ValueError(f"record {r.key} does not match {self.key}")
        counts = Counter(r.study for r in members)
        free = [
            i for i in range(len(members[0].conditions)) if i + 1 not in self.key.columns
        ]
        labels = []
        for r in members:
            if counts[r.study] > 1:
                extra = " | ".join(r.conditions[i] for i in free)
                labels.append(f"{r.study} ({extra})")
            else:
                labels.append(r.study)
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate members in subgroup {self.key}")
        object.__setattr__(self, "labels", tuple(labels))

    @property
    def k(self) -> int:
        return len(self.members)

    @property
    def repeated_studies(self) -> tuple[str, ...]:
        counts = Counter(r.study for r in self.members)
        return tuple(sorted(s for s, c in counts.items() if c > 1))


@dataclass(frozen=True)
class AnalysisConfig:
    alpha: float = 0.05
    kind: EffectSizeKind = EffectSizeKind.HEDGES

    def __post_init__(self):
        if not isinstance(self.kind, EffectSizeKind):
            object.__setattr__(self, "kind", EffectSizeKind(self.kind))
        if not (isinstance(self.alpha, (int, float)) and 0 < self.alpha < 1):
            raise InvalidAlpha(f"alpha must lie in (0, 1), got {self.alpha!r}")


@dataclass(frozen=True)
class StudyEffect:
    study: str
    record: StudyRecord
    pooled_sd: float
    delta: float
    sigma_intra: float
    weight: float
    ci_low: float
    ci_high: float

    def __post_init__(self):
        if not self.sigma_intra > 0 or not self.weight > 0:
            raise ValueError("sigma_intra and weight must be positive")
        if not self.ci_low <= self.delta <= self.ci_high:
            raise ValueError("confidence interval does not contain delta")


@dataclass(frozen=True)
class HeterogeneityStats:
    q: float
    xi: float
    tau2_raw: float
    i2_raw: float

    @property
    def tau2(self) -> float:
        return max(self.tau2_raw, 0.0)

    @property
    def i2(self) -> float:
        return min(max(self.i2_raw, 0.0), 100.0)


@dataclass(frozen=True)
class MetaResult:
    key: SubgroupKey
    effects: tuple[StudyEffect, ...]
    heterogeneity: HeterogeneityStats
    model: Model
    mu: float
    sigma: float
    ci_low: float
    ci_high: float
    z: float
    p: float
    alpha: float
    kind: EffectSizeKind
    critical: float

    def __post_init__(self):
        object.__setattr__(self, "effects", tuple(self.effects))
        if (self.model is Model.RANDOM) != (self.i2 > 50):
            raise ValueError("model does not match I^2")
        if not self.ci_low <= self.mu <= self.ci_high:
            raise ValueError("confidence interval does not contain mu")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p-value out of range: {self.p}")

    q = property(lambda self: self.heterogeneity.q)
    xi = property(lambda self: self.heterogeneity.xi)
    tau2 = property(lambda self: self.heterogeneity.tau2)
    i2 = property(lambda self: self.heterogeneity.i2)

    @property
    def k(self) -> int:
        return len(self.effects)

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(e.weight for e in self.effects)

    def normalized_weights(self) -> tuple[float, ...]:
        total = math.fsum(self.weights)
        return tuple(w / total for w in self.weights)


def sorted_effects(effects: Sequence[StudyEffect]) -> list[StudyEffect]:
    return sorted(effects, key=lambda e: e.study)

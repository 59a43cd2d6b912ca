"""Meta-analysis of standardized mean differences over every combination of
experimental conditions."""

from .domain import (
    AnalysisConfig,
    EffectSizeKind,
    GroupStats,
    HeterogeneityStats,
    MetaResult,
    Model,
    StudyEffect,
    StudyRecord,
    Subgroup,
    SubgroupKey,
    validate_record,
)
from .engine import analyze_subgroup
from .ingest import InputTable, parse_input, read_input, summarize_table
from .subgrouping import SubgroupSet, enumerate_subgroups, folder_name

__version__ = "0.1.0"

__all__ = [
    "AnalysisConfig",
    "EffectSizeKind",
    "GroupStats",
    "HeterogeneityStats",
    "InputTable",
    "MetaResult",
    "Model",
    "StudyEffect",
    "StudyRecord",
    "Subgroup",
    "SubgroupKey",
    "SubgroupSet",
    "analyze_subgroup",
    "enumerate_subgroups",
    "folder_name",
    "parse_input",
    "read_input",
    "summarize_table",
    "validate_record",
]

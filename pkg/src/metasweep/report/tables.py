"""The per-subgroup ``data.csv`` table."""

from __future__ import annotations

import math

from ..domain import MANDATORY_COLUMNS, MetaResult, sorted_effects
from ..ingest import SEPARATOR, format_number
from ..subgrouping import folder_name
from .text import fmt

COMPUTED_COLUMNS = (
    "label",
    "pooled_sd",
    "delta",
    "sigma_intra",
    "weight",
    "weight_percent",
    "ci_low",
    "ci_high",
)


def summary_rows(result: MetaResult) -> list[tuple[str, str]]:
    het = result.heterogeneity
    return [
        ("subgroup", folder_name(result.key)),
        ("variable", result.key.variable),
        ("conditions", "|".join(result.key.values)),
        ("condition_columns", "|".join(f"condition_{c}" for c in result.key.columns)),
        ("K", str(result.k)),
        ("alpha", fmt(result.alpha)),
        ("confidence_level", fmt(1 - result.alpha)),
        ("critical_value", fmt(result.critical)),
        ("effect_size", str(result.kind)),
        ("model", str(result.model)),
        ("mu", fmt(result.mu)),
        ("sigma", fmt(result.sigma)),
        ("ci_low", fmt(result.ci_low)),
        ("ci_high", fmt(result.ci_high)),
        ("Q", fmt(het.q)),
        ("xi", fmt(het.xi)),
        ("tau2_raw", fmt(het.tau2_raw)),
        ("tau2", fmt(het.tau2)),
        ("I2_raw", fmt(het.i2_raw)),
        ("I2", fmt(het.i2)),
        ("Z", fmt(result.z)),
        ("p", fmt(result.p)),
    ]


def emit_data_csv(result: MetaResult) -> str:
    """Semicolon-separated study table followed by a summary block.

    Input columns are reproduced verbatim; computed quantities use six
    significant digits.
    """
    effects = sorted_effects(result.effects)
    m = len(effects[0].record.conditions)
    header = MANDATORY_COLUMNS + tuple(f"condition_{j}" for j in range(1, m + 1))
    lines = [SEPARATOR.join(header + COMPUTED_COLUMNS)]
    total = math.fsum(e.weight for e in effects)
    for e in effects:
        r = e.record
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
            e.study,
            fmt(e.pooled_sd),
            fmt(e.delta),
            fmt(e.sigma_intra),
            fmt(e.weight),
            fmt(100.0 * e.weight / total),
            fmt(e.ci_low),
            fmt(e.ci_high),
        ]
        lines.append(SEPARATOR.join(fields))
    lines.append("")
    lines.append(SEPARATOR.join(("statistic", "value")))
    lines.extend(SEPARATOR.join(row) for row in summary_rows(result))
    return "\n".join(lines) + "\n"

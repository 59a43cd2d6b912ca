"""Effect sizes, heterogeneity, model selection and pooling."""

from __future__ import annotations

import math
from collections.abc import Sequence

from .domain import (
    AnalysisConfig,
    EffectSizeKind,
    GroupStats,
    HeterogeneityStats,
    MetaResult,
    Model,
    StudyEffect,
    Subgroup,
)
from .errors import DegenerateXi, InsufficientStudies, ZeroPooledSd
from .normal import normal_quantile, normal_sf

# I^2 strictly above this selects the random-effects model
I2_THRESHOLD = 50.0


def pooled_sd(g1: GroupStats, g2: GroupStats) -> float:
    """Sample-size weighted standard deviation of two groups."""
    num = (g1.n - 1) * g1.sd * g1.sd + (g2.n - 1) * g2.sd * g2.sd
    return math.sqrt(num / (g1.n + g2.n - 2))


def hedges_factor(n1: int, n2: int) -> float:
    return 1.0 - 3.0 / (4 * (n1 + n2) - 9)


def effect_size(g1: GroupStats, g2: GroupStats, kind: EffectSizeKind) -> float:
    """Standardized mean difference of group 1 over group 2.

    Raises :class:`ZeroPooledSd` when both standard deviations are zero.
    """
    s = pooled_sd(g1, g2)
    if s == 0.0:
        raise ZeroPooledSd()
    d = (g1.mean - g2.mean) / s
    if kind is EffectSizeKind.HEDGES:
        d *= hedges_factor(g1.n, g2.n)
    return d


def intra_study_sigma(g1: GroupStats, g2: GroupStats, delta: float) -> float:
    n = g1.n + g2.n
    return math.sqrt(n / (g1.n * g2.n) + delta * delta / (2 * n))


def fe_weight(sigma_intra: float) -> float:
    return 1.0 / (sigma_intra * sigma_intra)


def re_weight(sigma_intra: float, tau2: float) -> float:
    return 1.0 / (sigma_intra * sigma_intra + tau2)


def pooled_mu(deltas: Sequence[float], weights: Sequence[float]) -> float:
    """Weighted mean of the effect sizes (compensated sums)."""
    if not deltas or len(deltas) != len(weights):
        raise ValueError("deltas and weights must be non-empty and of equal length")
    mu = math.fsum(w * d for w, d in zip(weights, deltas)) / math.fsum(weights)
    # a convex combination; rounding must not push it outside the data
    return min(max(mu, min(deltas)), max(deltas))


def heterogeneity(
    deltas: Sequence[float], fe_weights: Sequence[float], k: int | None = None
) -> HeterogeneityStats:
    """Cochran's Q, the DerSimonian-Laird tau^2 and I^2 from fixed-effect weights.

    Raw (unclipped) tau^2 and I^2 are kept; the clipped values are exposed as
    properties of the returned object. I^2 is 0 when Q is 0.
    """
    if k is None:
        k = len(deltas)
    if k < 2 or len(deltas) != k or len(fe_weights) != k:
        raise InsufficientStudies(f"heterogeneity needs k >= 2 matching inputs, got {k}")
    mu_fe = pooled_mu(deltas, fe_weights)
    q = math.fsum(w * (d - mu_fe) ** 2 for w, d in zip(fe_weights, deltas))
    sw = math.fsum(fe_weights)
    xi = sw - math.fsum(w * w for w in fe_weights) / sw
    if not xi > 0:
        raise DegenerateXi(f"xi must be positive, got {xi!r}")
    excess = q - (k - 1)
    tau2_raw = excess / xi
    i2_raw = 0.0 if q == 0 else excess / q * 100.0
    return HeterogeneityStats(q=q, xi=xi, tau2_raw=tau2_raw, i2_raw=i2_raw)


def select_model(i2: float) -> Model:
    return Model.RANDOM if i2 > I2_THRESHOLD else Model.FIXED


def critical_value(alpha: float) -> float:
    """Two-sided critical value, e.g. 1.959964 for alpha = 0.05."""
    return normal_quantile(1.0 - alpha / 2.0)


def pool(deltas: Sequence[float], weights: Sequence[float], crit: float):
    """Pooled effect, its standard error, interval, z-score and two-sided p."""
    mu = pooled_mu(deltas, weights)
    sigma = math.fsum(weights) ** -0.5
    z = mu / sigma
    p = min(1.0, 2.0 * normal_sf(abs(z)))
    return mu, sigma, (mu - sigma * crit, mu + sigma * crit), z, p


def analyze_subgroup(sub: Subgroup, cfg: AnalysisConfig) -> MetaResult:
    """Run the full meta-analysis of one subgroup.

    Heterogeneity is always measured on fixed-effect weights; the model it
    selects decides which weights are stored and pooled. Per-study intervals
    use the intra-study sigma whatever the model.
    """
    if sub.k < 2:
        raise InsufficientStudies(f"subgroup has {sub.k} studies")

    rows = []
    for label, rec in zip(sub.labels, sub.members):
        s = pooled_sd(rec.group1, rec.group2)
        try:
            d = effect_size(rec.group1, rec.group2, cfg.kind)
        except ZeroPooledSd:
            raise ZeroPooledSd(label) from None
        rows.append((label, rec, s, d, intra_study_sigma(rec.group1, rec.group2, d)))

    deltas = [r[3] for r in rows]
    sigmas = [r[4] for r in rows]
    w_fe = [fe_weight(s) for s in sigmas]
    het = heterogeneity(deltas, w_fe, len(rows))
    model = select_model(het.i2)
    if model is Model.RANDOM:
        weights = [re_weight(s, het.tau2) for s in sigmas]
    else:
        weights = w_fe

    crit = critical_value(cfg.alpha)
    mu, sigma, (lo, hi), z, p = pool(deltas, weights, crit)
    effects = tuple(
        StudyEffect(
            study=label,
            record=rec,
            pooled_sd=s,
            delta=d,
            sigma_intra=sig,
            weight=w,
            ci_low=d - sig * crit,
            ci_high=d + sig * crit,
        )
        for (label, rec, s, d, sig), w in zip(rows, weights)
    )
    return MetaResult(
        key=sub.key,
        effects=effects,
        heterogeneity=het,
        model=model,
        mu=mu,
        sigma=sigma,
        ci_low=lo,
        ci_high=hi,
        z=z,
        p=p,
        alpha=cfg.alpha,
        kind=cfg.kind,
        critical=crit,
    )

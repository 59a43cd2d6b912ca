"""Forest and funnel plot layout."""

from __future__ import annotations

import math

from ..domain import EffectSizeKind, MetaResult, Model, sorted_effects
from ..subgrouping import folder_name
from .scene import Circle, Line, Polygon, Rect, Scene, Text, to_svg, to_tikz
from .text import fmt

MODEL_NAMES = {Model.FIXED: "Fixed-effects model", Model.RANDOM: "Random-effects model"}


def nice_step(span: float, target: int = 5) -> float:
    raw = span / target
    mag = 10 ** math.floor(math.log10(raw))
    for m in (1, 2, 2.5, 5, 10):
        if raw <= m * mag:
            return m * mag
    return 10 * mag  # pragma: no cover


def ticks(lo: float, hi: float) -> list[float]:
    step = nice_step(hi - lo)
    first = math.ceil(lo / step - 1e-9)
    out = []
    i = first
    while i * step <= hi + 1e-9 * step:
        out.append(round(i * step, 12) + 0.0)
        i += 1
    return out


def _padded(lo: float, hi: float, frac: float) -> tuple[float, float]:
    span = hi - lo
    if span <= 0:
        span = max(abs(lo), 1.0)
    return lo - frac * span, hi + frac * span


def _delta_name(kind: EffectSizeKind) -> tuple[str, str]:
    if kind is EffectSizeKind.HEDGES:
        return "Hedges' g", r"Hedges' $g$"
    return "Cohen's d", r"Cohen's $d$"


def summary_line(result: MetaResult) -> tuple[str, str]:
    """Footer text (plain, LaTeX) with model, I^2, tau^2, Z and p."""
    model = MODEL_NAMES[result.model]
    plain = (
        f"{model}: I² = {fmt(result.i2)}%, τ² = {fmt(result.tau2)}, "
        f"Z = {fmt(result.z)}, p = {fmt(result.p)}"
    )
    tex = (
        rf"{model}: $I^2 = {fmt(result.i2)}\%$, $\tau^2 = {fmt(result.tau2)}$, "
        rf"$Z = {fmt(result.z)}$, $p = {fmt(result.p)}$"
    )
    return plain, tex


# forest plot geometry, in points
F_WIDTH = 600.0
F_LABEL_X = 10.0
F_PLOT_X0 = 190.0
F_PLOT_X1 = 400.0
F_TEXT_X = 590.0
F_TOP = 30.0
F_ROW = 20.0
F_MAX_SIDE = 12.0


def forest_scene(result: MetaResult) -> Scene:
    """Lay out the forest plot of ``result``.

    One row per study in label order: a square whose area is proportional to
    the study weight, a whisker over the study interval and the interval as
    text. The pooled effect is a diamond over its interval on the last row;
    the dashed vertical line marks zero effect.
    """
    effects = sorted_effects(result.effects)
    total = math.fsum(e.weight for e in effects)
    wmax = max(e.weight for e in effects) / total

    lo = min(min(e.ci_low for e in effects), result.ci_low, 0.0)
    hi = max(max(e.ci_high for e in effects), result.ci_high, 0.0)
    lo, hi = _padded(lo, hi, 0.05)

    def sx(v: float) -> float:
        return F_PLOT_X0 + (v - lo) / (hi - lo) * (F_PLOT_X1 - F_PLOT_X0)

    name = folder_name(result.key)
    n = len(effects)
    y_diamond = F_TOP + F_ROW * (n + 1.5)
    y_axis = y_diamond + F_ROW
    height = y_axis + 60.0
    scene = Scene(F_WIDTH, height, title=f"Forest plot: {name}")

    plain_kind, tex_kind = _delta_name(result.kind)
    scene.add(
        Text(F_LABEL_X, F_TOP - 8, "Study", bold=True, role="header"),
        Text(
            F_TEXT_X,
            F_TOP - 8,
            f"{plain_kind} [{fmt(1 - result.alpha)} CI]",
            anchor="end",
            bold=True,
            role="header",
            tex=rf"{tex_kind} [{fmt(1 - result.alpha)} CI]",
        ),
    )

    for i, e in enumerate(effects):
        y = F_TOP + F_ROW * (i + 1)
        side = F_MAX_SIDE * math.sqrt((e.weight / total) / wmax)
        scene.add(
            Text(F_LABEL_X, y + 3, e.study, role="label"),
            Line(sx(e.ci_low), y, sx(e.ci_high), y, role="whisker"),
            Rect(sx(e.delta) - side / 2, y - side / 2, side, side, role="marker"),
            Text(
                F_TEXT_X,
                y + 3,
                f"{fmt(e.delta)} [{fmt(e.ci_low)}, {fmt(e.ci_high)}]",
                anchor="end",
                role="estimate",
            ),
        )

    half = F_ROW * 0.35
    scene.add(
        Text(F_LABEL_X, y_diamond + 3, "Overall", bold=True, role="label"),
        Polygon(
            (
                (sx(result.ci_low), y_diamond),
                (sx(result.mu), y_diamond - half),
                (sx(result.ci_high), y_diamond),
                (sx(result.mu), y_diamond + half),
            ),
            role="diamond",
        ),
        Text(
            F_TEXT_X,
            y_diamond + 3,
            f"{fmt(result.mu)} [{fmt(result.ci_low)}, {fmt(result.ci_high)}]",
            anchor="end",
            bold=True,
            role="estimate",
        ),
        Line(sx(0.0), F_TOP + F_ROW * 0.4, sx(0.0), y_axis, role="null", dashed=True),
        Line(F_PLOT_X0, y_axis, F_PLOT_X1, y_axis, role="axis"),
    )
    for t in ticks(lo, hi):
        scene.add(
            Line(sx(t), y_axis, sx(t), y_axis + 4, role="tick"),
            Text(sx(t), y_axis + 14, fmt(t), anchor="middle", size=8, role="ticklabel"),
        )
    plain, tex = summary_line(result)
    scene.add(Text(F_LABEL_X, height - 12, plain, size=8, role="footer", tex=tex))
    return scene


# funnel plot geometry
U_WIDTH = 420.0
U_HEIGHT = 340.0
U_X0, U_X1 = 70.0, 400.0
U_Y0, U_Y1 = 40.0, 280.0


def funnel_scene(result: MetaResult) -> Scene:
    """Lay out the funnel plot of ``result``.

    Studies sit at (effect size, intra-study sigma) with the sigma axis
    pointing down. Two lines ``x = mu -/+ q*y`` form the funnel around the
    vertical line ``x = mu``; both axes extend 10% past the data.
    """
    effects = sorted_effects(result.effects)
    q = result.critical
    mu = result.mu

    ytop = max(e.sigma_intra for e in effects) * 1.1
    xs = [e.delta for e in effects] + [mu - q * ytop, mu + q * ytop]
    xlo, xhi = _padded(min(xs), max(xs), 0.10)

    def sx(v: float) -> float:
        return U_X0 + (v - xlo) / (xhi - xlo) * (U_X1 - U_X0)

    def sy(v: float) -> float:
        return U_Y0 + v / ytop * (U_Y1 - U_Y0)

    name = folder_name(result.key)
    scene = Scene(U_WIDTH, U_HEIGHT, title=f"Funnel plot: {name}")
    scene.add(
        Line(sx(mu), sy(0), sx(mu - q * ytop), sy(ytop), role="funnel", dashed=True),
        Line(sx(mu), sy(0), sx(mu + q * ytop), sy(ytop), role="funnel", dashed=True),
        Line(sx(mu), sy(0), sx(mu), sy(ytop), role="mu"),
    )
    for e in effects:
        scene.add(Circle(sx(e.delta), sy(e.sigma_intra), 3.0, role="point"))

    # frame and ticks; y = 0 is at the top
    scene.add(
        Line(U_X0, U_Y1, U_X1, U_Y1, role="axis"),
        Line(U_X0, U_Y0, U_X0, U_Y1, role="axis"),
    )
    for t in ticks(xlo, xhi):
        scene.add(
            Line(sx(t), U_Y1, sx(t), U_Y1 + 4, role="tick"),
            Text(sx(t), U_Y1 + 14, fmt(t), anchor="middle", size=8, role="ticklabel"),
        )
    for t in ticks(0.0, ytop):
        scene.add(
            Line(U_X0 - 4, sy(t), U_X0, sy(t), role="tick"),
            Text(U_X0 - 6, sy(t) + 3, fmt(t), anchor="end", size=8, role="ticklabel"),
        )
    plain_kind, tex_kind = _delta_name(result.kind)
    scene.add(
        Text((U_X0 + U_X1) / 2, U_Y1 + 30, f"Effect size ({plain_kind})", anchor="middle",
             role="xlabel", tex=f"Effect size ({tex_kind})"),
        Text(U_X0 - 6, U_Y0 - 14, "σ_intra", anchor="middle", role="ylabel",
             tex=r"$\sigma_{\mathrm{intra}}$"),
        Text(U_X1, U_Y0 - 14, f"μ = {fmt(mu)}, α = {fmt(result.alpha)}", anchor="end",
             role="caption", tex=rf"$\mu = {fmt(mu)}$, $\alpha = {fmt(result.alpha)}$"),
    )
    return scene


def emit_forest(result: MetaResult) -> tuple[str, str]:
    """Forest plot as (SVG document, standalone LaTeX source)."""
    scene = forest_scene(result)
    return to_svg(scene), to_tikz(scene)


def emit_funnel(result: MetaResult) -> tuple[str, str]:
    """Funnel plot as (SVG document, standalone LaTeX source)."""
    scene = funnel_scene(result)
    return to_svg(scene), to_tikz(scene)


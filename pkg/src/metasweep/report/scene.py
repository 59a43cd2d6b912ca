"""A tiny retained-mode drawing model with SVG and TikZ back ends.

Plots are laid out once as a list of primitives in a point-based canvas
(origin top-left, y downwards) and then rendered twice, so the SVG file and
the LaTeX source always show the same picture. Coordinates are written with
a fixed number of decimals to keep the output byte-stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import escape, quoteattr

from .text import latex_escape


def _c(v: float) -> str:
    text = f"{v:.2f}"
    return "0.00" if text == "-0.00" else text


@dataclass(frozen=True)
class Line:
    x1: float
    y1: float
    x2: float
    y2: float
    role: str = ""
    dashed: bool = False
    width: float = 1.0


@dataclass(frozen=True)
class Rect:
    x: float
    y: float
    w: float
    h: float
    role: str = ""


@dataclass(frozen=True)
class Polygon:
    points: tuple[tuple[float, float], ...]
    role: str = ""


@dataclass(frozen=True)
class Circle:
    x: float
    y: float
    r: float
    role: str = ""


@dataclass(frozen=True)
class Text:
    x: float
    y: float
    text: str
    anchor: str = "start"  # start | middle | end
    size: float = 9.0
    role: str = ""
    tex: str | None = None  # pre-escaped LaTeX replacement for ``text``
    bold: bool = False


@dataclass
class Scene:
    width: float
    height: float
    title: str = ""
    items: list = field(default_factory=list)

    def add(self, *items) -> None:
        self.items.extend(items)

    def of_role(self, role: str) -> list:
        return [it for it in self.items if it.role == role]


_SVG_ANCHOR = {"start": "start", "middle": "middle", "end": "end"}
_TIKZ_ANCHOR = {"start": "base west", "middle": "base", "end": "base east"}


def to_svg(scene: Scene) -> str:
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_c(scene.width)}pt" height="{_c(scene.height)}pt" '
        f'viewBox="0 0 {_c(scene.width)} {_c(scene.height)}" '
        f'font-family="Helvetica, Arial, sans-serif">',
    ]
    if scene.title:
        out.append(f"<title>{escape(scene.title)}</title>")
    out.append(
        f'<rect x="0" y="0" width="{_c(scene.width)}" height="{_c(scene.height)}" fill="white"/>'
    )
    for it in scene.items:
        cls = f' class="{it.role}"' if it.role else ""
        if isinstance(it, Line):
            dash = ' stroke-dasharray="4 3"' if it.dashed else ""
            out.append(
                f'<line{cls} x1="{_c(it.x1)}" y1="{_c(it.y1)}" x2="{_c(it.x2)}" '
                f'y2="{_c(it.y2)}" stroke="black" stroke-width="{_c(it.width)}"{dash}/>'
            )
        elif isinstance(it, Rect):
            out.append(
                f'<rect{cls} x="{_c(it.x)}" y="{_c(it.y)}" width="{_c(it.w)}" '
                f'height="{_c(it.h)}" fill="black"/>'
            )
        elif isinstance(it, Polygon):
            pts = " ".join(f"{_c(x)},{_c(y)}" for x, y in it.points)
            out.append(f'<polygon{cls} points="{pts}" fill="black"/>')
        elif isinstance(it, Circle):
            out.append(
                f'<circle{cls} cx="{_c(it.x)}" cy="{_c(it.y)}" r="{_c(it.r)}" '
                f'fill="white" stroke="black"/>'
            )
        elif isinstance(it, Text):
            weight = ' font-weight="bold"' if it.bold else ""
            out.append(
                f'<text{cls} x="{_c(it.x)}" y="{_c(it.y)}" font-size="{_c(it.size)}" '
                f'text-anchor={quoteattr(_SVG_ANCHOR[it.anchor])}{weight}>'
                f"{escape(it.text)}</text>"
            )
        else:  # pragma: no cover
            raise TypeError(f"unknown primitive {it!r}")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def to_tikz(scene: Scene) -> str:
    """Standalone LaTeX document drawing ``scene`` with TikZ."""
    out = [
        r"\documentclass[tikz,border=2pt]{standalone}",
        r"\usepackage[utf8]{inputenc}",
        r"\usepackage[T1]{fontenc}",
        r"\usepackage{helvet}",
        r"\renewcommand{\familydefault}{\sfdefault}",
        r"\begin{document}",
    ]
    if scene.title:
        out.append(f"% {latex_escape(scene.title)}")
    out.append(r"\begin{tikzpicture}[x=1pt,y=-1pt]")
    out.append(
        rf"\path[use as bounding box] (0,0) rectangle ({_c(scene.width)},{_c(scene.height)});"
    )
    for it in scene.items:
        if isinstance(it, Line):
            style = f"line width={_c(it.width)}pt"
            if it.dashed:
                style += ",dash pattern=on 4pt off 3pt"
            out.append(
                rf"\draw[{style}] ({_c(it.x1)},{_c(it.y1)}) -- ({_c(it.x2)},{_c(it.y2)});"
            )
        elif isinstance(it, Rect):
            out.append(
                rf"\fill ({_c(it.x)},{_c(it.y)}) rectangle ({_c(it.x + it.w)},{_c(it.y + it.h)});"
            )
        elif isinstance(it, Polygon):
            pts = " -- ".join(f"({_c(x)},{_c(y)})" for x, y in it.points)
            out.append(rf"\fill {pts} -- cycle;")
        elif isinstance(it, Circle):
            out.append(
                rf"\draw[fill=white] ({_c(it.x)},{_c(it.y)}) circle[radius={_c(it.r)}];"
            )
        elif isinstance(it, Text):
            body = it.tex if it.tex is not None else latex_escape(it.text)
            if it.bold:
                body = rf"\textbf{{{body}}}"
            size = _c(it.size)
            leading = _c(it.size * 1.2)
            out.append(
                rf"\node[anchor={_TIKZ_ANCHOR[it.anchor]},inner sep=0pt,"
                rf"font=\fontsize{{{size}}}{{{leading}}}\selectfont] "
                rf"at ({_c(it.x)},{_c(it.y)}) {{{body}}};"
            )
        else:  # pragma: no cover
            raise TypeError(f"unknown primitive {it!r}")
    out.append(r"\end{tikzpicture}")
    out.append(r"\end{document}")
    return "\n".join(out) + "\n"

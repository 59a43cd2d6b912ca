"""Number formatting and LaTeX escaping shared by all emitters."""

from __future__ import annotations

import math

SIGNIFICANT_DIGITS = 6

_LATEX_SPECIALS = {
    "\\": r"\textbackslash{}",
    "#": r"\#",
    "%": r"\%",
    "$": r"\$",
    "{": r"\{",
    "}": r"\}",
    "_": r"\_",
    "&": r"\&",
    "~": r"\textasciitilde{}",
    "^": r"\textasciicircum{}",
    "<": r"\textless{}",
    ">": r"\textgreater{}",
}


def fmt(x: float) -> str:
    """Six significant digits, "." decimal, no negative zero."""
    if isinstance(x, int):
        return str(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot format non-finite value {x!r}")
    text = f"{x:.{SIGNIFICANT_DIGITS}g}"
    if text in ("-0", "-0.0"):
        return "0"
    return text


def latex_escape(text: str) -> str:
    return "".join(_LATEX_SPECIALS.get(ch, ch) for ch in text)

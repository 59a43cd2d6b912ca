"""Command-line entry point.

    metasweep --input_fname input_file.csv --alpha 0.05 --which_delta Hedges

Exit codes: 0 success, 2 usage, 3 input parsing, 4 analysis, 5 I/O.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from .domain import AnalysisConfig, EffectSizeKind
from .engine import analyze_subgroup
from .errors import (
    AnalysisError,
    IngestError,
    InvalidAlpha,
    InvalidKind,
    IoFailure,
    MetaSweepError,
    UsageError,
)
from .ingest import read_input, summarize_table
from .report import fmt, write_outputs
from .subgrouping import enumerate_subgroups, folder_name

log = logging.getLogger("metasweep")

KINDS = tuple(k.value for k in EffectSizeKind)


@dataclass(frozen=True)
class CliOptions:
    input_path: Path
    alpha: float = 0.05
    which_delta: EffectSizeKind = EffectSizeKind.HEDGES
    output_dir: Path = Path("output")
    verbosity: int = 0
    pdf: bool | None = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{message}\n{self.format_usage().strip()}")


def _parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="metasweep",
        description="Meta-analysis of every combination of experimental conditions.",
        allow_abbrev=False,
    )
    p.add_argument("--input_fname", required=True, help="semicolon-separated input table")
    p.add_argument("--alpha", default="0.05", help="significance level in (0, 1) [0.05]")
    p.add_argument(
        "--which_delta", default="Hedges", help="effect size: Hedges or Cohen [Hedges]"
    )
    p.add_argument("--output_dir", default="output", help="output root [output]")
    pdf = p.add_mutually_exclusive_group()
    pdf.add_argument("--pdf", dest="pdf", action="store_const", const=True,
                     help="compile the LaTeX sources (requires pdflatex)")
    pdf.add_argument("--no-pdf", dest="pdf", action="store_const", const=False,
                     help="never compile the LaTeX sources")
    p.add_argument("-v", "--verbose", action="count", default=0)
    p.add_argument("-q", "--quiet", action="count", default=0)
    return p


def parse_args(argv: list[str] | None = None) -> CliOptions:
    """Validate the command line; raises :class:`UsageError` subclasses."""
    ns = _parser().parse_args(argv)
    try:
        alpha = float(ns.alpha)
    except ValueError:
        raise InvalidAlpha(f"--alpha must be a number, got {ns.alpha!r}") from None
    if not 0.0 < alpha < 1.0:
        raise InvalidAlpha(f"--alpha must lie in (0, 1), got {ns.alpha}")
    if ns.which_delta not in KINDS:
        raise InvalidKind(
            f"--which_delta must be one of {', '.join(KINDS)}, got {ns.which_delta!r}"
        )
    return CliOptions(
        input_path=Path(ns.input_fname),
        alpha=alpha,
        which_delta=EffectSizeKind(ns.which_delta),
        output_dir=Path(ns.output_dir),
        verbosity=ns.verbose - ns.quiet,
        pdf=ns.pdf,
    )


def run(options: CliOptions, out=None) -> int:
    """Run the whole pipeline and return the process exit status."""
    out = out or sys.stdout
    if not options.input_path.is_file():
        log.error("input file not found: %s", options.input_path)
        return UsageError.exit_code
    cfg = AnalysisConfig(options.alpha, options.which_delta)
    try:
        table = read_input(options.input_path)
    except IngestError as exc:
        log.error("%s: %s [%s]", options.input_path, exc, type(exc).__name__)
        return exc.exit_code
    except OSError as exc:
        log.error("cannot read %s: %s", options.input_path, exc)
        return IoFailure.exit_code
    log.info("%s", summarize_table(table))

    subgroups = enumerate_subgroups(table)
    results = []
    failed = []
    for sub in subgroups:
        try:
            results.append(analyze_subgroup(sub, cfg))
        except AnalysisError as exc:
            log.warning("%s: skipped: %s", folder_name(sub.key), exc)
            failed.append((sub.key, f"{type(exc).__name__}: {exc}"))

    try:
        manifest = write_outputs(
            results,
            options.output_dir,
            skipped=subgroups.skipped,
            failed=failed,
            pdf=options.pdf,
        )
    except IoFailure as exc:
        log.error("%s", exc)
        return exc.exit_code

    for r in results:
        print(
            f"{folder_name(r.key)}: K={r.k} {r.model} "
            f"mu={fmt(r.mu)} [{fmt(r.ci_low)}, {fmt(r.ci_high)}] p={fmt(r.p)}",
            file=out,
        )
    for s in subgroups.skipped:
        print(f"{folder_name(s.key)}: skipped ({s.reason}; {s.detail})", file=out)
    for key, reason in failed:
        print(f"{folder_name(key)}: skipped ({reason})", file=out)
    print(f"manifest: {manifest.path}", file=out)
    return 0


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        options = parse_args(argv)
    except UsageError as exc:
        print(f"metasweep: error: {exc}", file=sys.stderr)
        return exc.exit_code
    level = {-1: logging.ERROR, 0: logging.WARNING, 1: logging.INFO}
    log.setLevel(level.get(max(-1, min(1, options.verbosity))))
    try:
        return run(options)
    except MetaSweepError as exc:
        log.error("%s", exc)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())

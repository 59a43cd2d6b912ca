"""Writing the output tree and its manifest."""

from __future__ import annotations

import json
import logging
import os
import shutil
import subprocess
import tempfile
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from pathlib import Path

from ..domain import MetaResult, SubgroupKey
from ..errors import IoFailure
from ..subgrouping import Skipped, folder_name
from .plots import emit_forest, emit_funnel
from .tables import emit_data_csv

log = logging.getLogger(__name__)

VECTOR_EXT = "svg"
MANIFEST_NAME = "manifest.json"
FILE_NAMES = (
    "data.csv",
    "forest_plot.tex",
    f"forest_plot.{VECTOR_EXT}",
    "funnel_plot.tex",
    f"funnel_plot.{VECTOR_EXT}",
)

# rejected by common non-POSIX filesystems
_PORTABLE_HOSTILE = set('\\:*?"<>')


@dataclass(frozen=True)
class SubgroupReport:
    folder: str
    data_table: str
    forest_vector: str
    forest_source: str
    funnel_vector: str
    funnel_source: str

    def files(self) -> dict[str, str]:
        return dict(
            zip(
                FILE_NAMES,
                (
                    self.data_table,
                    self.forest_source,
                    self.forest_vector,
                    self.funnel_source,
                    self.funnel_vector,
                ),
            )
        )


@dataclass
class Manifest:
    root: Path
    folders: list[dict] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)
    failed: list[dict] = field(default_factory=list)

    @property
    def path(self) -> Path:
        return self.root / MANIFEST_NAME

    @property
    def paths(self) -> list[Path]:
        return [self.root / f["path"] / name for f in self.folders for name in f["files"]]

    def to_json(self) -> str:
        doc = {"folders": self.folders, "skipped": self.skipped, "failed": self.failed}
        return json.dumps(doc, indent=2, ensure_ascii=False, sort_keys=True) + "\n"


def build_report(result: MetaResult) -> SubgroupReport:
    forest_svg, forest_tex = emit_forest(result)
    funnel_svg, funnel_tex = emit_funnel(result)
    return SubgroupReport(
        folder=folder_name(result.key),
        data_table=emit_data_csv(result),
        forest_vector=forest_svg,
        forest_source=forest_tex,
        funnel_vector=funnel_svg,
        funnel_source=funnel_tex,
    )


def pipe_supported(root: Path) -> bool:
    """Whether ``root``'s filesystem accepts "|" in directory names."""
    probe = root / ".pipe|probe"
    try:
        probe.mkdir()
    except FileExistsError:
        return True
    except OSError:
        return False
    probe.rmdir()
    return True


def encode_folder(name: str, *, keep_pipe: bool = True, portable: bool = False) -> str:
    """Percent-encode characters the filesystem cannot hold.

    "%" itself is always encoded so the mapping stays reversible.
    """
    out = []
    for ch in name:
        hostile = (
            ch in "%/\0"
            or ord(ch) < 32
            or (ch == "|" and not keep_pipe)
            or (portable and ch in _PORTABLE_HOSTILE)
        )
        if hostile:
            out.append("".join(f"%{b:02X}" for b in ch.encode("utf-8")))
        else:
            out.append(ch)
    encoded = "".join(out)
    if encoded in (".", ".."):
        encoded = encoded.replace(".", "%2E")
    return encoded


def _key_doc(key: SubgroupKey) -> dict:
    return {
        "variable": key.variable,
        "conditions": [{"column": f"condition_{c}", "value": v} for c, v in key.selected],
    }


def _repeated(result: MetaResult) -> list[str]:
    counts = Counter(e.record.study for e in result.effects)
    return sorted(s for s, c in counts.items() if c > 1)


def _write(path: Path, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoFailure(path, exc.strerror or str(exc)) from exc


def find_latex() -> str | None:
    for exe in ("pdflatex", "lualatex", "xelatex"):
        found = shutil.which(exe)
        if found:
            return found
    return None


def compile_pdf(tex_path: Path, latex: str) -> Path | None:
    """Compile one standalone source next to itself; ``None`` on failure."""
    env = dict(os.environ, SOURCE_DATE_EPOCH="0", FORCE_SOURCE_DATE="1")
    with tempfile.TemporaryDirectory() as tmp:
        cmd = [latex, "-interaction=nonstopmode", "-halt-on-error", "-output-directory", tmp,
               str(tex_path)]
        try:
            proc = subprocess.run(cmd, capture_output=True, env=env, timeout=120)
        except (OSError, subprocess.TimeoutExpired) as exc:
            log.warning("LaTeX failed on %s: %s", tex_path, exc)
            return None
        built = Path(tmp) / (tex_path.stem + ".pdf")
        if proc.returncode != 0 or not built.exists():
            log.warning("LaTeX failed on %s (exit %s)", tex_path, proc.returncode)
            return None
        target = tex_path.with_suffix(".pdf")
        shutil.copyfile(built, target)
        return target


def write_outputs(
    results: Sequence[MetaResult],
    root,
    *,
    skipped: Iterable[Skipped] = (),
    failed: Iterable[tuple[SubgroupKey, str]] = (),
    pdf: bool | None = False,
    portable: bool | None = None,
) -> Manifest:
    """Write one folder per result under ``root`` plus ``manifest.json``.

    ``pdf=None`` compiles the LaTeX sources when a toolchain is found;
    ``pdf=False`` never does. Paths in the manifest are relative to ``root``.
    """
    root = Path(root)
    try:
        root.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoFailure(root, exc.strerror or str(exc)) from exc
    if portable is None:
        portable = os.name == "nt"
    keep_pipe = pipe_supported(root)
    latex = find_latex() if pdf is None or pdf else None
    if pdf and latex is None:
        log.warning("no LaTeX toolchain found; skipping PDF compilation")

    manifest = Manifest(root)
    for result in sorted(results, key=lambda r: r.key.sort_key()):
        report = build_report(result)
        dirname = encode_folder(report.folder, keep_pipe=keep_pipe, portable=portable)
        folder = root / dirname
        try:
            folder.mkdir(exist_ok=True)
        except OSError as exc:
            raise IoFailure(folder, exc.strerror or str(exc)) from exc
        files = report.files()
        for name, text in files.items():
            _write(folder / name, text)
        written = sorted(files)
        if latex:
            for tex in ("forest_plot.tex", "funnel_plot.tex"):
                out = compile_pdf(folder / tex, latex)
                if out is not None:
                    written.append(out.name)
            written.sort()
        manifest.folders.append(
            {
                "name": report.folder,
                "path": dirname,
                **_key_doc(result.key),
                "k": result.k,
                "model": str(result.model),
                "files": written,
                "repeated_studies": _repeated(result),
            }
        )
    for s in skipped:
        manifest.skipped.append(
            {"name": folder_name(s.key), **_key_doc(s.key), "reason": s.reason,
             "detail": s.detail}
        )
    for key, reason in failed:
        manifest.failed.append({"name": folder_name(key), **_key_doc(key), "reason": reason})
    manifest.skipped.sort(key=lambda d: d["name"])
    manifest.failed.sort(key=lambda d: d["name"])
    _write(manifest.path, manifest.to_json())
    return manifest
